#include "propa/json_io.hpp"

#include "propa/errors.hpp"

namespace propa {

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw ParseError("expected rational as \"p/q\" string");
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw ParseError("bad rational: " + j.get<std::string>());
    return *r;
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    json out{{"vertices", g.n()}, {"edges", edges}};
    if (!g.name().empty()) out["name"] = g.name();
    return out;
}

Graph graph_from_json(const json& j) {
    if (!j.contains("vertices") || !j.contains("edges"))
        throw ParseError("graph json needs \"vertices\" and \"edges\"");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw ParseError("graph json: bad edge entry");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(j["vertices"].get<int>(), std::move(edges), j.value("name", ""));
}

json scale_to_json(const Scale& sc) {
    if (sc.radius()) return json{{"radius", *sc.radius()}};
    json sets = json::array();
    for (const auto& s : sc.sets()) sets.push_back(s);
    return json{{"sets", sets}};
}

Scale scale_from_json(const json& j, const Graph& g) {
    if (j.contains("radius")) return ball_scale(g, j["radius"].get<int>());
    if (j.contains("sets")) {
        std::vector<std::vector<int>> sets;
        for (const auto& s : j["sets"]) sets.push_back(s.get<std::vector<int>>());
        return Scale(g.n(), std::move(sets));
    }
    throw ParseError("scale json needs \"radius\" or \"sets\"");
}

namespace {

std::string edge_key(int u, int v) { return std::to_string(u) + "-" + std::to_string(v); }

std::pair<int, int> parse_edge_key(const std::string& key) {
    auto dash = key.find('-');
    if (dash == std::string::npos) throw ParseError("bad edge key: " + key);
    return {std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1))};
}

} // namespace

json measure_family_to_json(const MeasureFamily& mf) {
    json xi = json::object();
    for (size_t i = 0; i < mf.xi.size(); ++i) {
        json row = json::object();
        for (const auto& [j2, value] : mf.xi[i]) row[std::to_string(j2)] = value.str();
        xi[std::to_string(i)] = std::move(row);
    }
    return json{{"epsilon", mf.epsilon.str()}, {"xi", xi}};
}

MeasureFamily measure_family_from_json(const json& j, int vertex_count) {
    MeasureFamily mf;
    mf.epsilon = rational_from_json(j.at("epsilon"));
    mf.xi.resize(vertex_count);
    for (const auto& [key, row] : j.at("xi").items()) {
        int i = std::stoi(key);
        if (i < 0 || i >= vertex_count) throw ParseError("measure family: bad vertex " + key);
        for (const auto& [vkey, value] : row.items())
            mf.xi[i][std::stoi(vkey)] = rational_from_json(value);
    }
    return mf;
}

json flow_certificate_to_json(const Graph& g, const FlowCertificate& fc) {
    json eta = json::object();
    for (size_t i = 0; i < fc.eta.size(); ++i) eta[std::to_string(i)] = fc.eta[i].str();
    json kappa = json::object();
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        kappa[edge_key(u, v)] = fc.kappa[e].str();
    }
    json flows = json::object();
    for (size_t k = 0; k < fc.flows.size(); ++k) {
        json one = json::object();
        for (const auto& [e, value] : fc.flows[k]) {
            auto [u, v] = g.edges()[e];
            one[edge_key(u, v)] = value.str();
        }
        flows[std::to_string(k)] = std::move(one);
    }
    return json{
        {"objective", fc.objective.str()}, {"eta", eta}, {"kappa", kappa}, {"flows", flows}};
}

FlowCertificate flow_certificate_from_json(const json& j, const Graph& g) {
    FlowCertificate fc;
    fc.eta.assign(g.n(), Rational(0));
    fc.kappa.assign(g.edge_count(), Rational(0));
    fc.flows.resize(g.n());
    for (const auto& [key, value] : j.at("eta").items()) {
        int i = std::stoi(key);
        if (i < 0 || i >= g.n()) throw ParseError("flow certificate: bad vertex " + key);
        fc.eta[i] = rational_from_json(value);
    }
    for (const auto& [key, value] : j.at("kappa").items()) {
        auto [u, v] = parse_edge_key(key);
        auto e = g.edge_id(u, v);
        if (!e) throw ParseError("flow certificate: unknown edge " + key);
        fc.kappa[*e] = rational_from_json(value);
    }
    for (const auto& [key, flow] : j.at("flows").items()) {
        int k = std::stoi(key);
        if (k < 0 || k >= g.n()) throw ParseError("flow certificate: bad focus " + key);
        for (const auto& [ekey, value] : flow.items()) {
            auto [u, v] = parse_edge_key(ekey);
            auto e = g.edge_id(u, v);
            if (!e) throw ParseError("flow certificate: unknown edge " + ekey);
            fc.flows[k][*e] = rational_from_json(value);
        }
    }
    if (j.contains("objective"))
        fc.objective = rational_from_json(j.at("objective"));
    else if (j.contains("epsilon"))
        fc.objective = rational_from_json(j.at("epsilon"));
    else
        fc.objective = sum(fc.eta);
    return fc;
}

json partition_family_to_json(const PartitionFamily& pf) {
    json functions = json::array();
    for (const auto& piece : pf.pieces) {
        json values = json::object();
        for (const auto& [v, value] : piece.values) values[std::to_string(v)] = value.str();
        functions.push_back(json{{"tag", piece.tag}, {"values", values}});
    }
    return json{{"variation", pf.variation.str()}, {"flat", pf.flat}, {"functions", functions}};
}

PartitionFamily partition_family_from_json(const json& j) {
    PartitionFamily pf;
    pf.variation = rational_from_json(j.at("variation"));
    pf.flat = j.value("flat", false);
    for (const auto& fn : j.at("functions")) {
        PartitionPiece piece;
        piece.tag = fn.at("tag").get<int>();
        for (const auto& [key, value] : fn.at("values").items())
            piece.values[std::stoi(key)] = rational_from_json(value);
        pf.pieces.push_back(std::move(piece));
    }
    return pf;
}

json epsilon_report_to_json(const Graph& g, const EpsilonReport& report) {
    json out{{"epsilon", report.epsilon.str()}, {"graph", graph_to_json(g)}};
    if (report.scale) out["scale"] = scale_to_json(*report.scale);
    if (report.primal) {
        out["primal"] = measure_family_to_json(*report.primal);
        out["primal_source"] = report.primal_source;
    }
    if (report.dual) out["dual"] = flow_certificate_to_json(g, *report.dual);
    out["statistics"] = json{{"pivots", report.stats.pivots},
                             {"cut_rounds", report.stats.cut_rounds},
                             {"flow_calls", report.stats.flow_calls},
                             {"seconds", report.stats.seconds}};
    return out;
}

json automorphism_set_to_json(const AutomorphismSet& group) {
    json perms = json::array();
    for (const auto& p : group.permutations) perms.push_back(p);
    json out{{"permutations", perms}};
    if (group.closure) {
        json closure = json::array();
        for (const auto& p : *group.closure) closure.push_back(p);
        out["closure"] = closure;
    }
    return out;
}

AutomorphismSet automorphism_set_from_json(const json& j) {
    AutomorphismSet group;
    for (const auto& p : j.at("permutations"))
        group.permutations.push_back(p.get<std::vector<int>>());
    if (j.contains("closure")) {
        std::vector<std::vector<int>> closure;
        for (const auto& p : j.at("closure")) closure.push_back(p.get<std::vector<int>>());
        group.closure = std::move(closure);
    }
    return group;
}

json orbits_to_json(const Orbits& orbits) {
    return json{{"vertex_orbits", orbits.vertex_orbits}, {"edge_orbits", orbits.edge_orbits}};
}

json cheeger_report_to_json(const CheegerReport& report) {
    json out{{"gamma", report.gamma.str()}, {"witness", report.witness}};
    if (report.scale) out["scale"] = scale_to_json(*report.scale);
    return out;
}

} // namespace propa
