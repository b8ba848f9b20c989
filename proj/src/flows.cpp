#include "propa/flows.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <thread>

#include "propa/errors.hpp"

namespace propa {

namespace {

struct Arc {
    int from, to;
    Rational cap;
    Rational flow;
    Rational residual() const { return cap - flow; }
};

class FlowNetwork {
  public:
    explicit FlowNetwork(int nodes) : adjacency_(nodes) {}

    void add_arc(int a, int b, Rational cap) {
        adjacency_[a].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({a, b, std::move(cap), Rational(0)});
        adjacency_[b].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({b, a, Rational(0), Rational(0)});
    }

    // Edmonds-Karp; returns the max-flow value from s to t.
    Rational max_flow(int s, int t) {
        Rational value;
        std::vector<int> via(adjacency_.size());
        std::deque<int> queue;
        while (true) {
            std::fill(via.begin(), via.end(), -1);
            via[s] = -2;
            queue.clear();
            queue.push_back(s);
            while (!queue.empty() && via[t] == -1) {
                int u = queue.front();
                queue.pop_front();
                for (int id : adjacency_[u]) {
                    const Arc& a = arcs_[id];
                    if (a.from != u || via[a.to] != -1) continue;
                    if (a.flow >= a.cap) continue;
                    via[a.to] = id;
                    queue.push_back(a.to);
                }
            }
            if (via[t] == -1) return value;
            Rational bottleneck;
            bool first = true;
            for (int v = t; v != s;) {
                const Arc& a = arcs_[via[v]];
                Rational r = a.residual();
                if (first || r < bottleneck) bottleneck = std::move(r);
                first = false;
                v = a.from;
            }
            for (int v = t; v != s;) {
                int id = via[v];
                arcs_[id].flow += bottleneck;
                arcs_[id ^ 1].flow -= bottleneck;
                v = arcs_[id].from;
            }
            value += bottleneck;
        }
    }

    // Nodes with a residual path to `target`. Every arc in adjacency_[y]
    // leaves y; the arc entering y from the same endpoint is its partner
    // id^1.
    std::vector<char> reaches_target(int target) const {
        std::vector<char> seen(adjacency_.size(), 0);
        seen[target] = 1;
        std::deque<int> queue{target};
        while (!queue.empty()) {
            int y = queue.front();
            queue.pop_front();
            for (int id : adjacency_[y]) {
                int z = arcs_[id].to;
                const Arc& incoming = arcs_[id ^ 1]; // z -> y
                if (incoming.flow >= incoming.cap) continue;
                if (!seen[z]) {
                    seen[z] = 1;
                    queue.push_back(z);
                }
            }
        }
        return seen;
    }

    const std::vector<Arc>& arcs() const { return arcs_; }

  private:
    std::vector<std::vector<int>> adjacency_;
    std::vector<Arc> arcs_;
};

} // namespace

MaxFlowResult max_flow_feasible(const Graph& g, const std::vector<Rational>& kappa,
                                const std::vector<int>& demand_set,
                                const std::vector<Rational>& eta) {
    if (static_cast<int>(kappa.size()) != g.edge_count())
        throw Error("max_flow_feasible: kappa length mismatch");
    if (static_cast<int>(eta.size()) != g.n())
        throw Error("max_flow_feasible: eta length mismatch");
    for (const auto& k : kappa)
        if (k.sign() < 0) throw Error("max_flow_feasible: negative capacity");

    std::vector<char> in_demand(g.n(), 0);
    for (int v : demand_set) {
        if (v < 0 || v >= g.n()) throw Error("max_flow_feasible: demand vertex out of range");
        in_demand[v] = 1;
    }

    int source = g.n(), target = g.n() + 1;
    FlowNetwork net(g.n() + 2);

    // A finite "infinite" source bound exceeding any possible flow.
    Rational big(1);
    for (const auto& k : kappa) big += k;
    Rational required;
    for (int v : demand_set)
        if (eta[v].sign() > 0) required += eta[v];
    big += required;

    // Only edges touching the demand set matter: any flow through an edge
    // between two non-demand vertices can be replaced by direct source arcs.
    std::vector<std::pair<int, int>> edge_arcs(g.edge_count(), {-1, -1}); // arc ids (u->v, v->u)
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        if (!in_demand[u] && !in_demand[v]) continue;
        if (kappa[e].is_zero()) continue;
        edge_arcs[e].first = static_cast<int>(net.arcs().size());
        net.add_arc(u, v, kappa[e]);
        edge_arcs[e].second = static_cast<int>(net.arcs().size());
        net.add_arc(v, u, kappa[e]);
    }
    for (int v = 0; v < g.n(); ++v) {
        if (!in_demand[v])
            net.add_arc(source, v, big);
        else if (eta[v].sign() < 0)
            net.add_arc(source, v, -eta[v]);
        else if (eta[v].sign() > 0)
            net.add_arc(v, target, eta[v]);
    }

    Rational value = net.max_flow(source, target);
    MaxFlowResult result;
    if (value == required) {
        result.feasible = true;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (edge_arcs[e].first < 0) continue;
            Rational net_flow =
                net.arcs()[edge_arcs[e].first].flow - net.arcs()[edge_arcs[e].second].flow;
            if (!net_flow.is_zero()) result.flow[e] = std::move(net_flow);
        }
    } else {
        result.feasible = false;
        auto seen = net.reaches_target(target);
        for (int v = 0; v < g.n(); ++v)
            if (in_demand[v] && seen[v]) result.witness.push_back(v);
        // Per-sink witnesses: the vertices that can still push toward one
        // unsatisfied demand vertex each violate their own inequality.
        std::set<std::vector<int>> collected{result.witness};
        for (size_t a = 0; a < net.arcs().size(); ++a) {
            const auto& arc = net.arcs()[a];
            if (arc.to != target || arc.flow >= arc.cap) continue;
            auto local = net.reaches_target(arc.from);
            std::vector<int> subset;
            for (int v = 0; v < g.n(); ++v)
                if (in_demand[v] && local[v]) subset.push_back(v);
            if (!subset.empty()) collected.insert(std::move(subset));
        }
        result.all_witnesses.assign(collected.begin(), collected.end());
    }
    return result;
}

namespace {

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int threads = std::min(jobs, count);
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

LiftResult lift_and_project(const Graph& g, const Scale& dual_sc, const std::vector<Rational>& eta,
                            const std::vector<Rational>& kappa, int jobs) {
    if (dual_sc.vertex_count() != g.n()) throw ScaleError("lift_and_project: scale mismatch");
    if (static_cast<int>(eta.size()) != g.n()) throw Error("lift_and_project: eta length mismatch");
    if (static_cast<int>(kappa.size()) != g.edge_count())
        throw Error("lift_and_project: kappa length mismatch");
    Rational total;
    for (const auto& k : kappa) {
        if (k.sign() < 0) throw Error("lift_and_project: negative capacity");
        total += k;
    }
    if (total > Rational(1)) throw Error("lift_and_project: total capacity exceeds 1");

    std::vector<MaxFlowResult> per_focus(g.n());
    parallel_for(g.n(), jobs, [&](int k) {
        per_focus[k] = max_flow_feasible(g, kappa, dual_sc.set(k), eta);
    });

    LiftResult result;
    for (int k = 0; k < g.n(); ++k) {
        if (!per_focus[k].feasible) {
            result.violation = LiftViolation{k, per_focus[k].witness};
            return result;
        }
    }
    FlowCertificate fc;
    fc.eta = eta;
    fc.kappa = kappa;
    fc.flows.resize(g.n());
    for (int k = 0; k < g.n(); ++k) fc.flows[k] = std::move(per_focus[k].flow);
    fc.objective = sum(eta);
    result.certificate = std::move(fc);
    return result;
}

VerifyReport verify_measure_family(const Graph& g, const Scale& sc, const MeasureFamily& mf) {
    VerifyReport report;
    if (sc.vertex_count() != g.n()) {
        report.fail("scale does not match graph");
        return report;
    }
    if (static_cast<int>(mf.xi.size()) != g.n()) {
        report.fail("xi family size != vertex count");
        return report;
    }
    for (int i = 0; i < g.n(); ++i) {
        Rational total;
        for (const auto& [j, value] : mf.xi[i]) {
            if (j < 0 || j >= g.n()) {
                report.fail("xi_" + std::to_string(i) + " has out-of-range vertex");
                continue;
            }
            if (value.sign() < 0)
                report.fail("xi_" + std::to_string(i) + "(" + std::to_string(j) + ") is negative");
            if (value.sign() > 0 && !sc.contains(i, j))
                report.fail("supp xi_" + std::to_string(i) + " leaves S_" + std::to_string(i) +
                            " at " + std::to_string(j));
            total += value;
        }
        if (!total.is_one())
            report.fail("xi_" + std::to_string(i) + " has mass " + total.str() + " != 1");
    }
    for (auto [u, v] : g.edges()) {
        Rational variation;
        const auto& a = mf.xi[u];
        const auto& b = mf.xi[v];
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
            if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
                variation += ia->second.abs();
                ++ia;
            } else if (ia == a.end() || ib->first < ia->first) {
                variation += ib->second.abs();
                ++ib;
            } else {
                variation += (ia->second - ib->second).abs();
                ++ia;
                ++ib;
            }
        }
        if (variation > mf.epsilon)
            report.fail("variation " + variation.str() + " on edge (" + std::to_string(u) + "," +
                        std::to_string(v) + ") exceeds epsilon " + mf.epsilon.str());
    }
    return report;
}

namespace {
Rational map_value(const std::map<int, Rational>& m, int key) {
    auto it = m.find(key);
    return it == m.end() ? Rational(0) : it->second;
}
} // namespace

VerifyReport verify_flow_certificate(const Graph& g, const Scale& dual_sc,
                                     const FlowCertificate& fc) {
    VerifyReport report;
    if (dual_sc.vertex_count() != g.n()) {
        report.fail("scale does not match graph");
        return report;
    }
    if (static_cast<int>(fc.eta.size()) != g.n()) {
        report.fail("eta size != vertex count");
        return report;
    }
    if (static_cast<int>(fc.kappa.size()) != g.edge_count()) {
        report.fail("kappa size != edge count");
        return report;
    }
    if (static_cast<int>(fc.flows.size()) != g.n()) {
        report.fail("flows size != vertex count");
        return report;
    }
    Rational total;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (fc.kappa[e].sign() < 0) report.fail("kappa of edge " + std::to_string(e) + " negative");
        total += fc.kappa[e];
    }
    if (total > Rational(1)) report.fail("total capacity " + total.str() + " exceeds 1");

    std::vector<Rational> supply(g.n());
    for (int k = 0; k < g.n(); ++k) {
        std::fill(supply.begin(), supply.end(), Rational(0));
        for (const auto& [e, phi] : fc.flows[k]) {
            if (e < 0 || e >= g.edge_count()) {
                report.fail("flow " + std::to_string(k) + " uses invalid edge id");
                continue;
            }
            if (phi.abs() > fc.kappa[e]) {
                auto [u, v] = g.edges()[e];
                report.fail("flow " + std::to_string(k) + " exceeds capacity on edge (" +
                            std::to_string(u) + "," + std::to_string(v) + ")");
            }
            auto [u, v] = g.edges()[e];
            supply[v] += phi;
            supply[u] -= phi;
        }
        for (int i : dual_sc.set(k)) {
            if (supply[i] < fc.eta[i])
                report.fail("flow " + std::to_string(k) + " supplies " + supply[i].str() +
                            " < eta at vertex " + std::to_string(i));
        }
    }
    Rational claimed = sum(fc.eta);
    if (claimed != fc.objective)
        report.fail("claimed objective " + fc.objective.str() + " != sum(eta) " + claimed.str());
    return report;
}

VerifyReport verify_partition_family(const Graph& g, const Scale& dual_sc,
                                     const PartitionFamily& pf) {
    VerifyReport report;
    if (dual_sc.vertex_count() != g.n()) {
        report.fail("scale does not match graph");
        return report;
    }
    std::vector<Rational> cover(g.n());
    for (size_t p = 0; p < pf.pieces.size(); ++p) {
        const auto& piece = pf.pieces[p];
        if (piece.tag < 0 || piece.tag >= g.n()) {
            report.fail("piece " + std::to_string(p) + " has invalid support tag");
            continue;
        }
        std::optional<Rational> level;
        for (const auto& [v, value] : piece.values) {
            if (v < 0 || v >= g.n()) {
                report.fail("piece " + std::to_string(p) + " has out-of-range vertex");
                continue;
            }
            if (value.sign() < 0) report.fail("piece " + std::to_string(p) + " is negative");
            if (value.sign() > 0) {
                if (!dual_sc.contains(piece.tag, v))
                    report.fail("piece " + std::to_string(p) + " leaves set S_" +
                                std::to_string(piece.tag) + " at " + std::to_string(v));
                if (pf.flat) {
                    if (level && *level != value)
                        report.fail("piece " + std::to_string(p) + " is not flat");
                    level = value;
                }
            }
            cover[v] += value;
        }
    }
    for (int v = 0; v < g.n(); ++v)
        if (!cover[v].is_one())
            report.fail("pointwise sum at vertex " + std::to_string(v) + " is " + cover[v].str() +
                        " != 1");
    for (auto [u, v] : g.edges()) {
        Rational variation;
        for (const auto& piece : pf.pieces)
            variation += (map_value(piece.values, u) - map_value(piece.values, v)).abs();
        if (variation > pf.variation)
            report.fail("variation " + variation.str() + " on edge (" + std::to_string(u) + "," +
                        std::to_string(v) + ") exceeds " + pf.variation.str());
    }
    return report;
}

bool weak_duality_check(const MeasureFamily& mf, const FlowCertificate& fc) {
    if (mf.xi.size() != fc.eta.size())
        throw Error("weak_duality_check: certificates for mismatched graphs");
    return sum(fc.eta) <= mf.epsilon;
}

PartitionFamily flatten_partition(const PartitionFamily& pf) {
    PartitionFamily out;
    out.flat = true;
    out.variation = pf.variation;
    for (const auto& piece : pf.pieces) {
        std::vector<Rational> levels;
        for (const auto& [v, value] : piece.values) {
            if (value.sign() < 0) throw Error("flatten_partition: negative value");
            if (value.sign() > 0) levels.push_back(value);
        }
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        Rational previous(0);
        for (const auto& level : levels) {
            PartitionPiece slice;
            slice.tag = piece.tag;
            Rational height = level - previous;
            for (const auto& [v, value] : piece.values)
                if (value >= level) slice.values[v] = height;
            out.pieces.push_back(std::move(slice));
            previous = level;
        }
    }
    return out;
}

PartitionFamily partition_from_measures(const MeasureFamily& mf) {
    PartitionFamily out;
    out.flat = false;
    out.variation = mf.epsilon;
    int n = static_cast<int>(mf.xi.size());
    std::vector<PartitionPiece> pieces(n);
    for (int j = 0; j < n; ++j) pieces[j].tag = j;
    for (int i = 0; i < n; ++i)
        for (const auto& [j, value] : mf.xi[i])
            if (!value.is_zero()) pieces[j].values[i] = value;
    out.pieces = std::move(pieces);
    return out;
}

MeasureFamily measures_from_partition(const PartitionFamily& pf, int vertex_count) {
    // Group pieces by their support tag first (several flat slices may share
    // a tag), then transpose.
    std::vector<std::map<int, Rational>> grouped(vertex_count);
    for (const auto& piece : pf.pieces) {
        if (piece.tag < 0 || piece.tag >= vertex_count)
            throw Error("measures_from_partition: invalid support tag");
        for (const auto& [v, value] : piece.values)
            if (!value.is_zero()) grouped[piece.tag][v] += value;
    }
    MeasureFamily mf;
    mf.epsilon = pf.variation;
    mf.xi.resize(vertex_count);
    for (int j = 0; j < vertex_count; ++j)
        for (const auto& [i, value] : grouped[j]) mf.xi[i][j] = value;
    return mf;
}

Rational measure_family_variation(const Graph& g, const MeasureFamily& mf) {
    Rational best;
    for (auto [u, v] : g.edges()) {
        Rational variation;
        std::map<int, Rational> diff = mf.xi[u];
        for (const auto& [k, value] : mf.xi[v]) diff[k] -= value;
        for (const auto& [k, value] : diff) variation += value.abs();
        if (variation > best) best = variation;
    }
    return best;
}

Rational partition_variation(const Graph& g, const PartitionFamily& pf) {
    Rational best;
    for (auto [u, v] : g.edges()) {
        Rational variation;
        for (const auto& piece : pf.pieces)
            variation += (map_value(piece.values, u) - map_value(piece.values, v)).abs();
        if (variation > best) best = variation;
    }
    return best;
}

} // namespace propa
