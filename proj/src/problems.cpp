#include "propa/problems.hpp"

#include <algorithm>
#include <map>

#include "propa/errors.hpp"

namespace propa {

int VarMap::add(const std::string& name) {
    auto [it, fresh] = index_.emplace(name, static_cast<int>(names_.size()));
    if (!fresh) throw Error("VarMap: duplicate variable " + name);
    names_.push_back(name);
    return it->second;
}

int VarMap::at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("VarMap: unknown variable " + name);
    return it->second;
}

std::string xvar_name(int i, int j) { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
std::string evar_name(int u, int v, int k) {
    return "e_" + std::to_string(u) + "_" + std::to_string(v) + "_" + std::to_string(k);
}
std::string eta_name(int i) { return "eta_" + std::to_string(i); }
std::string kappa_name(int u, int v) {
    return "kappa_" + std::to_string(u) + "_" + std::to_string(v);
}
std::string phi_name(int k, int u, int v) {
    return "phi_" + std::to_string(k) + "_e" + std::to_string(u) + "_" + std::to_string(v);
}
std::string fvar_name(int j, int i) { return "f_" + std::to_string(j) + "_" + std::to_string(i); }
std::string pevar_name(int i, int k, int j) {
    return "e_" + std::to_string(i) + "_e" + std::to_string(k) + "_" + std::to_string(j);
}
std::string nvar_name(int i, int j) { return "n_" + std::to_string(i) + "_" + std::to_string(j); }
std::string cvar_name(int u, int v, int k) {
    return "c_e" + std::to_string(u) + "_" + std::to_string(v) + "_" + std::to_string(k);
}
std::string single_phi_name(int u, int v) {
    return "phi_e" + std::to_string(u) + "_" + std::to_string(v);
}
std::string zvar_name(int t) { return "z_" + std::to_string(t); }

namespace {

void require_matching_scale(const Graph& g, const Scale& sc, const char* who) {
    if (sc.vertex_count() != g.n())
        throw ScaleError(std::string(who) + ": scale does not match the graph");
}

int add_named(LinearProgram& lp, VarMap& vars, const std::string& name) {
    vars.add(name);
    return lp.add_variable(name);
}

int add_named_free(LinearProgram& lp, VarMap& vars, const std::string& name) {
    vars.add(name);
    return lp.add_free_variable(name);
}

int add_named_bounded(LinearProgram& lp, VarMap& vars, const std::string& name, Rational lo,
                      Rational hi) {
    vars.add(name);
    return lp.add_variable(name, std::move(lo), std::move(hi));
}

// Edge ids with at least one endpoint in the sorted set.
std::vector<int> edges_touching(const Graph& g, const std::vector<int>& set) {
    std::vector<char> in(g.n(), 0);
    for (int v : set) in[v] = 1;
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        if (in[u] || in[v]) out.push_back(e);
    }
    return out;
}

} // namespace

IndexedLp build_measures(const Graph& g, const Scale& sc) {
    require_matching_scale(g, sc, "build_measures");
    IndexedLp out{{}, {}, ProblemKind::Measures};
    auto& lp = out.lp;
    auto& vars = out.vars;

    // Out-of-scale x columns are omitted rather than pinned to zero.
    std::vector<std::vector<int>> xcol(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j : sc.set(i)) xcol[i].push_back(add_named(lp, vars, xvar_name(i, j)));

    std::vector<std::vector<int>> ecol(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        for (int k = 0; k < g.n(); ++k)
            ecol[e].push_back(add_named(lp, vars, evar_name(u, v, k)));
    }
    int evar = add_named(lp, vars, "e");
    lp.set_objective(evar, Rational(1));
    lp.set_sense(Sense::Minimize);

    for (int i = 0; i < g.n(); ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (int col : xcol[i]) terms.emplace_back(col, Rational(1));
        lp.add_row(std::move(terms), Relation::Equal, Rational(1));
    }
    auto x_of = [&](int i, int k) -> int {
        const auto& s = sc.set(i);
        auto it = std::lower_bound(s.begin(), s.end(), k);
        if (it == s.end() || *it != k) return -1;
        return xcol[i][it - s.begin()];
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        for (int k = 0; k < g.n(); ++k) {
            int xu = x_of(u, k), xv = x_of(v, k);
            if (xu < 0 && xv < 0) continue; // both pinned to zero by omission
            std::vector<std::pair<int, Rational>> plus, minus;
            if (xv >= 0) {
                plus.emplace_back(xv, Rational(1));
                minus.emplace_back(xv, Rational(-1));
            }
            if (xu >= 0) {
                plus.emplace_back(xu, Rational(-1));
                minus.emplace_back(xu, Rational(1));
            }
            plus.emplace_back(ecol[e][k], Rational(-1));
            minus.emplace_back(ecol[e][k], Rational(-1));
            lp.add_row(std::move(plus), Relation::LessEq, Rational(0));
            lp.add_row(std::move(minus), Relation::LessEq, Rational(0));
        }
        std::vector<std::pair<int, Rational>> total;
        for (int col : ecol[e]) total.emplace_back(col, Rational(1));
        total.emplace_back(evar, Rational(-1));
        lp.add_row(std::move(total), Relation::LessEq, Rational(0));
    }
    return out;
}

IndexedLp build_partition(const Graph& g, const Scale& sc) {
    require_matching_scale(g, sc, "build_partition");
    IndexedLp out{{}, {}, ProblemKind::Partition};
    auto& lp = out.lp;
    auto& vars = out.vars;

    // f_{a,b}: function a evaluated at b, present only for b in S_a.
    std::vector<std::vector<int>> fcol(g.n());
    for (int a = 0; a < g.n(); ++a)
        for (int b : sc.set(a)) fcol[a].push_back(add_named(lp, vars, fvar_name(a, b)));

    std::vector<std::vector<int>> pecol(g.n(), std::vector<int>(g.edge_count()));
    for (int a = 0; a < g.n(); ++a)
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[e];
            pecol[a][e] = add_named(lp, vars, pevar_name(a, u, v));
        }
    int evar = add_named(lp, vars, "e");
    lp.set_objective(evar, Rational(1));
    lp.set_sense(Sense::Minimize);

    auto f_of = [&](int a, int b) -> int {
        const auto& s = sc.set(a);
        auto it = std::lower_bound(s.begin(), s.end(), b);
        if (it == s.end() || *it != b) return -1;
        return fcol[a][it - s.begin()];
    };
    for (int b = 0; b < g.n(); ++b) {
        std::vector<std::pair<int, Rational>> terms;
        for (int a = 0; a < g.n(); ++a) {
            int col = f_of(a, b);
            if (col >= 0) terms.emplace_back(col, Rational(1));
        }
        lp.add_row(std::move(terms), Relation::Equal, Rational(1));
    }
    for (int a = 0; a < g.n(); ++a) {
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[e];
            int fu = f_of(a, u), fv = f_of(a, v);
            if (fu < 0 && fv < 0) continue;
            std::vector<std::pair<int, Rational>> plus, minus;
            if (fu >= 0) {
                plus.emplace_back(fu, Rational(1));
                minus.emplace_back(fu, Rational(-1));
            }
            if (fv >= 0) {
                plus.emplace_back(fv, Rational(-1));
                minus.emplace_back(fv, Rational(1));
            }
            plus.emplace_back(pecol[a][e], Rational(-1));
            minus.emplace_back(pecol[a][e], Rational(-1));
            lp.add_row(std::move(plus), Relation::LessEq, Rational(0));
            lp.add_row(std::move(minus), Relation::LessEq, Rational(0));
        }
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        std::vector<std::pair<int, Rational>> total;
        for (int a = 0; a < g.n(); ++a) total.emplace_back(pecol[a][e], Rational(1));
        total.emplace_back(evar, Rational(-1));
        lp.add_row(std::move(total), Relation::LessEq, Rational(0));
    }
    return out;
}

IndexedLp build_pseudo_flows(const Graph& g, const Scale& dual_sc) {
    require_matching_scale(g, dual_sc, "build_pseudo_flows");
    IndexedLp out{{}, {}, ProblemKind::PseudoFlows};
    auto& lp = out.lp;
    auto& vars = out.vars;

    std::vector<int> eta(g.n()), kappa(g.edge_count());
    for (int i = 0; i < g.n(); ++i) eta[i] = add_named_free(lp, vars, eta_name(i));
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        kappa[e] = add_named(lp, vars, kappa_name(u, v));
    }
    // phi_{k,ij} exists only for ij in E[S_k, V]; flows on edges not touching
    // the set cannot change any constrained supply.
    std::vector<std::map<int, int>> phi(g.n());
    for (int k = 0; k < g.n(); ++k) {
        for (int e : edges_touching(g, dual_sc.set(k))) {
            auto [u, v] = g.edges()[e];
            phi[k][e] = add_named_free(lp, vars, phi_name(k, u, v));
        }
    }

    lp.set_sense(Sense::Maximize);
    for (int i = 0; i < g.n(); ++i) lp.set_objective(eta[i], Rational(1));

    std::vector<std::pair<int, Rational>> cap;
    for (int e = 0; e < g.edge_count(); ++e) cap.emplace_back(kappa[e], Rational(1));
    lp.add_row(std::move(cap), Relation::LessEq, Rational(1));

    for (int k = 0; k < g.n(); ++k) {
        for (auto [e, col] : phi[k]) {
            lp.add_row({{col, Rational(1)}, {kappa[e], Rational(-1)}}, Relation::LessEq,
                       Rational(0));
            lp.add_row({{col, Rational(-1)}, {kappa[e], Rational(-1)}}, Relation::LessEq,
                       Rational(0));
        }
        for (int i : dual_sc.set(k)) {
            // eta_i - sigma_{k,i} <= 0
            std::vector<std::pair<int, Rational>> terms{{eta[i], Rational(1)}};
            for (int e : g.incident_edges(i)) {
                auto [u, v] = g.edges()[e];
                auto it = phi[k].find(e);
                if (it == phi[k].end()) continue; // incident edges always touch the set
                terms.emplace_back(it->second, i == v ? Rational(-1) : Rational(1));
            }
            lp.add_row(std::move(terms), Relation::LessEq, Rational(0));
        }
    }
    return out;
}

IndexedLp build_isoperimetric(const Graph& g, const Scale& dual_sc, const SubsetFamily& family) {
    require_matching_scale(g, dual_sc, "build_isoperimetric");
    IndexedLp out{{}, {}, ProblemKind::Isoperimetric};
    auto& lp = out.lp;
    auto& vars = out.vars;

    std::vector<int> eta(g.n()), kappa(g.edge_count());
    for (int i = 0; i < g.n(); ++i) eta[i] = add_named_free(lp, vars, eta_name(i));
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        kappa[e] = add_named(lp, vars, kappa_name(u, v));
    }
    lp.set_sense(Sense::Maximize);
    for (int i = 0; i < g.n(); ++i) lp.set_objective(eta[i], Rational(1));

    std::vector<std::pair<int, Rational>> cap;
    for (int e = 0; e < g.edge_count(); ++e) cap.emplace_back(kappa[e], Rational(1));
    lp.add_row(std::move(cap), Relation::LessEq, Rational(1));

    for (const auto& entry : family.subsets) {
        if (entry.vertices.empty()) throw Error("build_isoperimetric: empty subset");
        if (entry.container < 0 || entry.container >= g.n() ||
            !std::includes(dual_sc.set(entry.container).begin(),
                           dual_sc.set(entry.container).end(), entry.vertices.begin(),
                           entry.vertices.end()))
            throw Error("build_isoperimetric: subset not inside its dual-scale set");
        std::vector<std::pair<int, Rational>> terms;
        for (int i : entry.vertices) terms.emplace_back(eta[i], Rational(1));
        for (int e : boundary_edges(g, entry.vertices)) terms.emplace_back(kappa[e], Rational(-1));
        lp.add_row(std::move(terms), Relation::LessEq, Rational(0));
    }
    return out;
}

IndexedLp build_uniform_flows(const Graph& g, const Scale& dual_sc) {
    require_matching_scale(g, dual_sc, "build_uniform_flows");
    if (g.edge_count() == 0)
        throw Error("build_uniform_flows: edgeless graph (optimum is 0 by convention)");
    IndexedLp out{{}, {}, ProblemKind::UniformFlows};
    auto& lp = out.lp;
    auto& vars = out.vars;

    int eta = add_named_free(lp, vars, "eta");
    Rational cap = Rational(1, g.edge_count());
    std::vector<std::map<int, int>> phi(g.n());
    for (int k = 0; k < g.n(); ++k)
        for (int e : edges_touching(g, dual_sc.set(k))) {
            auto [u, v] = g.edges()[e];
            vars.add(phi_name(k, u, v));
            phi[k][e] = lp.add_variable(phi_name(k, u, v), -cap, cap);
        }

    lp.set_sense(Sense::Maximize);
    lp.set_objective(eta, Rational(g.n()));

    for (int k = 0; k < g.n(); ++k)
        for (int i : dual_sc.set(k)) {
            std::vector<std::pair<int, Rational>> terms{{eta, Rational(1)}};
            for (int e : g.incident_edges(i)) {
                auto it = phi[k].find(e);
                if (it == phi[k].end()) continue;
                auto [u, v] = g.edges()[e];
                terms.emplace_back(it->second, i == v ? Rational(-1) : Rational(1));
            }
            lp.add_row(std::move(terms), Relation::LessEq, Rational(0));
        }
    return out;
}

IndexedLp build_mean_property_a(const Graph& g, const Scale& sc) {
    require_matching_scale(g, sc, "build_mean_property_a");
    IndexedLp out{{}, {}, ProblemKind::MeanPropertyA};
    auto& lp = out.lp;
    auto& vars = out.vars;

    std::vector<std::vector<int>> ncol(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j : sc.set(i)) ncol[i].push_back(add_named(lp, vars, nvar_name(i, j)));
    std::vector<std::vector<int>> ccol(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        for (int k = 0; k < g.n(); ++k) ccol[e].push_back(add_named(lp, vars, cvar_name(u, v, k)));
    }

    lp.set_sense(Sense::Minimize);
    for (int e = 0; e < g.edge_count(); ++e)
        for (int col : ccol[e]) lp.set_objective(col, Rational(1));

    std::vector<std::pair<int, Rational>> mass;
    for (int i = 0; i < g.n(); ++i)
        for (int col : ncol[i]) mass.emplace_back(col, Rational(1));
    lp.add_row(std::move(mass), Relation::Equal, Rational(g.n()));

    auto n_of = [&](int i, int k) -> int {
        const auto& s = sc.set(i);
        auto it = std::lower_bound(s.begin(), s.end(), k);
        if (it == s.end() || *it != k) return -1;
        return ncol[i][it - s.begin()];
    };
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        for (int k = 0; k < g.n(); ++k) {
            int nu = n_of(u, k), nv = n_of(v, k);
            if (nu < 0 && nv < 0) continue;
            std::vector<std::pair<int, Rational>> plus, minus;
            if (nv >= 0) {
                plus.emplace_back(nv, Rational(1));
                minus.emplace_back(nv, Rational(-1));
            }
            if (nu >= 0) {
                plus.emplace_back(nu, Rational(-1));
                minus.emplace_back(nu, Rational(1));
            }
            plus.emplace_back(ccol[e][k], Rational(-1));
            minus.emplace_back(ccol[e][k], Rational(-1));
            lp.add_row(std::move(plus), Relation::LessEq, Rational(0));
            lp.add_row(std::move(minus), Relation::LessEq, Rational(0));
        }
    }
    return out;
}

IndexedLp build_single_column(const Graph& g, const std::vector<int>& s_set) {
    if (s_set.empty()) throw Error("build_single_column: empty set");
    std::vector<int> set = s_set;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.front() < 0 || set.back() >= g.n())
        throw Error("build_single_column: vertex out of range");

    IndexedLp out{{}, {}, ProblemKind::SingleColumn};
    auto& lp = out.lp;
    auto& vars = out.vars;
    int eta = add_named_free(lp, vars, "eta");
    std::map<int, int> phi;
    for (int e : edges_touching(g, set)) {
        auto [u, v] = g.edges()[e];
        vars.add(single_phi_name(u, v));
        phi[e] = lp.add_variable(single_phi_name(u, v), Rational(-1), Rational(1));
    }
    lp.set_sense(Sense::Maximize);
    lp.set_objective(eta, Rational(1));
    for (int i : set) {
        std::vector<std::pair<int, Rational>> terms{{eta, Rational(1)}};
        for (int e : g.incident_edges(i)) {
            auto it = phi.find(e);
            if (it == phi.end()) continue;
            auto [u, v] = g.edges()[e];
            terms.emplace_back(it->second, i == v ? Rational(-1) : Rational(1));
        }
        lp.add_row(std::move(terms), Relation::LessEq, Rational(0));
    }
    return out;
}

IndexedLp build_isoperimetric_dual(const Graph& g, const Scale& dual_sc,
                                   const SubsetFamily& family, int max_subsets) {
    require_matching_scale(g, dual_sc, "build_isoperimetric_dual");
    if (static_cast<int>(family.subsets.size()) > max_subsets)
        throw SizeCeilingError("build_isoperimetric_dual: " +
                                   std::to_string(family.subsets.size()) +
                                   " subsets exceed the tiny-instance ceiling",
                               static_cast<long>(family.subsets.size()), max_subsets);
    IndexedLp out{{}, {}, ProblemKind::IsoperimetricDual};
    auto& lp = out.lp;
    auto& vars = out.vars;

    int avar = add_named(lp, vars, "a");
    std::vector<int> zcol;
    for (size_t t = 0; t < family.subsets.size(); ++t)
        zcol.push_back(add_named(lp, vars, zvar_name(static_cast<int>(t))));
    lp.set_sense(Sense::Minimize);
    lp.set_objective(avar, Rational(1));

    std::vector<std::vector<int>> per_vertex(g.n());
    std::vector<std::vector<int>> per_edge(g.edge_count());
    for (size_t t = 0; t < family.subsets.size(); ++t) {
        const auto& entry = family.subsets[t];
        for (int i : entry.vertices) per_vertex[i].push_back(zcol[t]);
        for (int e : boundary_edges(g, entry.vertices)) per_edge[e].push_back(zcol[t]);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        std::vector<std::pair<int, Rational>> terms;
        for (int col : per_edge[e]) terms.emplace_back(col, Rational(1));
        terms.emplace_back(avar, Rational(-1));
        lp.add_row(std::move(terms), Relation::LessEq, Rational(0));
    }
    for (int i = 0; i < g.n(); ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (int col : per_vertex[i]) terms.emplace_back(col, Rational(1));
        lp.add_row(std::move(terms), Relation::Equal, Rational(1));
    }
    return out;
}

SubsetFamily enumerate_subsets(const Graph& g, const Scale& dual_sc, bool connected_only,
                               int cap) {
    require_matching_scale(g, dual_sc, "enumerate_subsets");
    if (cap < 1 || cap > 25) throw Error("enumerate_subsets: cap must be in [1, 25]");

    // Distinct dual-scale sets, keeping the first container index of each.
    std::map<std::vector<int>, int> distinct;
    for (int i = 0; i < g.n(); ++i) distinct.try_emplace(dual_sc.set(i), i);

    std::map<std::vector<int>, std::pair<int, bool>> found; // subset -> (container, connected)
    for (const auto& [set, container] : distinct) {
        int t = static_cast<int>(set.size());
        if (t > cap)
            throw EnumerationCapError(
                "enumerate_subsets: dual-scale set of " + std::to_string(t) +
                " vertices exceeds cap " + std::to_string(cap) +
                "; use the pseudo-flows formulation instead");
        std::vector<uint32_t> adj(t, 0);
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < t; ++b)
                if (a != b && g.has_edge(set[a], set[b])) adj[a] |= (1u << b);

        uint32_t total = (t >= 32) ? 0 : (1u << t);
        for (uint32_t mask = 1; mask < total; ++mask) {
            uint32_t start = mask & (~mask + 1);
            uint32_t visited = start, frontier = start;
            while (frontier) {
                uint32_t next = 0;
                uint32_t f = frontier;
                while (f) {
                    int b = __builtin_ctz(f);
                    f &= f - 1;
                    next |= adj[b] & mask;
                }
                frontier = next & ~visited;
                visited |= frontier;
            }
            bool connected = visited == mask;
            if (connected_only && !connected) continue;
            std::vector<int> vertices;
            for (uint32_t m = mask; m; m &= m - 1) vertices.push_back(set[__builtin_ctz(m)]);
            std::sort(vertices.begin(), vertices.end());
            auto it = found.find(vertices);
            if (it == found.end()) found.emplace(std::move(vertices), std::make_pair(container, connected));
        }
    }
    SubsetFamily family;
    family.subsets.reserve(found.size());
    for (auto& [vertices, info] : found)
        family.subsets.push_back({vertices, info.first, info.second});
    return family;
}

SubsetFamily singleton_family(const Graph& g) {
    SubsetFamily family;
    for (int i = 0; i < g.n(); ++i) family.subsets.push_back({{i}, i, true});
    return family;
}

PartitionFamily flat_partition_from_z(const Graph& g, const Scale& dual_sc,
                                      const std::vector<std::pair<std::vector<int>, Rational>>& z,
                                      const Rational& a) {
    require_matching_scale(g, dual_sc, "flat_partition_from_z");
    std::vector<Rational> cover(g.n());
    PartitionFamily out;
    out.flat = true;
    out.variation = a;
    for (const auto& [subset, weight] : z) {
        if (weight.sign() < 0) throw Error("flat_partition_from_z: negative z value");
        if (subset.empty()) throw Error("flat_partition_from_z: empty subset");
        std::vector<int> sorted = subset;
        std::sort(sorted.begin(), sorted.end());
        int container = -1;
        for (int i = 0; i < g.n() && container < 0; ++i) {
            const auto& s = dual_sc.set(i);
            if (std::includes(s.begin(), s.end(), sorted.begin(), sorted.end())) container = i;
        }
        if (container < 0)
            throw Error("flat_partition_from_z: subset not inside any dual-scale set");
        for (int v : sorted) cover[v] += weight;
        if (weight.is_zero()) continue;
        PartitionPiece piece;
        piece.tag = container;
        for (int v : sorted) piece.values[v] = weight;
        out.pieces.push_back(std::move(piece));
    }
    for (int i = 0; i < g.n(); ++i)
        if (!cover[i].is_one())
            throw Error("flat_partition_from_z: vertex " + std::to_string(i) +
                        " not covered with total weight 1 (got " + cover[i].str() + ")");
    // Per-edge variation must respect the claimed bound a.
    for (auto [u, v] : g.edges()) {
        Rational total;
        for (const auto& piece : out.pieces) {
            auto pu = piece.values.find(u);
            auto pv = piece.values.find(v);
            Rational fu = pu == piece.values.end() ? Rational(0) : pu->second;
            Rational fv = pv == piece.values.end() ? Rational(0) : pv->second;
            total += (fu - fv).abs();
        }
        if (total > a)
            throw Error("flat_partition_from_z: variation " + total.str() + " on edge (" +
                        std::to_string(u) + "," + std::to_string(v) + ") exceeds " + a.str());
    }
    return out;
}

} // namespace propa
