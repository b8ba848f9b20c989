#include "propa/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "propa/errors.hpp"
#include "propa/flows.hpp"

namespace propa {

bool is_automorphism(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n()) return false;
    std::vector<char> hit(g.n(), 0);
    for (int x : perm) {
        if (x < 0 || x >= g.n() || hit[x]) return false;
        hit[x] = 1;
    }
    for (auto [u, v] : g.edges())
        if (!g.has_edge(perm[u], perm[v])) return false;
    return true;
}

AutomorphismSet close_group(const AutomorphismSet& gens, const Graph& g, int cap) {
    for (const auto& perm : gens.permutations)
        if (!is_automorphism(g, perm)) throw Error("close_group: generator is not an automorphism");

    std::vector<int> identity(g.n());
    for (int i = 0; i < g.n(); ++i) identity[i] = i;

    std::set<std::vector<int>> elements;
    std::deque<std::vector<int>> queue;
    elements.insert(identity);
    queue.push_back(identity);
    while (!queue.empty()) {
        std::vector<int> current = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : gens.permutations) {
            std::vector<int> composed(g.n());
            for (int i = 0; i < g.n(); ++i) composed[i] = gen[current[i]];
            if (elements.insert(composed).second) {
                if (static_cast<int>(elements.size()) > cap)
                    throw Error("close_group: group exceeds cap of " + std::to_string(cap));
                queue.push_back(std::move(composed));
            }
        }
    }
    AutomorphismSet out;
    out.permutations = gens.permutations;
    out.closure = std::vector<std::vector<int>>(elements.begin(), elements.end());
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<int>> groups_of(UnionFind& uf, int n, std::vector<int>& index_of) {
    std::map<int, std::vector<int>> by_root;
    for (int i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    index_of.assign(n, -1);
    for (auto& [root, members] : by_root) {
        for (int m : members) index_of[m] = static_cast<int>(out.size());
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace

Orbits orbits(const AutomorphismSet& group, const Graph& g) {
    // Orbits of the generated group are the components under the generators,
    // so the closure is not required here.
    const auto& perms = group.permutations.empty() && group.closure ? *group.closure
                                                                    : group.permutations;
    UnionFind vertices(g.n());
    UnionFind edges(g.edge_count());
    for (const auto& perm : perms) {
        if (!is_automorphism(g, perm)) throw Error("orbits: element is not an automorphism");
        for (int i = 0; i < g.n(); ++i) vertices.unite(i, perm[i]);
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[e];
            auto image = g.edge_id(perm[u], perm[v]);
            edges.unite(e, *image);
        }
    }
    Orbits out;
    out.vertex_orbits = groups_of(vertices, g.n(), out.vertex_orbit_of);
    out.edge_orbits = groups_of(edges, g.edge_count(), out.edge_orbit_of);
    return out;
}

std::pair<std::vector<Rational>, std::vector<Rational>> average_solution(
    const Graph& g, const Scale& dual_sc, const AutomorphismSet& group,
    const std::vector<Rational>& eta, const std::vector<Rational>& kappa) {
    if (dual_sc.vertex_count() != g.n()) throw ScaleError("average_solution: scale mismatch");
    if (static_cast<int>(eta.size()) != g.n()) throw Error("average_solution: eta size mismatch");
    if (static_cast<int>(kappa.size()) != g.edge_count())
        throw Error("average_solution: kappa size mismatch");

    // Invariance under the generators implies invariance under the group.
    for (const auto& perm : group.permutations) {
        if (!is_automorphism(g, perm)) throw Error("average_solution: not an automorphism");
        for (int i = 0; i < g.n(); ++i) {
            std::vector<int> image;
            image.reserve(dual_sc.set(i).size());
            for (int v : dual_sc.set(i)) image.push_back(perm[v]);
            std::sort(image.begin(), image.end());
            if (image != dual_sc.set(perm[i]))
                throw Error("average_solution: scale is not invariant under the group");
        }
    }

    // Feasibility of the input for the isoperimetric LP, via one max-flow per
    // focus (lift-and-project is exact, so this checks every inequality).
    Rational total;
    for (const auto& k : kappa) {
        if (k.sign() < 0) throw Error("average_solution: negative capacity");
        total += k;
    }
    if (total > Rational(1)) throw Error("average_solution: total capacity exceeds 1");
    for (int k = 0; k < g.n(); ++k) {
        auto flow = max_flow_feasible(g, kappa, dual_sc.set(k), eta);
        if (!flow.feasible) throw Error("average_solution: input pair is infeasible");
    }

    Orbits orb = orbits(group, g);
    std::vector<Rational> eta_avg(g.n()), kappa_avg(g.edge_count());
    for (const auto& members : orb.vertex_orbits) {
        Rational mean;
        for (int v : members) mean += eta[v];
        mean /= Rational(static_cast<long>(members.size()));
        for (int v : members) eta_avg[v] = mean;
    }
    for (const auto& members : orb.edge_orbits) {
        Rational mean;
        for (int e : members) mean += kappa[e];
        mean /= Rational(static_cast<long>(members.size()));
        for (int e : members) kappa_avg[e] = mean;
    }
    return {std::move(eta_avg), std::move(kappa_avg)};
}

IndexedLp reduced_symmetric_lp(const Graph& g, const Scale& dual_sc, const AutomorphismSet& group,
                               int subset_cap) {
    Orbits orb = orbits(group, g);
    IndexedLp out{{}, {}, ProblemKind::Isoperimetric};
    auto& lp = out.lp;
    auto& vars = out.vars;

    std::vector<int> eta_col, kappa_col;
    for (size_t r = 0; r < orb.vertex_orbits.size(); ++r) {
        std::string name = "eta_orb_" + std::to_string(r);
        vars.add(name);
        eta_col.push_back(lp.add_free_variable(name));
    }
    for (size_t r = 0; r < orb.edge_orbits.size(); ++r) {
        std::string name = "kappa_orb_" + std::to_string(r);
        vars.add(name);
        kappa_col.push_back(lp.add_variable(name));
    }

    lp.set_sense(Sense::Maximize);
    for (size_t r = 0; r < orb.vertex_orbits.size(); ++r)
        lp.set_objective(eta_col[r], Rational(static_cast<long>(orb.vertex_orbits[r].size())));

    std::vector<std::pair<int, Rational>> cap;
    for (size_t r = 0; r < orb.edge_orbits.size(); ++r)
        cap.emplace_back(kappa_col[r], Rational(static_cast<long>(orb.edge_orbits[r].size())));
    lp.add_row(std::move(cap), Relation::LessEq, Rational(1));

    SubsetFamily family = enumerate_subsets(g, dual_sc, /*connected_only=*/true, subset_cap);
    std::set<std::vector<long>> seen_rows; // orbit-aggregated coefficient stamps
    for (const auto& entry : family.subsets) {
        std::vector<long> stamp(orb.vertex_orbits.size() + orb.edge_orbits.size(), 0);
        for (int i : entry.vertices) ++stamp[orb.vertex_orbit_of[i]];
        for (int e : boundary_edges(g, entry.vertices))
            ++stamp[orb.vertex_orbits.size() + orb.edge_orbit_of[e]];
        if (!seen_rows.insert(stamp).second) continue;
        std::vector<std::pair<int, Rational>> terms;
        for (size_t r = 0; r < orb.vertex_orbits.size(); ++r)
            if (stamp[r] != 0) terms.emplace_back(eta_col[r], Rational(stamp[r]));
        for (size_t r = 0; r < orb.edge_orbits.size(); ++r) {
            long count = stamp[orb.vertex_orbits.size() + r];
            if (count != 0) terms.emplace_back(kappa_col[r], Rational(-count));
        }
        lp.add_row(std::move(terms), Relation::LessEq, Rational(0));
    }
    return out;
}

} // namespace propa
