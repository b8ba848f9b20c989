#include "propa/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "propa/errors.hpp"

namespace propa {

namespace {

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

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
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

SimplexOptions simplex_options(const ComputeOptions& opts) {
    SimplexOptions s;
    s.rule = opts.rule;
    s.max_columns = opts.max_columns;
    return s;
}

MeasureFamily measures_from_lp_solution(const Graph& g, const Scale& sc, const IndexedLp& ilp,
                                        const LpSolution& sol) {
    MeasureFamily mf;
    mf.xi.resize(g.n());
    for (int i = 0; i < g.n(); ++i)
        for (int j : sc.set(i)) {
            const Rational& value = sol.assignment[ilp.vars.at(xvar_name(i, j))];
            if (!value.is_zero()) mf.xi[i][j] = value;
        }
    mf.epsilon = sol.assignment[ilp.vars.at("e")];
    return mf;
}

// The (eta, kappa) read off the dual multipliers must be feasible for the
// restricted isoperimetric LP and reproduce its value exactly.
void check_extracted_pair(const Graph& g, const SubsetFamily& family,
                          const std::vector<Rational>& eta, const std::vector<Rational>& kappa,
                          const Rational& value) {
    Rational total;
    for (const auto& k : kappa) {
        if (k.sign() < 0) throw VerificationError("extracted kappa is negative");
        total += k;
    }
    if (total > Rational(1)) throw VerificationError("extracted kappa exceeds total capacity 1");
    if (sum(eta) != value) throw VerificationError("extracted eta does not match the LP value");
    for (const auto& entry : family.subsets) {
        Rational demand;
        for (int i : entry.vertices) demand += eta[i];
        Rational capacity;
        for (int e : boundary_edges(g, entry.vertices)) capacity += kappa[e];
        if (demand > capacity)
            throw VerificationError("extracted pair violates a generated inequality");
    }
}

} // namespace

IsoperimetricCutResult solve_isoperimetric_by_cuts(const Graph& g, const Scale& dual_sc,
                                                   const ComputeOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    IsoperimetricCutResult result;
    // Seed with every singleton (bounds the objective) and every full
    // dual-scale set (the inequality that usually binds at the optimum);
    // everything else is separated lazily by the per-focus max-flows.
    SubsetFamily family = singleton_family(g);
    std::set<std::vector<int>> seen;
    for (const auto& entry : family.subsets) seen.insert(entry.vertices);
    for (int k = 0; k < g.n(); ++k) {
        const auto& full = dual_sc.set(k);
        if (seen.insert(full).second) family.subsets.push_back({full, k, false});
    }

    std::vector<int> warm_basis;
    while (true) {
        ++result.stats.cut_rounds;
        // Solve the dual z-problem over the current family: it has a fixed,
        // small row count (|V| + |E|), which suits the dense tableau, and its
        // row multipliers are exactly the isoperimetric variables. Rounds
        // only append columns, so each basis warm-starts the next round.
        IndexedLp zlp = build_isoperimetric_dual(g, dual_sc, family,
                                                 static_cast<int>(family.subsets.size()));
        SimplexOptions sopts = simplex_options(opts);
        sopts.want_duals = true;
        sopts.warm_basis = warm_basis;
        LpSolution sol = solve(zlp.lp, sopts);
        warm_basis = sol.basis_encoding;
        result.stats.pivots += sol.pivot_count;
        if (sol.status != LpStatus::Optimal)
            throw VerificationError("restricted dual LP unexpectedly not optimal");
        std::vector<Rational> eta(g.n()), kappa(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) kappa[e] = -sol.row_duals[e];
        for (int i = 0; i < g.n(); ++i) eta[i] = sol.row_duals[g.edge_count() + i];
        check_extracted_pair(g, family, eta, kappa, sol.objective_value);

        std::vector<MaxFlowResult> per_focus(g.n());
        parallel_for(g.n(), opts.jobs, [&](int k) {
            per_focus[k] = max_flow_feasible(g, kappa, dual_sc.set(k), eta);
        });
        result.stats.flow_calls += g.n();

        bool all_feasible = true;
        for (int k = 0; k < g.n(); ++k) {
            if (per_focus[k].feasible) continue;
            all_feasible = false;
            if (per_focus[k].witness.empty())
                throw VerificationError("infeasible flow without a witness subset");
            for (const auto& witness : per_focus[k].all_witnesses)
                if (seen.insert(witness).second) family.subsets.push_back({witness, k, false});
        }
        if (all_feasible) {
            result.value = sol.objective_value;
            result.eta = std::move(eta);
            result.kappa = std::move(kappa);
            FlowCertificate fc;
            fc.eta = result.eta;
            fc.kappa = result.kappa;
            fc.flows.resize(g.n());
            for (int k = 0; k < g.n(); ++k) fc.flows[k] = std::move(per_focus[k].flow);
            fc.objective = sum(result.eta);
            result.certificate = std::move(fc);
            result.z.reserve(family.subsets.size());
            for (size_t t = 0; t < family.subsets.size(); ++t)
                result.z.push_back(
                    sol.assignment[zlp.vars.at(zvar_name(static_cast<int>(t)))]);
            result.cuts = std::move(family);
            result.stats.seconds = elapsed_since(start);
            return result;
        }
    }
}

namespace {

// Optimal primal measures recovered from the restricted dual: solve the
// isoperimetric-dual LP over the generated subsets, turn z into a flat
// partition, regroup it per vertex and transpose. The result is verified and
// certifies epsilon from above at exactly the dual value.
MeasureFamily measures_from_cuts(const Graph& g, const Scale& dual_sc,
                                 const IsoperimetricCutResult& cuts) {
    std::vector<std::pair<std::vector<int>, Rational>> z;
    for (size_t t = 0; t < cuts.cuts.subsets.size(); ++t)
        if (!cuts.z[t].is_zero()) z.emplace_back(cuts.cuts.subsets[t].vertices, cuts.z[t]);
    PartitionFamily flat = flat_partition_from_z(g, dual_sc, z, cuts.value);
    MeasureFamily mf = measures_from_partition(flat, g.n());
    mf.epsilon = cuts.value;
    return mf;
}

} // namespace

EpsilonReport epsilon_at_scale(const Graph& g, const Scale& sc, EpsilonMethod method,
                               const ComputeOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    if (sc.vertex_count() != g.n()) throw ScaleError("epsilon_at_scale: scale mismatch");
    Scale dual = dual_scale(sc);
    EpsilonReport report;
    report.scale = sc;

    if (method == EpsilonMethod::Primal || method == EpsilonMethod::Both) {
        bool want_lp = true;
        if (method == EpsilonMethod::Both) {
            // Fall back to the partition-transpose primal when the measures
            // LP would be too big for a snappy dense solve.
            IndexedLp probe = build_measures(g, sc);
            long ceiling = opts.max_columns > 0 ? opts.max_columns : default_size_ceiling();
            long threshold = std::min(opts.primal_auto_columns, ceiling);
            want_lp = standard_form_columns(probe.lp) <= threshold;
        }
        if (want_lp) {
            IndexedLp ilp = build_measures(g, sc);
            LpSolution sol = solve(ilp.lp, simplex_options(opts));
            report.stats.pivots += sol.pivot_count;
            if (sol.status != LpStatus::Optimal)
                throw VerificationError("measures LP unexpectedly not optimal");
            report.primal = measures_from_lp_solution(g, sc, ilp, sol);
            report.primal_source = "measures_lp";
            report.epsilon = sol.objective_value;
        }
    }

    if (method == EpsilonMethod::Dual || method == EpsilonMethod::Both || !report.primal) {
        IsoperimetricCutResult cuts = solve_isoperimetric_by_cuts(g, dual, opts);
        report.stats.pivots += cuts.stats.pivots;
        report.stats.cut_rounds += cuts.stats.cut_rounds;
        report.stats.flow_calls += cuts.stats.flow_calls;
        if (report.primal) {
            if (report.epsilon != cuts.value)
                throw VerificationError("primal/dual disagree: " + report.epsilon.str() + " vs " +
                                        cuts.value.str());
        } else {
            report.epsilon = cuts.value;
        }
        report.dual = std::move(cuts.certificate);
        if (method == EpsilonMethod::Both && !report.primal) {
            report.primal = measures_from_cuts(g, dual, cuts);
            report.primal_source = "partition_transpose";
        }
    }

    // The trusted kernel re-checks whatever certificates we hand out.
    if (report.primal) {
        auto check = verify_measure_family(g, sc, *report.primal);
        if (!check.ok)
            throw VerificationError("primal certificate failed verification: " +
                                    check.violations.front());
        if (report.primal->epsilon != report.epsilon)
            throw VerificationError("primal certificate value mismatch");
    }
    if (report.dual) {
        auto check = verify_flow_certificate(g, dual, *report.dual);
        if (!check.ok)
            throw VerificationError("dual certificate failed verification: " +
                                    check.violations.front());
        if (report.dual->objective != report.epsilon)
            throw VerificationError("dual certificate value mismatch");
    }
    report.stats.seconds = elapsed_since(start);
    return report;
}

EpsilonReport epsilon_at_scale(const Graph& g, int radius, EpsilonMethod method,
                               const ComputeOptions& opts) {
    return epsilon_at_scale(g, ball_scale(g, radius), method, opts);
}

Rational uniform_flows_value(const Graph& g, const Scale& dual_sc, const ComputeOptions& opts) {
    if (g.edge_count() == 0) return Rational(0);
    IndexedLp ilp = build_uniform_flows(g, dual_sc);
    LpSolution sol = solve(ilp.lp, simplex_options(opts));
    if (sol.status != LpStatus::Optimal)
        throw VerificationError("uniform-flows LP unexpectedly not optimal");
    return sol.objective_value;
}

MeanPropertyAReport mean_property_a_value(const Graph& g, const Scale& sc,
                                          const ComputeOptions& opts) {
    MeanPropertyAReport report;
    if (g.edge_count() == 0) return report; // all zeros
    IndexedLp ilp = build_mean_property_a(g, sc);
    LpSolution sol = solve(ilp.lp, simplex_options(opts));
    if (sol.status != LpStatus::Optimal)
        throw VerificationError("mean LP unexpectedly not optimal");
    report.raw = sol.objective_value;
    report.per_edge_vertex = report.raw / Rational(static_cast<long>(g.edge_count()) * g.n());
    report.per_edge = report.raw / Rational(g.edge_count());
    return report;
}

namespace {

// Tie-breaking for witness reports: smallest value, then smallest set, then
// lexicographic vertex order.
bool better_witness(const Rational& value, const std::vector<int>& set, const Rational& best_value,
                    const std::vector<int>& best_set) {
    if (best_set.empty()) return true;
    if (value != best_value) return value < best_value;
    if (set.size() != best_set.size()) return set.size() < best_set.size();
    return set < best_set;
}

} // namespace

CheegerReport cheeger_at_scale(const Graph& g, const Scale& sc, CheegerMethod method,
                               const ComputeOptions& opts) {
    if (sc.vertex_count() != g.n()) throw ScaleError("cheeger_at_scale: scale mismatch");
    Scale dual = dual_scale(sc);
    CheegerReport report;
    report.scale = sc;
    if (method == CheegerMethod::Lp) {
        if (g.edge_count() == 0) {
            report.gamma = Rational(0);
            return report;
        }
        Rational uniform = uniform_flows_value(g, dual, opts);
        report.gamma = uniform * Rational(g.edge_count()) / Rational(g.n());
        return report;
    }
    SubsetFamily family = enumerate_subsets(g, dual, /*connected_only=*/true, opts.subset_cap);
    Rational best_value;
    std::vector<int> best_set;
    for (const auto& entry : family.subsets) {
        Rational value = Rational(static_cast<long>(boundary_edges(g, entry.vertices).size())) /
                         Rational(static_cast<long>(entry.vertices.size()));
        if (better_witness(value, entry.vertices, best_value, best_set)) {
            best_value = value;
            best_set = entry.vertices;
        }
    }
    if (best_set.empty()) throw Error("cheeger_at_scale: no candidate subsets");
    report.gamma = best_value;
    report.witness = best_set;
    return report;
}

CheegerReport cheeger_at_scale(const Graph& g, int radius, CheegerMethod method,
                               const ComputeOptions& opts) {
    return cheeger_at_scale(g, ball_scale(g, radius), method, opts);
}

SparsestCutReport sparsest_cut_at_scale(const Graph& g, const Scale& sc,
                                        const std::vector<Rational>& kappa,
                                        const ComputeOptions& opts) {
    if (static_cast<int>(kappa.size()) != g.edge_count())
        throw Error("sparsest_cut_at_scale: kappa length mismatch");
    for (const auto& k : kappa)
        if (k.sign() < 0) throw Error("sparsest_cut_at_scale: negative capacity");
    Scale dual = dual_scale(sc);
    SubsetFamily family = enumerate_subsets(g, dual, /*connected_only=*/true, opts.subset_cap);
    SparsestCutReport report;
    std::vector<int> best_set;
    for (const auto& entry : family.subsets) {
        Rational cut;
        for (int e : boundary_edges(g, entry.vertices)) cut += kappa[e];
        Rational value = cut / Rational(static_cast<long>(entry.vertices.size()));
        if (better_witness(value, entry.vertices, report.value, best_set)) {
            report.value = value;
            best_set = entry.vertices;
        }
    }
    if (best_set.empty()) throw Error("sparsest_cut_at_scale: no candidate subsets");
    report.witness = best_set;
    return report;
}

Rational cube_epsilon_formula(int n, int s) {
    if (n < 1) throw Error("cube_epsilon_formula: n must be >= 1");
    if (s < 0) throw Error("cube_epsilon_formula: s must be >= 0");
    Rational denom;
    for (int k = 0; k <= s; ++k) denom += binomial(n, k);
    return Rational(2) * binomial(n - 1, s) / denom;
}

Rational cube_layer_capacity(int n, int m) {
    Rational denom;
    for (int l = 0; l <= m; ++l) denom += binomial(n, l);
    return binomial(n, m + 1) * Rational(m + 1) / denom;
}

bool cube_layer_inequality_holds(int n, int s) {
    for (int m = 0; m + 1 <= s; ++m)
        if (cube_layer_capacity(n, m + 1) > cube_layer_capacity(n, m)) return false;
    return true;
}

FlowCertificate cube_dual_certificate(int n, int s) {
    if (n < 1) throw Error("cube_dual_certificate: n must be >= 1");
    if (s < 0 || s >= n) throw Error("cube_dual_certificate: requires 0 <= s < n");
    if (n > 20) throw Error("cube_dual_certificate: n too large");
    Graph g = hypercube(n);
    long edge_count = g.edge_count(); // n * 2^(n-1)

    Rational ball_size;
    for (int l = 0; l <= s; ++l) ball_size += binomial(n, l);
    Rational kappa_value = Rational(1) / Rational(edge_count);
    Rational eta_value = binomial(n, s + 1) * Rational(s + 1) / (Rational(edge_count) * ball_size);

    // Per-edge transfer from sphere m+1 into sphere m around the focus: the
    // inflow that the m-ball retains, spread over all crossing edges.
    std::vector<Rational> amount(s + 1);
    Rational acc;
    for (int m = 0; m <= s; ++m) {
        acc += binomial(n, m);
        amount[m] = eta_value * acc / (binomial(n, m + 1) * Rational(m + 1));
    }

    FlowCertificate fc;
    fc.eta.assign(g.n(), eta_value);
    fc.kappa.assign(g.edge_count(), kappa_value);
    fc.flows.resize(g.n());
    for (int j = 0; j < g.n(); ++j) {
        auto& flow = fc.flows[j];
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[e];
            int du = __builtin_popcount(static_cast<unsigned>(u ^ j));
            int dv = __builtin_popcount(static_cast<unsigned>(v ^ j));
            int m = std::min(du, dv);
            if (m > s) continue;
            // flow runs from the farther endpoint to the closer one
            if (dv < du)
                flow[e] = amount[m]; // toward v = canonical direction
            else
                flow[e] = -amount[m];
        }
    }
    fc.objective = Rational(g.n()) * eta_value;
    return fc;
}

Rational girth_epsilon_formula(int d, int s) {
    if (d < 3) throw Error("girth_epsilon_formula: d must be >= 3");
    if (s < 0) throw Error("girth_epsilon_formula: s must be >= 0");
    Rational p = pow_int(d - 1, s);
    return Rational(2) * p * Rational(2 - d) / (Rational(2) - Rational(d) * p);
}

Rational girth_cheeger_formula(int d, int s) {
    if (d < 3) throw Error("girth_cheeger_formula: d must be >= 3");
    if (s < 0) throw Error("girth_cheeger_formula: s must be >= 0");
    Rational p = pow_int(d - 1, s);
    return Rational(2 - d) * Rational(d) * p / (Rational(2) - Rational(d) * p);
}

Rational tree_isoperimetric_number(int d, long n, long k) {
    if (d < 3) throw Error("tree_isoperimetric_number: d must be >= 3");
    if (n < 1) throw Error("tree_isoperimetric_number: n must be >= 1");
    if (k < 1 || k > n) throw Error("tree_isoperimetric_number: k must be in [1, n]");
    return (Rational(d - 2) * Rational(n) + Rational(2) * Rational(k)) / Rational(n);
}

std::vector<Rational> epsilon_sequence(const std::vector<Graph>& family, int radius,
                                       const ComputeOptions& opts) {
    std::vector<Rational> values(family.size());
    ComputeOptions item_opts = opts;
    item_opts.jobs = 1; // parallelism is across sequence items
    parallel_for(static_cast<int>(family.size()), opts.jobs, [&](int i) {
        values[i] = epsilon_at_scale(family[i], radius, EpsilonMethod::Dual, item_opts).epsilon;
    });
    return values;
}

SubgraphCheckResult subgraph_scale_inequality_check(const Graph& h, const Graph& g,
                                                    const std::vector<int>& embedding, int s,
                                                    const ComputeOptions& opts) {
    if (!is_convex_subgraph(h, g, embedding))
        throw Error("subgraph_scale_inequality_check: embedding is not convex");
    SubgraphCheckResult result;
    result.eps_h_doubled = epsilon_at_scale(h, 2 * s, EpsilonMethod::Dual, opts).epsilon;
    result.eps_g = epsilon_at_scale(g, s, EpsilonMethod::Dual, opts).epsilon;
    result.holds = result.eps_h_doubled <= result.eps_g;
    return result;
}

} // namespace propa
