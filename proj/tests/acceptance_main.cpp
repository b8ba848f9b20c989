// Acceptance suite: one pass/fail line per criterion, every comparison an
// exact rational equality. Returns nonzero on any unexpected failure.

#include <propa/errors.hpp>
#include <propa/flows.hpp>
#include <propa/graph.hpp>
#include <propa/invariants.hpp>
#include <propa/problems.hpp>
#include <propa/symmetry.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

using namespace propa;

namespace {

int failures = 0;
int expected_failures = 0;

struct Criterion {
    explicit Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)) {}

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok_ = false;
            notes_.push_back(what);
        }
    }

    // A check that is known to be unattainable (documented defect); it is
    // still executed and reported, but does not fail the gate.
    void require_documented(bool condition, const std::string& what) {
        if (!condition) {
            expected_fail_ = true;
            notes_.push_back(what + " [documented paper/spec defect, see README]");
        }
    }

    ~Criterion() {
        std::ostringstream line;
        if (!ok_) {
            ++failures;
            line << "FAIL criterion " << number_ << ": " << title_;
        } else if (expected_fail_) {
            ++expected_failures;
            line << "FAIL(expected) criterion " << number_ << ": " << title_;
        } else {
            line << "PASS criterion " << number_ << ": " << title_;
        }
        std::cout << line.str() << "\n";
        for (const auto& note : notes_) std::cout << "       - " << note << "\n";
        std::cout.flush();
    }

    int number_;
    std::string title_;
    bool ok_ = true;
    bool expected_fail_ = false;
    std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct XorShift {
    uint64_t state;
    explicit XorShift(uint64_t seed) : state(seed ? seed : 1) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

bool is_connected(const Graph& g) {
    if (g.n() == 0) return true;
    auto dm = all_pairs_distances(g);
    for (int v = 0; v < g.n(); ++v)
        if (!DistanceMatrix::finite(dm.at(0, v))) return false;
    return true;
}

Graph random_connected_graph(XorShift& rng, int max_vertices) {
    while (true) {
        int n = static_cast<int>(rng.range(4, max_vertices));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.range(0, 99) < 35) edges.emplace_back(u, v);
        Graph g(n, std::move(edges), "random");
        if (is_connected(g)) return g;
    }
}

struct CorpusEntry {
    Graph graph;
    int radius;
};

// Generators plus seeded random connected graphs; >= 30 instances.
std::vector<CorpusEntry> corpus() {
    std::vector<CorpusEntry> out;
    out.push_back({hypercube(2), 1});
    out.push_back({hypercube(3), 1});
    out.push_back({grid(2, 2), 1});
    out.push_back({grid(2, 3), 1});
    out.push_back({grid(3, 3), 1});
    for (int k = 4; k <= 8; ++k) out.push_back({cycle(k), 1});
    out.push_back({cycle(6), 2});
    for (int k = 2; k <= 5; ++k) out.push_back({path(k), 1});
    out.push_back({path(5), 2});
    out.push_back({petersen(), 1});
    out.push_back({heawood(), 1});
    out.push_back({circular_ladder(4), 1});
    out.push_back({circular_ladder(7), 1});
    out.push_back({disjoint_union({hypercube(1), hypercube(2)}), 1});
    out.push_back({with_isolated_vertex(cycle(5)), 1});
    XorShift rng(20260809);
    for (int i = 0; i < 10; ++i) out.push_back({random_connected_graph(rng, 10), 1});
    return out;
}

Rational lp_optimum(const IndexedLp& ilp) {
    auto sol = solve(ilp.lp);
    if (sol.status != LpStatus::Optimal) throw Error("acceptance: LP not optimal");
    return sol.objective_value;
}

std::vector<int> cube_coordinate_permutation(int n, const std::vector<int>& sigma) {
    std::vector<int> perm(1 << n);
    for (int v = 0; v < (1 << n); ++v) {
        int image = 0;
        for (int b = 0; b < n; ++b)
            if (v & (1 << b)) image |= 1 << sigma[b];
        perm[v] = image;
    }
    return perm;
}

AutomorphismSet cube_group(int n) {
    AutomorphismSet gens;
    std::vector<int> swap01(n), rotate(n);
    for (int i = 0; i < n; ++i) swap01[i] = rotate[i] = i;
    if (n >= 2) {
        std::swap(swap01[0], swap01[1]);
        for (int i = 0; i < n; ++i) rotate[i] = (i + 1) % n;
    }
    gens.permutations.push_back(cube_coordinate_permutation(n, swap01));
    gens.permutations.push_back(cube_coordinate_permutation(n, rotate));
    std::vector<int> flip(1 << n);
    for (int v = 0; v < (1 << n); ++v) flip[v] = v ^ 1;
    gens.permutations.push_back(flip);
    return close_group(gens, hypercube(n));
}

AutomorphismSet cycle_group(int k) {
    std::vector<int> rotation(k), reflection(k);
    for (int i = 0; i < k; ++i) {
        rotation[i] = (i + 1) % k;
        reflection[i] = (k - i) % k;
    }
    AutomorphismSet gens;
    gens.permutations = {rotation, reflection};
    return close_group(gens, cycle(k));
}

AutomorphismSet heawood_group() {
    // LCF shift by two and the mirror i -> 13 - i.
    std::vector<int> shift(14), mirror(14);
    for (int i = 0; i < 14; ++i) {
        shift[i] = (i + 2) % 14;
        mirror[i] = 13 - i;
    }
    AutomorphismSet gens;
    gens.permutations = {shift, mirror};
    return close_group(gens, heawood());
}

AutomorphismSet ladder_group(int k) {
    std::vector<int> rotation(2 * k), reflection(2 * k), flip(2 * k);
    for (int i = 0; i < k; ++i) {
        rotation[i] = (i + 1) % k;
        rotation[k + i] = k + (i + 1) % k;
        reflection[i] = (k - i) % k;
        reflection[k + i] = k + (k - i) % k;
        flip[i] = k + i;
        flip[k + i] = i;
    }
    AutomorphismSet gens;
    gens.permutations = {rotation, reflection, flip};
    return close_group(gens, circular_ladder(k));
}

void criterion1() {
    Criterion c(1, "worked epsilon values with matching primal and dual certificates");
    struct Case {
        Graph g;
        int s;
        Rational expected;
    };
    std::vector<Case> cases = {{hypercube(2), 1, Rational(2, 3)},
                               {hypercube(3), 2, Rational(2, 7)},
                               {grid(3, 3), 1, Rational(12, 13)},
                               {heawood(), 2, Rational(4, 5)},
                               {circular_ladder(7), 1, Rational(1)}};
    for (auto& one : cases) {
        auto t0 = std::chrono::steady_clock::now();
        EpsilonReport report = epsilon_at_scale(one.g, one.s, EpsilonMethod::Both);
        double elapsed = seconds_since(t0);
        std::string name = one.g.name() + " s=" + std::to_string(one.s);
        c.require(report.epsilon == one.expected,
                  name + ": epsilon " + report.epsilon.str() + " != " + one.expected.str());
        c.require(report.primal.has_value() && report.dual.has_value(),
                  name + ": missing certificate");
        if (report.primal && report.dual) {
            Scale sc = ball_scale(one.g, one.s);
            c.require(verify_measure_family(one.g, sc, *report.primal).ok,
                      name + ": primal does not verify");
            c.require(verify_flow_certificate(one.g, dual_scale(sc), *report.dual).ok,
                      name + ": dual does not verify");
            c.require(report.primal->epsilon == sum(report.dual->eta),
                      name + ": primal epsilon != dual objective");
        }
        c.require(elapsed < 60.0, name + ": solve took " + std::to_string(elapsed) + " s");
    }
}

void criterion2() {
    Criterion c(2, "hypercube formula cross-check, n in 2..5, s in {1,2}");
    auto t0 = std::chrono::steady_clock::now();
    ComputeOptions opts;
    opts.jobs = 4;
    for (int n = 2; n <= 5; ++n) {
        for (int s = 1; s <= 2 && s < n; ++s) {
            EpsilonReport report = epsilon_at_scale(hypercube(n), s, EpsilonMethod::Both, opts);
            Rational expected = cube_epsilon_formula(n, s);
            c.require(report.epsilon == expected, "Q" + std::to_string(n) + " s=" +
                                                      std::to_string(s) + ": " +
                                                      report.epsilon.str() +
                                                      " != " + expected.str());
        }
    }
    double elapsed = seconds_since(t0);
    c.require(elapsed < 600.0, "total runtime " + std::to_string(elapsed) + " s >= 10 min");
}

void criterion3() {
    Criterion c(3, "girth formula cross-check on Heawood and Petersen");
    for (int s : {1, 2}) {
        Rational lp = epsilon_at_scale(heawood(), s, EpsilonMethod::Dual).epsilon;
        Rational formula = girth_epsilon_formula(3, s);
        c.require(lp == formula, "heawood s=" + std::to_string(s) + ": " + lp.str() +
                                     " != " + formula.str());
    }
    Rational petersen_eps = epsilon_at_scale(petersen(), 1, EpsilonMethod::Dual).epsilon;
    c.require(petersen_eps == girth_epsilon_formula(3, 1),
              "petersen s=1 does not match the formula");
    c.require(petersen_eps == Rational(1), "petersen s=1 is not 1");
}

void criterion4() {
    Criterion c(4, "four-problem duality on a corpus of >= 30 graphs");
    auto instances = corpus();
    c.require(instances.size() >= 30,
              "corpus has only " + std::to_string(instances.size()) + " instances");
    for (const auto& [g, radius] : instances) {
        Scale sc = ball_scale(g, radius);
        Scale dual = dual_scale(sc);
        Rational eps = lp_optimum(build_measures(g, sc));
        Rational pseudo = lp_optimum(build_pseudo_flows(g, dual));
        Rational iso =
            lp_optimum(build_isoperimetric(g, dual, enumerate_subsets(g, dual, true, 20)));
        Rational part = lp_optimum(build_partition(g, sc)); // ball scales are self-dual
        std::string name = g.name() + " s=" + std::to_string(radius);
        c.require(eps == pseudo, name + ": measures != pseudo-flows");
        c.require(eps == iso, name + ": measures != isoperimetric");
        c.require(eps == part, name + ": measures != partition");
    }
    // Asymmetric scales exercise the scale/dual-scale pairing explicitly.
    Graph p4 = path(4);
    Scale lopsided(4, {{0, 1}, {1}, {1, 2, 3}, {3}});
    Scale dual = dual_scale(lopsided);
    Rational eps = lp_optimum(build_measures(p4, lopsided));
    c.require(eps == lp_optimum(build_pseudo_flows(p4, dual)),
              "asymmetric scale: measures != pseudo-flows at the dual scale");
    c.require(eps == lp_optimum(build_isoperimetric(p4, dual, enumerate_subsets(p4, dual, true, 20))),
              "asymmetric scale: measures != isoperimetric at the dual scale");
    c.require(lp_optimum(build_partition(p4, lopsided)) ==
                  lp_optimum(build_measures(p4, dual)),
              "asymmetric scale: partition != measures at the dual scale");
}

void criterion5() {
    Criterion c(5, "lift-and-project of every solved isoperimetric optimum");
    for (const auto& [g, radius] : corpus()) {
        Scale dual = dual_scale(ball_scale(g, radius));
        IndexedLp ilp = build_isoperimetric(g, dual, enumerate_subsets(g, dual, true, 20));
        auto sol = solve(ilp.lp);
        if (sol.status != LpStatus::Optimal) {
            c.require(false, g.name() + ": isoperimetric LP not optimal");
            continue;
        }
        std::vector<Rational> eta(g.n()), kappa(g.edge_count());
        for (int i = 0; i < g.n(); ++i) eta[i] = sol.assignment[ilp.vars.at(eta_name(i))];
        for (int e = 0; e < g.edge_count(); ++e) {
            auto [u, v] = g.edges()[e];
            kappa[e] = sol.assignment[ilp.vars.at(kappa_name(u, v))];
        }
        double worst = 0.0;
        for (int k = 0; k < g.n(); ++k) {
            auto t0 = std::chrono::steady_clock::now();
            auto flow = max_flow_feasible(g, kappa, dual.set(k), eta);
            worst = std::max(worst, seconds_since(t0));
            if (!flow.feasible) {
                c.require(false, g.name() + ": focus " + std::to_string(k) + " infeasible");
            }
        }
        auto lifted = lift_and_project(g, dual, eta, kappa);
        std::string name = g.name() + " s=" + std::to_string(radius);
        c.require(lifted.certificate.has_value(), name + ": lift failed");
        if (lifted.certificate) {
            c.require(verify_flow_certificate(g, dual, *lifted.certificate).ok,
                      name + ": lifted certificate does not verify");
            c.require(lifted.certificate->objective == sol.objective_value,
                      name + ": lifted objective differs");
        }
        c.require(worst < 1.0, name + ": a per-focus max-flow took " + std::to_string(worst) + " s");
    }
}

void criterion6() {
    Criterion c(6, "Cheeger at scale: LP equals brute force; Heawood gives 6/5 and 4/5");
    for (const auto& [g, radius] : corpus()) {
        Scale dual = dual_scale(ball_scale(g, radius));
        size_t largest = 0;
        for (const auto& s : dual.sets()) largest = std::max(largest, s.size());
        if (largest > 12) continue;
        auto lp = cheeger_at_scale(g, radius, CheegerMethod::Lp);
        auto brute = cheeger_at_scale(g, radius, CheegerMethod::BruteForce);
        c.require(lp.gamma == brute.gamma,
                  g.name() + " s=" + std::to_string(radius) + ": LP " + lp.gamma.str() +
                      " != brute force " + brute.gamma.str());
    }
    auto heawood_cheeger = cheeger_at_scale(heawood(), 2, CheegerMethod::BruteForce);
    c.require(heawood_cheeger.gamma == Rational(6, 5), "heawood s=2 gamma != 6/5");
    c.require(cheeger_at_scale(heawood(), 2, CheegerMethod::Lp).gamma == Rational(6, 5),
              "heawood s=2 LP gamma != 6/5");
    Rational uniform = uniform_flows_value(heawood(), ball_scale(heawood(), 2));
    c.require(uniform == Rational(14, 21) * Rational(6, 5),
              "heawood uniform-flows optimum != (14/21)*(6/5)");
    c.require(uniform == Rational(4, 5), "heawood uniform-flows optimum != 4/5");
}

void criterion7() {
    Criterion c(7, "mean = uniform <= pseudo-flows = epsilon; isolated vertex zeroes the mean");
    for (const auto& [g, radius] : corpus()) {
        Scale sc = ball_scale(g, radius);
        Scale dual = dual_scale(sc);
        auto mean = mean_property_a_value(g, sc);
        Rational uniform = uniform_flows_value(g, dual);
        Rational pseudo = lp_optimum(build_pseudo_flows(g, dual));
        Rational eps = lp_optimum(build_measures(g, sc));
        std::string name = g.name() + " s=" + std::to_string(radius);
        c.require(mean.per_edge == uniform, name + ": mean != uniform");
        c.require(uniform <= pseudo, name + ": uniform > pseudo-flows");
        c.require(pseudo == eps, name + ": pseudo-flows != epsilon");
    }
    for (int s : {0, 1, 2}) {
        Graph g = with_isolated_vertex(grid(2, 3));
        c.require(mean_property_a_value(g, ball_scale(g, s)).raw == Rational(0),
                  "isolated vertex: mean optimum nonzero at s=" + std::to_string(s));
    }
}

void criterion8() {
    Criterion c(8, "cube dual certificates verify and match the formula for n <= 8");
    for (int n = 2; n <= 8; ++n) {
        for (int s = 0; s < n; ++s) {
            FlowCertificate cert = cube_dual_certificate(n, s);
            Rational expected = cube_epsilon_formula(n, s);
            std::string name = "Q" + std::to_string(n) + " s=" + std::to_string(s);
            c.require(cert.objective == expected, name + ": certificate value != formula");
            Graph g = hypercube(n);
            c.require(verify_flow_certificate(g, ball_scale(g, s), cert).ok,
                      name + ": certificate does not verify");
            c.require(cube_layer_inequality_holds(n, s), name + ": layer inequality fails");
        }
    }
}

void criterion9() {
    Criterion c(9, "subgraph lemma on the figure pair and 10 random convex pairs");
    // The final-section figure pair.
    Graph h(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    Graph g(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
    std::vector<int> figure_embedding = {0, 1, 2, 3};
    auto figure = subgraph_scale_inequality_check(h, g, figure_embedding, 1);
    c.require(figure.holds, "figure pair: eps_{2,H} > eps_{1,G}");
    Rational eps_h1 = epsilon_at_scale(h, 1, EpsilonMethod::Dual).epsilon;
    Rational eps_g1 = epsilon_at_scale(g, 1, EpsilonMethod::Dual).epsilon;
    c.require(eps_h1 == Rational(2, 3) && eps_g1 == Rational(0) && eps_h1 > eps_g1,
              "figure pair does not witness the need for doubling");

    XorShift rng(424242);
    Graph g44 = grid(4, 4);
    int held = 0, total = 0;
    for (int trial = 0; trial < 5; ++trial) {
        int r0 = static_cast<int>(rng.range(0, 2)), r1 = static_cast<int>(rng.range(r0 + 1, 3));
        int c0 = static_cast<int>(rng.range(0, 2)), c1 = static_cast<int>(rng.range(c0 + 1, 3));
        Graph sub = grid(r1 - r0 + 1, c1 - c0 + 1);
        std::vector<int> embedding;
        for (int r = r0; r <= r1; ++r)
            for (int col = c0; col <= c1; ++col) embedding.push_back(r * 4 + col);
        auto res = subgraph_scale_inequality_check(sub, g44, embedding, 1);
        ++total;
        if (res.holds) ++held;
    }
    Graph q4 = hypercube(4);
    for (int trial = 0; trial < 5; ++trial) {
        int fixed_mask = static_cast<int>(rng.range(1, 14)); // fix 1..3 of 4 coordinates
        int values = static_cast<int>(rng.next()) & fixed_mask;
        std::vector<int> free_bits;
        for (int b = 0; b < 4; ++b)
            if (!(fixed_mask & (1 << b))) free_bits.push_back(b);
        int dim = static_cast<int>(free_bits.size());
        if (dim == 0) {
            --trial;
            continue;
        }
        Graph sub = hypercube(dim);
        std::vector<int> embedding;
        for (int v = 0; v < (1 << dim); ++v) {
            int image = values;
            for (int b = 0; b < dim; ++b)
                if (v & (1 << b)) image |= 1 << free_bits[b];
            embedding.push_back(image);
        }
        auto res = subgraph_scale_inequality_check(sub, q4, embedding, 1);
        ++total;
        if (res.holds) ++held;
    }
    c.require(total == 10, "expected 10 random pairs, got " + std::to_string(total));
    c.require(held == total,
              "inequality failed on " + std::to_string(total - held) + " of the random pairs");
}

void criterion10() {
    Criterion c(10, "averaging and the reduced symmetric LP");
    struct Case {
        Graph g;
        int radius;
        AutomorphismSet group;
    };
    std::vector<Case> cases;
    cases.push_back({hypercube(2), 1, cube_group(2)});
    cases.push_back({hypercube(3), 1, cube_group(3)});
    cases.push_back({cycle(6), 1, cycle_group(6)});
    cases.push_back({heawood(), 2, heawood_group()});
    cases.push_back({circular_ladder(7), 1, ladder_group(7)});
    for (auto& one : cases) {
        Scale sc = ball_scale(one.g, one.radius);
        auto cuts = solve_isoperimetric_by_cuts(one.g, sc);
        auto [eta, kappa] = average_solution(one.g, sc, one.group, cuts.eta, cuts.kappa);
        std::string name = one.g.name();
        c.require(sum(eta) == cuts.value, name + ": averaging changed the objective");
        auto lifted = lift_and_project(one.g, sc, eta, kappa);
        c.require(lifted.certificate.has_value(), name + ": averaged pair is infeasible");
        Orbits orb = orbits(one.group, one.g);
        for (const auto& members : orb.vertex_orbits)
            for (int v : members)
                c.require(eta[v] == eta[members.front()],
                          name + ": averaged eta not constant on a vertex orbit");
        for (const auto& members : orb.edge_orbits)
            for (int e : members)
                c.require(kappa[e] == kappa[members.front()],
                          name + ": averaged kappa not constant on an edge orbit");
    }

    // Circular-ladder reduced LP.
    Graph cl7 = circular_ladder(7);
    AutomorphismSet group = ladder_group(7);
    IndexedLp reduced = reduced_symmetric_lp(cl7, ball_scale(cl7, 1), group);
    auto sol = solve(reduced.lp);
    c.require(sol.status == LpStatus::Optimal, "reduced ladder LP not optimal");
    c.require(sol.objective_value == Rational(1), "reduced ladder LP optimum != 1");
    c.require(reduced.lp.num_vars() == 3, "reduced ladder LP is not the 3-variable LP");
    Rational eta_value = sol.assignment[reduced.vars.at("eta_orb_0")];
    c.require(eta_value == Rational(1, 14), "reduced ladder eta != 1/14");
    // Identify the orbits by size: 7 rungs, 14 ring edges.
    Orbits orb = orbits(group, cl7);
    Rational kappa_rung, lambda_ring;
    for (size_t r = 0; r < orb.edge_orbits.size(); ++r) {
        Rational value = sol.assignment[reduced.vars.at("kappa_orb_" + std::to_string(r))];
        if (orb.edge_orbits[r].size() == 7)
            kappa_rung = value;
        else
            lambda_ring = value;
    }
    // The reference pair violates the inequality of three consecutive ring
    // vertices (3 eta <= 2 lambda + 3 kappa), so no exact solver can return
    // it; asserted anyway, as stated.
    c.require_documented(kappa_rung == Rational(1, 35) && lambda_ring == Rational(2, 35),
                         "reduced ladder (kappa_rung, lambda_ring) = (" + kappa_rung.str() +
                             ", " + lambda_ring.str() + ") != (1/35, 2/35)");
}

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << "acceptance finished in " << seconds_since(t0) << " s: " << failures
              << " failed, " << expected_failures << " expected-failed\n";
    return failures == 0 ? 0 : 1;
}
