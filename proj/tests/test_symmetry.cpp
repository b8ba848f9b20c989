#include <doctest.h>

#include <propa/errors.hpp>
#include <propa/flows.hpp>
#include <propa/graph.hpp>
#include <propa/invariants.hpp>
#include <propa/problems.hpp>
#include <propa/symmetry.hpp>

using namespace propa;

namespace {

// Vertex permutation of the hypercube induced by a permutation of coordinates.
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

std::vector<int> cube_bit_flip(int n, int mask) {
    std::vector<int> perm(1 << n);
    for (int v = 0; v < (1 << n); ++v) perm[v] = v ^ mask;
    return perm;
}

std::vector<int> ladder_rotation(int k) {
    std::vector<int> perm(2 * k);
    for (int i = 0; i < k; ++i) {
        perm[i] = (i + 1) % k;
        perm[k + i] = k + (i + 1) % k;
    }
    return perm;
}

std::vector<int> ladder_reflection(int k) {
    std::vector<int> perm(2 * k);
    for (int i = 0; i < k; ++i) {
        perm[i] = (k - i) % k;
        perm[k + i] = k + (k - i) % k;
    }
    return perm;
}

std::vector<int> ladder_layer_flip(int k) {
    std::vector<int> perm(2 * k);
    for (int i = 0; i < k; ++i) {
        perm[i] = k + i;
        perm[k + i] = i;
    }
    return perm;
}

std::vector<int> identity_perm(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    return perm;
}

AutomorphismSet cube_symmetries(int n) {
    AutomorphismSet gens;
    std::vector<int> swap01(n), rotate(n);
    for (int i = 0; i < n; ++i) swap01[i] = rotate[i] = i;
    if (n >= 2) {
        std::swap(swap01[0], swap01[1]);
        for (int i = 0; i < n; ++i) rotate[i] = (i + 1) % n;
    }
    Graph q = hypercube(n);
    gens.permutations.push_back(cube_coordinate_permutation(n, swap01));
    gens.permutations.push_back(cube_coordinate_permutation(n, rotate));
    gens.permutations.push_back(cube_bit_flip(n, 1));
    return close_group(gens, q);
}

} // namespace

TEST_CASE("group closure") {
    Graph q2 = hypercube(2);
    AutomorphismSet trivial;
    CHECK(close_group(trivial, q2).closure->size() == 1);

    AutomorphismSet rot;
    rot.permutations.push_back({1, 3, 0, 2}); // quarter turn of the square
    CHECK(close_group(rot, q2).closure->size() == 4);

    AutomorphismSet ladder;
    Graph cl7 = circular_ladder(7);
    ladder.permutations = {ladder_rotation(7), ladder_reflection(7), ladder_layer_flip(7)};
    CHECK(close_group(ladder, cl7).closure->size() == 28);

    AutomorphismSet bogus;
    bogus.permutations.push_back({1, 2, 3, 0});
    CHECK_THROWS_AS(close_group(bogus, path(4), 100), Error); // not an automorphism
    AutomorphismSet big;
    big.permutations = {ladder_rotation(7), ladder_reflection(7), ladder_layer_flip(7)};
    CHECK_THROWS_AS(close_group(big, cl7, 10), Error); // cap exceeded
}

TEST_CASE("orbits") {
    Graph cl7 = circular_ladder(7);
    AutomorphismSet full;
    full.permutations = {ladder_rotation(7), ladder_reflection(7), ladder_layer_flip(7)};
    Orbits orb = orbits(close_group(full, cl7), cl7);
    CHECK(orb.vertex_orbits.size() == 1);
    CHECK(orb.edge_orbits.size() == 2); // rungs vs rings
    // ring orbit has 14 edges, rung orbit 7
    std::vector<size_t> sizes = {orb.edge_orbits[0].size(), orb.edge_orbits[1].size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{7, 14});

    AutomorphismSet id;
    id.permutations.push_back(identity_perm(cl7.n()));
    Orbits trivial = orbits(id, cl7);
    CHECK(trivial.vertex_orbits.size() == static_cast<size_t>(cl7.n()));
    CHECK(trivial.edge_orbits.size() == static_cast<size_t>(cl7.edge_count()));

    Graph q3 = hypercube(3);
    Orbits cube = orbits(cube_symmetries(3), q3);
    CHECK(cube.vertex_orbits.size() == 1);
    CHECK(cube.edge_orbits.size() == 1);
}

TEST_CASE("averaging the square graph hits the uniform values") {
    Graph q2 = hypercube(2);
    Scale b1 = ball_scale(q2, 1);
    AutomorphismSet d4;
    d4.permutations = {{1, 3, 0, 2}, {0, 2, 1, 3}};
    d4 = close_group(d4, q2);
    CHECK(d4.closure->size() == 8);

    auto cuts = solve_isoperimetric_by_cuts(q2, b1);
    auto [eta, kappa] = average_solution(q2, b1, d4, cuts.eta, cuts.kappa);
    for (const auto& x : eta) CHECK(x == Rational(1, 6));
    for (const auto& k : kappa) CHECK(k == Rational(1, 4));
    // averaged pair is still feasible with the same objective
    auto lifted = lift_and_project(q2, b1, eta, kappa);
    REQUIRE(lifted.certificate.has_value());
    CHECK(lifted.certificate->objective == cuts.value);
}

TEST_CASE("averaging with the identity group changes nothing") {
    Graph g = grid(2, 3);
    Scale b1 = ball_scale(g, 1);
    AutomorphismSet id;
    id.permutations.push_back(identity_perm(g.n()));
    auto cuts = solve_isoperimetric_by_cuts(g, b1);
    auto [eta, kappa] = average_solution(g, b1, id, cuts.eta, cuts.kappa);
    CHECK(eta == cuts.eta);
    CHECK(kappa == cuts.kappa);
}

TEST_CASE("averaging the circular ladder gives constant demands 1/14") {
    Graph cl7 = circular_ladder(7);
    Scale b1 = ball_scale(cl7, 1);
    AutomorphismSet full;
    full.permutations = {ladder_rotation(7), ladder_reflection(7), ladder_layer_flip(7)};
    full = close_group(full, cl7);

    auto cuts = solve_isoperimetric_by_cuts(cl7, b1);
    REQUIRE(cuts.value == Rational(1));
    auto [eta, kappa] = average_solution(cl7, b1, full, cuts.eta, cuts.kappa);
    for (const auto& x : eta) CHECK(x == Rational(1, 14));
    // kappa constant on each orbit
    Orbits orb = orbits(full, cl7);
    for (const auto& members : orb.edge_orbits)
        for (int e : members) CHECK(kappa[e] == kappa[members.front()]);
    // still optimal
    auto lifted = lift_and_project(cl7, b1, eta, kappa);
    REQUIRE(lifted.certificate.has_value());
    CHECK(lifted.certificate->objective == Rational(1));
    CHECK(verify_flow_certificate(cl7, b1, *lifted.certificate).ok);
}

TEST_CASE("average_solution validates its inputs") {
    Graph q2 = hypercube(2);
    Scale b1 = ball_scale(q2, 1);
    AutomorphismSet d4;
    d4.permutations = {{1, 3, 0, 2}};

    // scale not invariant under the group
    Scale lopsided(4, {{0, 1, 2}, {1}, {2}, {3}});
    std::vector<Rational> eta(4, Rational(0)), kappa(4, Rational(1, 4));
    CHECK_THROWS_AS(average_solution(q2, lopsided, d4, eta, kappa), Error);

    // infeasible input pair
    std::vector<Rational> greedy(4, Rational(1));
    CHECK_THROWS_AS(average_solution(q2, b1, d4, greedy, kappa), Error);
}

TEST_CASE("reduced symmetric LP for the circular ladder") {
    Graph cl7 = circular_ladder(7);
    Scale b1 = ball_scale(cl7, 1);
    AutomorphismSet full;
    full.permutations = {ladder_rotation(7), ladder_reflection(7), ladder_layer_flip(7)};
    full = close_group(full, cl7);

    IndexedLp reduced = reduced_symmetric_lp(cl7, b1, full);
    CHECK(reduced.lp.num_vars() == 3); // one eta orbit, two kappa orbits
    auto sol = solve(reduced.lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective_value == Rational(1));
    CHECK(sol.assignment[reduced.vars.at("eta_orb_0")] == Rational(1, 14));

    // Expanding the orbit solution gives a feasible full pair with value 1.
    Orbits orb = orbits(full, cl7);
    std::vector<Rational> eta(cl7.n()), kappa(cl7.edge_count());
    for (int i = 0; i < cl7.n(); ++i)
        eta[i] = sol.assignment[reduced.vars.at("eta_orb_" +
                                                std::to_string(orb.vertex_orbit_of[i]))];
    for (int e = 0; e < cl7.edge_count(); ++e)
        kappa[e] = sol.assignment[reduced.vars.at("kappa_orb_" +
                                                  std::to_string(orb.edge_orbit_of[e]))];
    auto lifted = lift_and_project(cl7, b1, eta, kappa);
    REQUIRE(lifted.certificate.has_value());
    CHECK(lifted.certificate->objective == Rational(1));
}

TEST_CASE("reduced LP equals epsilon on vertex- and edge-transitive graphs") {
    struct Case {
        Graph g;
        int radius;
        AutomorphismSet group;
    };
    std::vector<Case> cases;
    {
        Graph q2 = hypercube(2);
        AutomorphismSet d4;
        d4.permutations = {{1, 3, 0, 2}, {0, 2, 1, 3}};
        cases.push_back({q2, 1, close_group(d4, q2)});
    }
    {
        Graph c6 = cycle(6);
        AutomorphismSet d6;
        d6.permutations = {{1, 2, 3, 4, 5, 0}, {0, 5, 4, 3, 2, 1}};
        cases.push_back({c6, 1, close_group(d6, c6)});
        cases.push_back({c6, 2, close_group(d6, c6)});
    }
    {
        Graph q3 = hypercube(3);
        cases.push_back({q3, 1, cube_symmetries(3)});
    }
    for (const auto& c : cases) {
        Orbits orb = orbits(c.group, c.g);
        REQUIRE(orb.vertex_orbits.size() == 1);
        REQUIRE(orb.edge_orbits.size() == 1);
        IndexedLp reduced = reduced_symmetric_lp(c.g, ball_scale(c.g, c.radius), c.group);
        CHECK(reduced.lp.num_vars() == 2);
        auto sol = solve(reduced.lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        Rational eps = epsilon_at_scale(c.g, c.radius, EpsilonMethod::Dual).epsilon;
        CHECK(sol.objective_value == eps);
    }
}

TEST_CASE("reduced LP with the identity group is the plain isoperimetric LP") {
    Graph g = grid(2, 3);
    Scale b1 = ball_scale(g, 1);
    AutomorphismSet id;
    id.permutations.push_back(identity_perm(g.n()));
    IndexedLp reduced = reduced_symmetric_lp(g, b1, id);
    CHECK(reduced.lp.num_vars() == g.n() + g.edge_count());
    auto sol = solve(reduced.lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    SubsetFamily family = enumerate_subsets(g, b1, true, 20);
    auto direct = solve(build_isoperimetric(g, b1, family).lp);
    CHECK(sol.objective_value == direct.objective_value);
}
