#pragma once

#include <optional>
#include <vector>

#include "propa/graph.hpp"
#include "propa/problems.hpp"
#include "propa/rational.hpp"
#include "propa/scale.hpp"

namespace propa {

// User-supplied automorphisms (generators); closure holds the full element
// list once computed. Orientation of edges may be reversed by an element.
struct AutomorphismSet {
    std::vector<std::vector<int>> permutations;
    std::optional<std::vector<std::vector<int>>> closure;

    const std::vector<std::vector<int>>& elements() const {
        return closure ? *closure : permutations;
    }
};

bool is_automorphism(const Graph& g, const std::vector<int>& perm);

// Full group by breadth-first composition of the generators (identity always
// included). Throws on a non-automorphism generator or when the group would
// exceed `cap` elements.
AutomorphismSet close_group(const AutomorphismSet& gens, const Graph& g, int cap = 100000);

struct Orbits {
    std::vector<std::vector<int>> vertex_orbits; // sorted, ordered by minimum
    std::vector<std::vector<int>> edge_orbits;   // edge ids, unordered pairs
    std::vector<int> vertex_orbit_of;
    std::vector<int> edge_orbit_of;
};

Orbits orbits(const AutomorphismSet& group, const Graph& g);

// Center of mass of the translated solutions: averages eta over vertex
// orbits and kappa over edge orbits. Requires a Gamma-invariant scale and a
// feasible input pair; the result is feasible with the same objective.
std::pair<std::vector<Rational>, std::vector<Rational>> average_solution(
    const Graph& g, const Scale& dual_sc, const AutomorphismSet& group,
    const std::vector<Rational>& eta, const std::vector<Rational>& kappa);

// Isoperimetric LP with one eta per vertex orbit and one kappa per edge
// orbit; rows are aggregated per subset and deduplicated. Variable names:
// eta_orb_<r>, kappa_orb_<r>.
IndexedLp reduced_symmetric_lp(const Graph& g, const Scale& dual_sc, const AutomorphismSet& group,
                               int subset_cap = 20);

} // namespace propa
