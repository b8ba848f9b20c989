#pragma once

#include <map>
#include <vector>

#include "propa/rational.hpp"

namespace propa {

// Family of scale-supported probability measures: xi[i] maps j -> xi_i(j),
// entries absent = 0. epsilon bounds the l1 variation across every edge.
struct MeasureFamily {
    std::vector<std::map<int, Rational>> xi;
    Rational epsilon;
};

// Dual bundle: demands eta per vertex, capacities kappa per canonical edge,
// and one pseudo-flow per focus vertex k (edge id -> signed amount, positive
// along the canonical orientation u -> v). objective is the claimed sum of
// demands; verify_flow_certificate recomputes it.
struct FlowCertificate {
    std::vector<Rational> eta;
    std::vector<Rational> kappa;
    std::vector<std::map<int, Rational>> flows;
    Rational objective;
};

// One function of a partition of unity. tag names the scale set carrying the
// support (supp subset of sets[tag]); values absent = 0.
struct PartitionPiece {
    int tag = 0;
    std::map<int, Rational> values;
};

struct PartitionFamily {
    std::vector<PartitionPiece> pieces;
    bool flat = false;
    Rational variation;
};

} // namespace propa
