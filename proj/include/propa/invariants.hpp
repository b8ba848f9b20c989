#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propa/certificates.hpp"
#include "propa/flows.hpp"
#include "propa/graph.hpp"
#include "propa/lp.hpp"
#include "propa/problems.hpp"
#include "propa/scale.hpp"

namespace propa {

struct ComputeOptions {
    int jobs = 1;
    long max_columns = 0; // 0 = default ceiling
    int subset_cap = 20;
    PivotRule rule = PivotRule::DantzigBland;
    // Method Both picks the direct measures LP for the primal certificate
    // only below this standard-form size; above it the primal comes from the
    // partition transpose of the restricted dual (still exact and verified).
    long primal_auto_columns = 1000;
};

struct SolveStats {
    long pivots = 0;
    int cut_rounds = 0;
    long flow_calls = 0;
    double seconds = 0.0;
};

// Lazy-constraint solve of the isoperimetric LP: start from all singleton
// inequalities, separate violated subsets with one max-flow per focus vertex
// (the deficit witness is exactly the violated inequality), stop when every
// per-focus flow problem is feasible. The flows found in the final round are
// already the lift, so the optimal dual certificate comes for free.
struct IsoperimetricCutResult {
    Rational value;
    std::vector<Rational> eta;
    std::vector<Rational> kappa;
    FlowCertificate certificate;
    SubsetFamily cuts;
    std::vector<Rational> z; // optimal isoperimetric-dual weights, per cut
    SolveStats stats;
};

IsoperimetricCutResult solve_isoperimetric_by_cuts(const Graph& g, const Scale& dual_sc,
                                                   const ComputeOptions& opts = {});

enum class EpsilonMethod { Primal, Dual, Both };

struct EpsilonReport {
    Rational epsilon;
    std::optional<MeasureFamily> primal;
    std::optional<FlowCertificate> dual;
    std::optional<Scale> scale;
    std::string primal_source; // "measures_lp" or "partition_transpose"
    SolveStats stats;
};

EpsilonReport epsilon_at_scale(const Graph& g, const Scale& sc, EpsilonMethod method,
                               const ComputeOptions& opts = {});
EpsilonReport epsilon_at_scale(const Graph& g, int radius, EpsilonMethod method,
                               const ComputeOptions& opts = {});

enum class CheegerMethod { Lp, BruteForce };

struct CheegerReport {
    Rational gamma;
    std::vector<int> witness; // empty for the Lp method
    std::optional<Scale> scale;
};

CheegerReport cheeger_at_scale(const Graph& g, const Scale& sc, CheegerMethod method,
                               const ComputeOptions& opts = {});
CheegerReport cheeger_at_scale(const Graph& g, int radius, CheegerMethod method,
                               const ComputeOptions& opts = {});

struct SparsestCutReport {
    Rational value;
    std::vector<int> witness;
};

SparsestCutReport sparsest_cut_at_scale(const Graph& g, const Scale& sc,
                                        const std::vector<Rational>& kappa,
                                        const ComputeOptions& opts = {});

// Optimum of the uniform pseudo-flows LP; 0 by convention on edgeless graphs.
Rational uniform_flows_value(const Graph& g, const Scale& dual_sc,
                             const ComputeOptions& opts = {});

// Raw optimum of the mean LP plus both candidate normalizations (they
// differ by a factor of |V|); only raw/|E| == uniform optimum is asserted
// anywhere.
struct MeanPropertyAReport {
    Rational raw;
    Rational per_edge_vertex; // raw / (|E| |V|)
    Rational per_edge;        // raw / |E|
};

MeanPropertyAReport mean_property_a_value(const Graph& g, const Scale& sc,
                                          const ComputeOptions& opts = {});

Rational cube_epsilon_formula(int n, int s);
FlowCertificate cube_dual_certificate(int n, int s); // needs 0 <= s < n

// w_m = C(n, m+1)(m+1) / sum_{l<=m} C(n, l); nonincreasing in m is what makes
// the symmetric cube flow fit under uniform capacities.
Rational cube_layer_capacity(int n, int m);
bool cube_layer_inequality_holds(int n, int s);

Rational girth_epsilon_formula(int d, int s); // d >= 3
Rational girth_cheeger_formula(int d, int s); // d >= 3
Rational tree_isoperimetric_number(int d, long n, long k);

std::vector<Rational> epsilon_sequence(const std::vector<Graph>& family, int radius,
                                       const ComputeOptions& opts = {});

struct SubgraphCheckResult {
    bool holds = false;
    Rational eps_h_doubled; // epsilon of h at scale 2s
    Rational eps_g;         // epsilon of g at scale s
};

SubgraphCheckResult subgraph_scale_inequality_check(const Graph& h, const Graph& g,
                                                    const std::vector<int>& embedding, int s,
                                                    const ComputeOptions& opts = {});

} // namespace propa
