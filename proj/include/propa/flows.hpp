#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "propa/certificates.hpp"
#include "propa/graph.hpp"
#include "propa/scale.hpp"

namespace propa {

struct MaxFlowResult {
    bool feasible = false;
    // Signed flow per edge id (positive along canonical u -> v); only edges
    // touching the demand set appear. Present when feasible.
    std::map<int, Rational> flow;
    // Demand-set subset violating its weighted isoperimetric inequality.
    // Present when infeasible.
    std::vector<int> witness;
    // One violated subset per unsaturated demand vertex (deduplicated);
    // witness is always among them. Used to separate several inequalities
    // from a single flow computation.
    std::vector<std::vector<int>> all_witnesses;
};

// Decides whether a pseudo-flow with supply >= eta on demand_set exists under
// capacities kappa. Standard reduction to max-flow: a source feeds vertices
// outside the demand set (and negative demands), positive demands feed the
// sink, each edge becomes two opposite arcs of capacity kappa. Shortest
// augmenting paths (BFS), so the number of augmentations is O(VE) regardless
// of the rational capacity values.
MaxFlowResult max_flow_feasible(const Graph& g, const std::vector<Rational>& kappa,
                                const std::vector<int>& demand_set,
                                const std::vector<Rational>& eta);

struct LiftViolation {
    int focus = 0; // the k whose flow problem failed
    std::vector<int> subset;
};

struct LiftResult {
    std::optional<FlowCertificate> certificate;
    std::optional<LiftViolation> violation;
};

// Constructive half of the lift-and-project equivalence: any (eta, kappa)
// satisfying all weighted isoperimetric inequalities lifts to a full flow
// certificate, one max-flow per focus vertex. jobs > 1 runs the independent
// per-focus problems in parallel.
LiftResult lift_and_project(const Graph& g, const Scale& dual_sc,
                            const std::vector<Rational>& eta, const std::vector<Rational>& kappa,
                            int jobs = 1);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        ok = false;
        violations.push_back(std::move(what));
    }
};

VerifyReport verify_measure_family(const Graph& g, const Scale& sc, const MeasureFamily& mf);
VerifyReport verify_flow_certificate(const Graph& g, const Scale& dual_sc,
                                     const FlowCertificate& fc);
VerifyReport verify_partition_family(const Graph& g, const Scale& dual_sc,
                                     const PartitionFamily& pf);

// sum(eta) <= epsilon for any valid pair on matching (graph, scale).
bool weak_duality_check(const MeasureFamily& mf, const FlowCertificate& fc);

// Level-set slicing; the result is flat with exactly the same per-edge
// variation as the input.
PartitionFamily flatten_partition(const PartitionFamily& pf);

// Transposes x_{i,j} = f_{j,i}; the variation value carries over and the
// supports move between a scale and its dual.
PartitionFamily partition_from_measures(const MeasureFamily& mf);
MeasureFamily measures_from_partition(const PartitionFamily& pf, int vertex_count);

// Exact max per-edge variation of a family (used to tighten claimed values).
Rational measure_family_variation(const Graph& g, const MeasureFamily& mf);
Rational partition_variation(const Graph& g, const PartitionFamily& pf);

} // namespace propa
