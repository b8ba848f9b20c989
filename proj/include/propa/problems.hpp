#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "propa/certificates.hpp"
#include "propa/graph.hpp"
#include "propa/lp.hpp"
#include "propa/scale.hpp"

namespace propa {

enum class ProblemKind {
    Measures,
    PseudoFlows,
    Isoperimetric,
    Partition,
    UniformFlows,
    MeanPropertyA,
    SingleColumn,
    IsoperimetricDual,
};

// Bijection between semantic variable names and LP columns.
class VarMap {
  public:
    int add(const std::string& name);
    int at(const std::string& name) const;
    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int idx) const { return names_[idx]; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

struct IndexedLp {
    LinearProgram lp;
    VarMap vars;
    ProblemKind kind;
};

// Semantic variable names shared by builders and tests.
std::string xvar_name(int i, int j);          // x_i_j
std::string evar_name(int u, int v, int k);   // e_u_v_k
std::string eta_name(int i);                  // eta_i
std::string kappa_name(int u, int v);         // kappa_u_v
std::string phi_name(int k, int u, int v);    // phi_k_eu_v
std::string fvar_name(int j, int i);          // f_j_i
std::string pevar_name(int i, int k, int j);  // e_i_ek_j
std::string nvar_name(int i, int j);          // n_i_j
std::string cvar_name(int u, int v, int k);   // c_eu_v_k
std::string single_phi_name(int u, int v);    // phi_eu_v
std::string zvar_name(int t);                 // z_t

struct SubsetEntry {
    std::vector<int> vertices; // sorted
    int container = 0;         // index of a dual-scale set containing it
    bool connected = false;
};

struct SubsetFamily {
    std::vector<SubsetEntry> subsets;
};

IndexedLp build_measures(const Graph& g, const Scale& sc);
IndexedLp build_pseudo_flows(const Graph& g, const Scale& dual_sc);
IndexedLp build_isoperimetric(const Graph& g, const Scale& dual_sc, const SubsetFamily& family);
IndexedLp build_partition(const Graph& g, const Scale& sc);
IndexedLp build_uniform_flows(const Graph& g, const Scale& dual_sc); // throws if |E| = 0
IndexedLp build_mean_property_a(const Graph& g, const Scale& sc);
IndexedLp build_single_column(const Graph& g, const std::vector<int>& s_set);

// The exponential-size dual with one z_T per subset. Only ever solved on a
// restricted family; refuses more than `max_subsets` columns.
IndexedLp build_isoperimetric_dual(const Graph& g, const Scale& dual_sc,
                                   const SubsetFamily& family, int max_subsets = 4096);

// All nonempty subsets (or connected induced subsets) of every dual-scale
// set, deduplicated. Throws EnumerationCapError when a set exceeds cap.
SubsetFamily enumerate_subsets(const Graph& g, const Scale& dual_sc, bool connected_only,
                               int cap = 20);

// The family of all singletons; seed rows for lazy constraint generation.
SubsetFamily singleton_family(const Graph& g);

// Builds the flat partition psi_T(i) = z_T for i in T from an admissible
// solution of the isoperimetric-dual problem; validates the constraints.
PartitionFamily flat_partition_from_z(const Graph& g, const Scale& dual_sc,
                                      const std::vector<std::pair<std::vector<int>, Rational>>& z,
                                      const Rational& a);

} // namespace propa
