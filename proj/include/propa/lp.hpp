#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propa/rational.hpp"

namespace propa {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };

struct LinearRow {
    std::vector<std::pair<int, Rational>> terms; // sorted by variable, merged
    Relation rel = Relation::LessEq;
    Rational rhs;
};

struct VariableBounds {
    std::optional<Rational> lower; // nullopt = unbounded below
    std::optional<Rational> upper; // nullopt = unbounded above
};

// Sparse exact LP in inequality form. Variables default to [0, +inf).
class LinearProgram {
  public:
    int add_variable(std::string name);
    int add_variable(std::string name, std::optional<Rational> lower,
                     std::optional<Rational> upper);
    int add_free_variable(std::string name) {
        return add_variable(std::move(name), std::nullopt, std::nullopt);
    }

    void set_sense(Sense s) { sense_ = s; }
    void set_objective(int var, Rational coef);
    int add_row(std::vector<std::pair<int, Rational>> terms, Relation rel, Rational rhs);

    Sense sense() const { return sense_; }
    int num_vars() const { return static_cast<int>(bounds_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    const std::vector<LinearRow>& rows() const { return rows_; }
    const VariableBounds& bounds(int v) const { return bounds_[v]; }
    const std::string& variable_name(int v) const { return names_[v]; }
    const std::vector<std::pair<int, Rational>>& objective() const { return objective_; }

    Rational evaluate_objective(const std::vector<Rational>& assignment) const;

    // Text dump for external cross-checking; coefficients stay exact "p/q".
    void dump(std::ostream& out) const;

  private:
    Sense sense_ = Sense::Minimize;
    std::vector<std::string> names_;
    std::vector<VariableBounds> bounds_;
    std::vector<std::pair<int, Rational>> objective_; // sorted by variable
    std::vector<LinearRow> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> assignment; // empty unless Optimal
    Rational objective_value;
    long pivot_count = 0;
    // One multiplier per original row when requested (want_duals): for a
    // minimization, duals of <= rows are <= 0 and of >= rows are >= 0, so
    // that sum(y_i * rhs_i) equals the optimum whenever every variable bound
    // that is active is the plain x >= 0 one. Senses are flipped back for
    // maximization problems.
    std::vector<Rational> row_duals;
    // Sense-independent encoding of the final basis, one entry per row:
    // structural column c >= 0, slack of row i = -(i+1), artificial of row
    // i = -(rows+i+1). Feed it back through SimplexOptions.warm_basis when
    // re-solving the same rows with extra columns.
    std::vector<int> basis_encoding;
};

enum class PivotRule {
    Bland,        // lowest-index entering column; guaranteed anti-cycling
    DantzigBland, // steepest entering column, falls back to Bland on stalls
};

struct SimplexOptions {
    PivotRule rule = PivotRule::DantzigBland;
    long max_columns = 0; // 0 = default ceiling (env PROPA_MAX_LP_COLS or 5000)
    bool want_duals = false;
    // Basis from a previous solve whose rows match (columns may have been
    // appended since). Skips phase 1; ignored when unusable.
    std::vector<int> warm_basis;
};

// Columns the dense tableau would need (structural after bound handling,
// plus slacks and artificials). Checked against the ceiling before solving.
long standard_form_columns(const LinearProgram& lp);
long default_size_ceiling();

// Exact two-phase primal simplex. Deterministic: pivot ties break on the
// lowest variable index, so identical inputs give bit-identical solutions.
LpSolution solve(const LinearProgram& lp, const SimplexOptions& opts = {});

// True iff the assignment satisfies every row and bound exactly.
// Throws on length mismatch.
bool check_feasible(const LinearProgram& lp, const std::vector<Rational>& assignment);

} // namespace propa
