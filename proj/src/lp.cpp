#include "propa/lp.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>

#include "propa/errors.hpp"

namespace propa {

int LinearProgram::add_variable(std::string name) {
    return add_variable(std::move(name), Rational(0), std::nullopt);
}

int LinearProgram::add_variable(std::string name, std::optional<Rational> lower,
                                std::optional<Rational> upper) {
    names_.push_back(std::move(name));
    bounds_.push_back({std::move(lower), std::move(upper)});
    return static_cast<int>(bounds_.size()) - 1;
}

void LinearProgram::set_objective(int var, Rational coef) {
    auto it = std::lower_bound(objective_.begin(), objective_.end(), var,
                               [](const auto& t, int v) { return t.first < v; });
    if (it != objective_.end() && it->first == var)
        it->second = std::move(coef);
    else
        objective_.insert(it, {var, std::move(coef)});
}

int LinearProgram::add_row(std::vector<std::pair<int, Rational>> terms, Relation rel,
                           Rational rhs) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Rational>> merged;
    for (auto& [v, c] : terms) {
        if (v < 0 || v >= num_vars()) throw Error("LinearProgram: bad variable index in row");
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += c;
        else
            merged.emplace_back(v, std::move(c));
    }
    std::erase_if(merged, [](const auto& t) { return t.second.is_zero(); });
    rows_.push_back({std::move(merged), rel, std::move(rhs)});
    return static_cast<int>(rows_.size()) - 1;
}

Rational LinearProgram::evaluate_objective(const std::vector<Rational>& assignment) const {
    Rational v;
    for (const auto& [var, coef] : objective_) v.add_mul(coef, assignment[var]);
    return v;
}

void LinearProgram::dump(std::ostream& out) const {
    out << (sense_ == Sense::Minimize ? "Minimize\n" : "Maximize\n");
    out << " obj:";
    for (const auto& [var, coef] : objective_) out << " + " << coef << " " << names_[var];
    out << "\nSubject To\n";
    for (int r = 0; r < num_rows(); ++r) {
        out << " c" << r << ":";
        for (const auto& [var, coef] : rows_[r].terms) out << " + " << coef << " " << names_[var];
        switch (rows_[r].rel) {
            case Relation::LessEq: out << " <= "; break;
            case Relation::Equal: out << " = "; break;
            case Relation::GreaterEq: out << " >= "; break;
        }
        out << rows_[r].rhs << "\n";
    }
    out << "Bounds\n";
    for (int v = 0; v < num_vars(); ++v) {
        const auto& b = bounds_[v];
        if (!b.lower && !b.upper)
            out << " " << names_[v] << " free\n";
        else {
            out << " ";
            if (b.lower)
                out << *b.lower << " <= ";
            else
                out << "-inf <= ";
            out << names_[v];
            if (b.upper) out << " <= " << *b.upper;
            out << "\n";
        }
    }
    out << "End\n";
}

long default_size_ceiling() {
    if (const char* env = std::getenv("PROPA_MAX_LP_COLS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 5000;
}

namespace {

// A structural column of the standard-form problem and how it maps back to
// an original variable: x = shift + sign * y.
struct ColumnOrigin {
    int var;
    Rational shift;
    int sign; // +1 or -1
};

struct StandardRow {
    LinearRow row;
    bool negated = false; // multiplied by -1 to make the rhs nonnegative
};

struct StandardForm {
    // rows: terms over standard columns, rhs >= 0 after sign normalization.
    std::vector<StandardRow> rows;
    std::vector<std::pair<int, Rational>> objective; // min sense
    std::vector<ColumnOrigin> columns;
    std::vector<std::vector<int>> var_columns; // original var -> column ids
    bool infeasible_bounds = false;
    int num_columns() const { return static_cast<int>(columns.size()); }
};

StandardForm to_standard_form(const LinearProgram& lp) {
    StandardForm sf;
    sf.var_columns.assign(lp.num_vars(), {});
    std::vector<Rational> row_shift_terms; // accumulated per row later

    for (int v = 0; v < lp.num_vars(); ++v) {
        const auto& b = lp.bounds(v);
        if (b.lower && b.upper && *b.upper < *b.lower) {
            sf.infeasible_bounds = true;
            return sf;
        }
        if (b.lower) {
            sf.columns.push_back({v, *b.lower, +1});
            sf.var_columns[v].push_back(sf.num_columns() - 1);
        } else if (b.upper) {
            // x = upper - y
            sf.columns.push_back({v, *b.upper, -1});
            sf.var_columns[v].push_back(sf.num_columns() - 1);
        } else {
            // free: x = y+ - y-
            sf.columns.push_back({v, Rational(0), +1});
            sf.var_columns[v].push_back(sf.num_columns() - 1);
            sf.columns.push_back({v, Rational(0), -1});
            sf.var_columns[v].push_back(sf.num_columns() - 1);
        }
    }

    auto substitute = [&](const std::vector<std::pair<int, Rational>>& terms,
                          std::vector<std::pair<int, Rational>>& out, Rational& constant) {
        out.clear();
        constant = Rational(0);
        for (const auto& [var, coef] : terms) {
            for (int col : sf.var_columns[var]) {
                const auto& origin = sf.columns[col];
                Rational c = coef;
                if (origin.sign < 0) c = -c;
                if (!c.is_zero()) out.emplace_back(col, std::move(c));
            }
            constant.add_mul(coef, sf.columns[sf.var_columns[var][0]].shift);
        }
    };

    auto push_row = [&sf](LinearRow row) {
        StandardRow standard;
        if (row.rhs.sign() < 0) {
            row.rhs = -row.rhs;
            for (auto& [c, coef] : row.terms) coef = -coef;
            row.rel = row.rel == Relation::LessEq    ? Relation::GreaterEq
                      : row.rel == Relation::GreaterEq ? Relation::LessEq
                                                       : Relation::Equal;
            standard.negated = true;
        }
        standard.row = std::move(row);
        sf.rows.push_back(std::move(standard));
    };

    std::vector<std::pair<int, Rational>> terms;
    Rational constant;
    for (const auto& row : lp.rows()) {
        substitute(row.terms, terms, constant);
        push_row({terms, row.rel, row.rhs - constant});
    }
    // Upper bounds for lower-bounded variables become explicit rows.
    for (int v = 0; v < lp.num_vars(); ++v) {
        const auto& b = lp.bounds(v);
        if (b.lower && b.upper) {
            int col = sf.var_columns[v][0];
            push_row({{{col, Rational(1)}}, Relation::LessEq, *b.upper - *b.lower});
        }
    }

    substitute(lp.objective(), sf.objective, constant);
    if (lp.sense() == Sense::Maximize)
        for (auto& [col, coef] : sf.objective) coef = -coef;
    return sf;
}

long count_standard_columns(const StandardForm& sf) {
    long cols = sf.num_columns();
    for (const auto& standard : sf.rows) {
        if (standard.row.rel == Relation::LessEq)
            cols += 1; // slack
        else if (standard.row.rel == Relation::GreaterEq)
            cols += 2; // surplus + artificial
        else
            cols += 1; // artificial
    }
    return cols;
}

class SimplexTableau {
  public:
    SimplexTableau(const StandardForm& sf, PivotRule rule) : rule_(rule) {
        m_ = static_cast<int>(sf.rows.size());
        structural_ = sf.num_columns();

        int slacks = 0, artificials = 0;
        std::vector<int> slack_col(m_, -1), art_col(m_, -1);
        for (int i = 0; i < m_; ++i) {
            Relation rel = sf.rows[i].row.rel;
            if (rel == Relation::LessEq || rel == Relation::GreaterEq)
                slack_col[i] = structural_ + slacks++;
        }
        first_artificial_ = structural_ + slacks;
        for (int i = 0; i < m_; ++i)
            if (sf.rows[i].row.rel != Relation::LessEq)
                art_col[i] = first_artificial_ + artificials++;

        cols_ = first_artificial_ + artificials; // + rhs cell appended
        rhs_ = cols_;
        column_rows_.assign(cols_ - structural_, -1);
        column_signs_.assign(cols_ - structural_, 1);

        tableau_.assign(m_ + 2, std::vector<Rational>(cols_ + 1));
        basis_.assign(m_, -1);
        // Row m_ is the phase-2 (real) cost row, row m_+1 the phase-1 row.
        for (int i = 0; i < m_; ++i) {
            auto& t = tableau_[i];
            const LinearRow& row = sf.rows[i].row;
            for (const auto& [c, coef] : row.terms) t[c] = coef;
            t[rhs_] = row.rhs;
            if (row.rel == Relation::LessEq) {
                t[slack_col[i]] = Rational(1);
                column_rows_[slack_col[i] - structural_] = i;
                basis_[i] = slack_col[i];
            } else {
                if (row.rel == Relation::GreaterEq) {
                    t[slack_col[i]] = Rational(-1);
                    column_rows_[slack_col[i] - structural_] = i;
                    column_signs_[slack_col[i] - structural_] = -1;
                }
                t[art_col[i]] = Rational(1);
                column_rows_[art_col[i] - structural_] = i;
                basis_[i] = art_col[i];
            }
        }
        for (const auto& [c, coef] : sf.objective) tableau_[m_][c] = coef;
        // Phase-1 reduced costs: c_j - sum over artificial-basic rows.
        auto& p1 = tableau_[m_ + 1];
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] >= first_artificial_) {
                for (int c = 0; c <= rhs_; ++c) p1[c] -= tableau_[i][c];
            }
        }
    }

    // Pivot straight to a previously optimal basis of a column-subset of
    // this LP. The rows are unchanged, so the basis matrix is nonsingular
    // and its solution is the same feasible point. Returns false when the
    // encoding does not map onto this tableau.
    bool crash(const std::vector<int>& encoding) {
        if (static_cast<int>(encoding.size()) != m_) return false;
        std::vector<int> target(m_);
        for (int i = 0; i < m_; ++i) {
            int code = encoding[i];
            if (code >= 0) {
                if (code >= structural_) return false;
                target[i] = code;
            } else if (code >= -m_) {
                int row = -code - 1;
                // the slack of `row`
                int col = -1;
                for (int c = structural_; c < first_artificial_; ++c)
                    if (column_rows_[c - structural_] == row) col = c;
                if (col < 0) return false;
                target[i] = col;
            } else {
                int row = -code - m_ - 1;
                int col = -1;
                for (int c = first_artificial_; c < cols_; ++c)
                    if (column_rows_[c - structural_] == row) col = c;
                if (col < 0) return false;
                target[i] = col;
            }
        }
        // The basis is a set; the row pairing from the previous solve need
        // not admit direct pivoting, so pick any (row, column) match.
        std::vector<char> row_done(m_, 0);
        std::vector<char> col_used(cols_, 0);
        for (int i = 0; i < m_; ++i) {
            // columns already basic here keep their row for free
            for (int j = 0; j < m_; ++j) {
                if (row_done[j] || col_used[basis_[j]]) continue;
                if (std::find(target.begin(), target.end(), basis_[j]) != target.end()) {
                    row_done[j] = 1;
                    col_used[basis_[j]] = 1;
                }
            }
            break;
        }
        for (int step = 0; step < m_; ++step) {
            bool progressed = false;
            for (int i = 0; i < m_ && !progressed; ++i) {
                if (row_done[i]) continue;
                for (int c : target) {
                    if (col_used[c] || tableau_[i][c].is_zero()) continue;
                    pivot(i, c);
                    row_done[i] = 1;
                    col_used[c] = 1;
                    progressed = true;
                    break;
                }
            }
            if (!progressed) break;
        }
        for (int i = 0; i < m_; ++i)
            if (!row_done[i]) return false;
        for (int i = 0; i < m_; ++i)
            if (tableau_[i][rhs_].sign() < 0) return false;
        return true;
    }

    std::vector<int> encode_basis() const {
        std::vector<int> out(m_);
        for (int i = 0; i < m_; ++i) {
            int col = basis_[i];
            if (col < structural_)
                out[i] = col;
            else if (col < first_artificial_)
                out[i] = -(column_rows_[col - structural_] + 1);
            else
                out[i] = -(column_rows_[col - structural_] + m_ + 1);
        }
        return out;
    }

    // Returns false when phase 1 ends with positive infeasibility.
    bool phase1() {
        if (first_artificial_ == cols_) return true; // no artificials at all
        run(m_ + 1);
        if (tableau_[m_ + 1][rhs_].sign() != 0) return false;
        // Drive basic artificials out where the row has structural support.
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < first_artificial_) continue;
            int enter = -1;
            for (int c = 0; c < first_artificial_; ++c) {
                if (!tableau_[i][c].is_zero()) {
                    enter = c;
                    break;
                }
            }
            if (enter >= 0) pivot(i, enter);
            // else: redundant row; the artificial stays basic at zero and the
            // row is inert (all structural entries are zero).
        }
        return true;
    }

    // Returns false on unbounded.
    bool phase2() { return run(m_); }

    std::vector<Rational> structural_values() const {
        std::vector<Rational> y(structural_);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < structural_) y[basis_[i]] = tableau_[i][rhs_];
        return y;
    }

    long pivots() const { return pivots_; }

    const std::vector<int>& basis() const { return basis_; }
    // For non-structural column c: the row owning it and its matrix sign.
    int column_row(int c) const { return column_rows_[c - structural_]; }
    int column_sign(int c) const { return column_signs_[c - structural_]; }
    int structural_columns() const { return structural_; }

  private:
    // Minimize using cost row `cost`; false iff unbounded.
    bool run(int cost) {
        bool bland = rule_ == PivotRule::Bland;
        int degenerate_streak = 0;
        constexpr int kStallLimit = 40;
        while (true) {
            int enter = select_entering(cost, bland);
            if (enter < 0) return true;
            int leave = select_leaving(enter);
            if (leave < 0) return false;
            bool degenerate = tableau_[leave][rhs_].is_zero();
            pivot(leave, enter);
            if (rule_ == PivotRule::DantzigBland) {
                if (degenerate) {
                    if (++degenerate_streak >= kStallLimit) bland = true;
                } else {
                    degenerate_streak = 0;
                    bland = false;
                }
            }
        }
    }

    int select_entering(int cost, bool bland) const {
        const auto& row = tableau_[cost];
        int best = -1;
        for (int c = 0; c < first_artificial_; ++c) {
            if (row[c].sign() >= 0) continue;
            if (bland) return c;
            if (best < 0 || row[c] < row[best]) best = c;
        }
        return best;
    }

    int select_leaving(int enter) const {
        int best = -1;
        Rational best_ratio;
        for (int i = 0; i < m_; ++i) {
            const Rational& a = tableau_[i][enter];
            if (a.sign() <= 0) continue;
            Rational ratio = tableau_[i][rhs_] / a;
            if (best < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis_[i] < basis_[best])) {
                best = i;
                best_ratio = std::move(ratio);
            }
        }
        return best;
    }

    void pivot(int row, int col) {
        ++pivots_;
        auto& prow = tableau_[row];
        const Rational inv = prow[col].reciprocal();
        std::vector<int> nz;
        nz.reserve(cols_ / 4);
        for (int c = 0; c <= rhs_; ++c) {
            if (prow[c].is_zero()) continue;
            prow[c] *= inv;
            nz.push_back(c);
        }
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == row) continue;
            auto& t = tableau_[i];
            if (t[col].is_zero()) continue;
            const Rational factor = t[col];
            for (int c : nz) t[c].sub_mul(factor, prow[c]);
            t[col] = Rational(0); // clear residue from exact cancellation
        }
        basis_[row] = col;
    }

    PivotRule rule_;
    int m_ = 0, structural_ = 0, cols_ = 0, rhs_ = 0, first_artificial_ = 0;
    std::vector<std::vector<Rational>> tableau_;
    std::vector<int> basis_;
    std::vector<int> column_rows_, column_signs_;
    long pivots_ = 0;
};

// Exact solve of B^T y = c_B over the final basis; y are the standard-form
// row multipliers.
std::vector<Rational> basis_duals(const StandardForm& sf, const SimplexTableau& tab) {
    int m = static_cast<int>(sf.rows.size());
    int structural = tab.structural_columns();
    std::vector<std::vector<Rational>> mt(m, std::vector<Rational>(m));
    std::vector<Rational> rhs(m);
    for (int i = 0; i < m; ++i) {
        int col = tab.basis()[i];
        // Row i of B^T = the constraint-matrix column of basis variable i.
        if (col < structural) {
            for (int r = 0; r < m; ++r) {
                for (const auto& [c, coef] : sf.rows[r].row.terms)
                    if (c == col) mt[i][r] = coef;
            }
            for (const auto& [v, coef] : sf.objective)
                if (v == col) rhs[i] = coef;
        } else {
            mt[i][tab.column_row(col)] = Rational(tab.column_sign(col));
            // slack and artificial costs are zero in phase 2
        }
    }
    // Gaussian elimination, exact.
    std::vector<Rational> y(m);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int r = col; r < m; ++r)
            if (!mt[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw Error("basis_duals: singular basis");
        std::swap(mt[col], mt[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        Rational inv = mt[col][col].reciprocal();
        for (int c = col; c < m; ++c) mt[col][c] *= inv;
        rhs[col] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == col || mt[r][col].is_zero()) continue;
            Rational factor = mt[r][col];
            for (int c = col; c < m; ++c) mt[r][c].sub_mul(factor, mt[col][c]);
            rhs[r].sub_mul(factor, rhs[col]);
        }
    }
    return rhs;
}

} // namespace

long standard_form_columns(const LinearProgram& lp) {
    StandardForm sf = to_standard_form(lp);
    if (sf.infeasible_bounds) return sf.num_columns();
    return count_standard_columns(sf);
}

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opts) {
    LpSolution sol;
    StandardForm sf = to_standard_form(lp);
    if (sf.infeasible_bounds) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    long ceiling = opts.max_columns > 0 ? opts.max_columns : default_size_ceiling();
    long needed = count_standard_columns(sf);
    if (needed > ceiling)
        throw SizeCeilingError("LP needs " + std::to_string(needed) +
                                   " standard-form columns, ceiling is " + std::to_string(ceiling),
                               needed, ceiling);

    SimplexTableau tab(sf, opts.rule);
    bool warm = !opts.warm_basis.empty() && tab.crash(opts.warm_basis);
    if (!warm) {
        if (!opts.warm_basis.empty()) {
            // unusable warm basis: rebuild and fall back to the cold start
            tab = SimplexTableau(sf, opts.rule);
        }
        if (!tab.phase1()) {
            sol.status = LpStatus::Infeasible;
            sol.pivot_count = tab.pivots();
            return sol;
        }
    }
    if (!tab.phase2()) {
        sol.status = LpStatus::Unbounded;
        sol.pivot_count = tab.pivots();
        return sol;
    }

    if (opts.want_duals) {
        std::vector<Rational> standard_duals = basis_duals(sf, tab);
        sol.row_duals.resize(lp.num_rows());
        for (int r = 0; r < lp.num_rows(); ++r) {
            Rational value = standard_duals[r];
            if (sf.rows[r].negated) value = -value;
            if (lp.sense() == Sense::Maximize) value = -value;
            sol.row_duals[r] = std::move(value);
        }
    }

    std::vector<Rational> y = tab.structural_values();
    sol.assignment.assign(lp.num_vars(), Rational(0));
    std::vector<bool> seen(lp.num_vars(), false);
    for (int col = 0; col < sf.num_columns(); ++col) {
        const auto& origin = sf.columns[col];
        if (!seen[origin.var]) {
            sol.assignment[origin.var] = origin.shift;
            seen[origin.var] = true;
        }
        if (origin.sign > 0)
            sol.assignment[origin.var] += y[col];
        else
            sol.assignment[origin.var] -= y[col];
    }
    sol.status = LpStatus::Optimal;
    sol.objective_value = lp.evaluate_objective(sol.assignment);
    sol.pivot_count = tab.pivots();
    sol.basis_encoding = tab.encode_basis();
    return sol;
}

bool check_feasible(const LinearProgram& lp, const std::vector<Rational>& assignment) {
    if (static_cast<int>(assignment.size()) != lp.num_vars())
        throw Error("check_feasible: assignment length mismatch");
    for (int v = 0; v < lp.num_vars(); ++v) {
        const auto& b = lp.bounds(v);
        if (b.lower && assignment[v] < *b.lower) return false;
        if (b.upper && assignment[v] > *b.upper) return false;
    }
    for (const auto& row : lp.rows()) {
        Rational lhs;
        for (const auto& [var, coef] : row.terms) lhs.add_mul(coef, assignment[var]);
        switch (row.rel) {
            case Relation::LessEq:
                if (lhs > row.rhs) return false;
                break;
            case Relation::Equal:
                if (lhs != row.rhs) return false;
                break;
            case Relation::GreaterEq:
                if (lhs < row.rhs) return false;
                break;
        }
    }
    return true;
}

} // namespace propa
