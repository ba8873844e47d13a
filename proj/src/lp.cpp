#include "bipromethee/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bipromethee/errors.hpp"

namespace bipromethee {

VariableRef VariableRef::pair_plus(std::size_t j, std::size_t k) {
    if (j > k) std::swap(j, k);
    return {VarKind::APairPlus, int(j), int(k), {}};
}

VariableRef VariableRef::pair_minus(std::size_t j, std::size_t k) {
    if (j > k) std::swap(j, k);
    return {VarKind::APairMinus, int(j), int(k), {}};
}

std::string VariableRef::name() const {
    const auto jj = std::to_string(j);
    const auto kk = std::to_string(k);
    switch (kind) {
        case VarKind::AJplus: return "a+_" + jj;
        case VarKind::AJminus: return "a-_" + jj;
        case VarKind::APairPlus: return "a+_" + jj + "," + kk;
        case VarKind::APairMinus: return "a-_" + jj + "," + kk;
        case VarKind::AOppPlus: return "a+_" + jj + "|" + kk;
        case VarKind::AOppMinus: return "a-_" + jj + "|" + kk;
        case VarKind::Epsilon: return "eps";
        case VarKind::Auxiliary: return "aux_" + tag;
    }
    return "?";
}

void LinearConstraint::canonicalize() {
    std::map<VariableRef, double> merged;
    for (const auto& t : terms) merged[t.var] += t.coef;
    terms.clear();
    for (const auto& [var, coef] : merged)
        if (coef != 0.0) terms.push_back({var, coef});
}

double LinearConstraint::lhs(const std::map<VariableRef, double>& values) const {
    double s = 0.0;
    for (const auto& t : terms) {
        auto it = values.find(t.var);
        if (it != values.end()) s += t.coef * it->second;
    }
    return s;
}

double LinearConstraint::violation(const std::map<VariableRef, double>& values) const {
    const double l = lhs(values);
    switch (relation) {
        case Relation::LE: return std::max(0.0, l - rhs);
        case Relation::GE: return std::max(0.0, rhs - l);
        case Relation::EQ: return std::abs(l - rhs);
    }
    return 0.0;
}

void LPModel::add_variable(const VariableRef& ref, Bounds bounds) {
    if (index_.count(ref)) throw ValidationError("duplicate variable " + ref.name());
    index_.emplace(ref, variables_.size());
    variables_.push_back({ref, bounds});
}

std::size_t LPModel::index_of(const VariableRef& ref) const {
    auto it = index_.find(ref);
    if (it == index_.end()) throw ValidationError("unknown variable " + ref.name());
    return it->second;
}

void LPModel::add_constraint(LinearConstraint c) {
    c.canonicalize();
    for (const auto& t : c.terms) {
        if (!index_.count(t.var))
            throw ValidationError("constraint '" + c.label + "' uses undeclared variable " + t.var.name());
    }
    constraints_.push_back(std::move(c));
}

void LPModel::set_objective(const VariableRef& ref) {
    objective_ = ref;
    has_objective_ = true;
}

void LPModel::validate() const {
    if (!has_objective_ || !index_.count(objective_))
        throw ValidationError("LP model has no declared objective variable");
    for (const auto& v : variables_) {
        if (std::isnan(v.bounds.lower) || std::isnan(v.bounds.upper) || v.bounds.lower > v.bounds.upper)
            throw ValidationError("invalid bounds on " + v.ref.name());
        if (v.bounds.lower == kInfinity || v.bounds.upper == -kInfinity)
            throw ValidationError("empty bound range on " + v.ref.name());
    }
    for (const auto& c : constraints_) {
        if (!std::isfinite(c.rhs)) throw ValidationError("non-finite rhs in '" + c.label + "'");
        for (const auto& t : c.terms)
            if (!std::isfinite(t.coef)) throw ValidationError("non-finite coefficient in '" + c.label + "'");
    }
}

std::string to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "infeasible";
}

double LPSolution::value(const VariableRef& ref) const {
    auto it = assignment.find(ref);
    return it == assignment.end() ? 0.0 : it->second;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kPhaseOneTol = 1e-9;
constexpr std::size_t kMaxIterations = 50000;

// Original variable x = offset + sign * y (+ second column with -sign when free).
struct ColumnMap {
    double offset = 0.0;
    double sign = 1.0;
    std::size_t col = 0;
    bool split = false;
    std::size_t col2 = 0;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    void drop_row(std::size_t r) {
        data_.erase(data_.begin() + std::ptrdiff_t(r * (cols_ + 1)),
                    data_.begin() + std::ptrdiff_t((r + 1) * (cols_ + 1)));
        basis_.erase(basis_.begin() + std::ptrdiff_t(r));
        --rows_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

enum class RunResult { Optimal, Unbounded, IterationLimit };

// Minimizes cost^T y over the columns flagged in `allowed`, Bland's rule.
RunResult minimize(Tableau& t, const std::vector<double>& cost, const std::vector<bool>& allowed) {
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        std::size_t entering = t.cols();
        for (std::size_t c = 0; c < t.cols(); ++c) {
            if (!allowed[c]) continue;
            double reduced = cost[c];
            for (std::size_t r = 0; r < t.rows(); ++r) reduced -= cost[t.basis()[r]] * t.at(r, c);
            if (reduced < -kPivotTol) {
                entering = c;
                break;
            }
        }
        if (entering == t.cols()) return RunResult::Optimal;

        std::size_t leaving = t.rows();
        double best = kInfinity;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double a = t.at(r, entering);
            if (a <= kPivotTol) continue;
            const double ratio = t.rhs(r) / a;
            if (ratio < best - 1e-12 ||
                (std::abs(ratio - best) <= 1e-12 && t.basis()[r] < t.basis()[leaving])) {
                best = ratio;
                leaving = r;
            }
        }
        if (leaving == t.rows()) return RunResult::Unbounded;
        t.pivot(leaving, entering);
    }
    return RunResult::IterationLimit;
}

}  // namespace

LPSolution SimplexSolver::solve(const LPModel& model) const {
    model.validate();
    const auto& vars = model.variables();
    const auto& rows_in = model.constraints();

    // Map each original variable onto nonnegative columns.
    std::vector<ColumnMap> maps(vars.size());
    std::size_t ncols = 0;
    struct BoundRow { std::size_t col; double ub; };
    std::vector<BoundRow> bound_rows;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& b = vars[i].bounds;
        auto& cm = maps[i];
        if (std::isfinite(b.lower)) {
            cm.offset = b.lower;
            cm.sign = 1.0;
            cm.col = ncols++;
            if (std::isfinite(b.upper)) bound_rows.push_back({cm.col, b.upper - b.lower});
        } else if (std::isfinite(b.upper)) {
            cm.offset = b.upper;
            cm.sign = -1.0;
            cm.col = ncols++;
        } else {
            cm.split = true;
            cm.col = ncols++;
            cm.col2 = ncols++;
        }
    }
    const std::size_t structural = ncols;

    // Dense rows in structural columns: coef . y  (rel)  rhs'
    struct DenseRow { std::vector<double> a; Relation rel; double rhs; };
    std::vector<DenseRow> rows;
    rows.reserve(rows_in.size() + bound_rows.size());
    for (const auto& c : rows_in) {
        DenseRow r{std::vector<double>(structural, 0.0), c.relation, c.rhs};
        for (const auto& t : c.terms) {
            const auto& cm = maps[model.index_of(t.var)];
            r.rhs -= t.coef * cm.offset;
            if (cm.split) {
                r.a[cm.col] += t.coef;
                r.a[cm.col2] -= t.coef;
            } else {
                r.a[cm.col] += t.coef * cm.sign;
            }
        }
        rows.push_back(std::move(r));
    }
    for (const auto& br : bound_rows) {
        DenseRow r{std::vector<double>(structural, 0.0), Relation::LE, br.ub};
        r.a[br.col] = 1.0;
        rows.push_back(std::move(r));
    }
    for (auto& r : rows) {
        if (r.rhs < 0.0) {
            for (auto& v : r.a) v = -v;
            r.rhs = -r.rhs;
            if (r.rel == Relation::LE) r.rel = Relation::GE;
            else if (r.rel == Relation::GE) r.rel = Relation::LE;
        }
    }

    // Column layout: structural | slack/surplus | artificial
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
        if (r.rel != Relation::EQ) ++n_slack;
        if (r.rel != Relation::LE) ++n_art;
    }
    const std::size_t total_cols = structural + n_slack + n_art;
    Tableau t(rows.size(), total_cols);
    std::vector<bool> is_artificial(total_cols, false);
    std::size_t slack_col = structural, art_col = structural + n_slack;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < structural; ++c) t.at(i, c) = rows[i].a[c];
        t.rhs(i) = rows[i].rhs;
        switch (rows[i].rel) {
            case Relation::LE:
                t.at(i, slack_col) = 1.0;
                t.basis()[i] = slack_col++;
                break;
            case Relation::GE:
                t.at(i, slack_col++) = -1.0;
                t.at(i, art_col) = 1.0;
                is_artificial[art_col] = true;
                t.basis()[i] = art_col++;
                break;
            case Relation::EQ:
                t.at(i, art_col) = 1.0;
                is_artificial[art_col] = true;
                t.basis()[i] = art_col++;
                break;
        }
    }

    LPSolution solution;

    // Phase 1
    std::vector<double> cost1(total_cols, 0.0);
    for (std::size_t c = 0; c < total_cols; ++c) if (is_artificial[c]) cost1[c] = 1.0;
    std::vector<bool> all(total_cols, true);
    if (n_art > 0) {
        if (minimize(t, cost1, all) != RunResult::Optimal) {
            solution.status = LPStatus::Infeasible;
            return solution;
        }
        double infeas = 0.0;
        for (std::size_t r = 0; r < t.rows(); ++r)
            if (is_artificial[t.basis()[r]]) infeas += t.rhs(r);
        if (infeas > kPhaseOneTol) {
            solution.status = LPStatus::Infeasible;
            return solution;
        }
        // Drive remaining zero-level artificials out of the basis.
        for (std::size_t r = 0; r < t.rows();) {
            if (!is_artificial[t.basis()[r]]) { ++r; continue; }
            std::size_t pc = total_cols;
            for (std::size_t c = 0; c < total_cols; ++c) {
                if (!is_artificial[c] && std::abs(t.at(r, c)) > kPivotTol) { pc = c; break; }
            }
            if (pc == total_cols) {
                t.drop_row(r);  // redundant row
            } else {
                t.pivot(r, pc);
                ++r;
            }
        }
    }

    // Phase 2: maximize the objective variable == minimize -x_obj.
    std::vector<double> cost2(total_cols, 0.0);
    const auto& om = maps[model.index_of(model.objective())];
    if (om.split) {
        cost2[om.col] = -1.0;
        cost2[om.col2] = 1.0;
    } else {
        cost2[om.col] = -om.sign;
    }
    std::vector<bool> allowed(total_cols, true);
    for (std::size_t c = 0; c < total_cols; ++c) if (is_artificial[c]) allowed[c] = false;
    const auto run = minimize(t, cost2, allowed);
    if (run == RunResult::Unbounded) {
        solution.status = LPStatus::Unbounded;
        return solution;
    }
    if (run == RunResult::IterationLimit) {
        throw Error("simplex iteration limit reached");
    }

    std::vector<double> y(total_cols, 0.0);
    for (std::size_t r = 0; r < t.rows(); ++r) y[t.basis()[r]] = t.rhs(r);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& cm = maps[i];
        double x = cm.split ? y[cm.col] - y[cm.col2] : cm.offset + cm.sign * y[cm.col];
        solution.assignment[vars[i].ref] = x;
    }
    solution.status = LPStatus::Optimal;
    solution.objective_value = solution.assignment[model.objective()];
    return solution;
}

LPSolution solve(const LPModel& model) { return SimplexSolver{}.solve(model); }

bool check_feasible_positive(const LPModel& model, double eps_threshold) {
    const auto s = solve(model);
    return s.status == LPStatus::Optimal && s.objective_value > eps_threshold;
}

std::string to_lp_text(const LPModel& model) {
    std::ostringstream os;
    os.precision(17);
    os << "maximize " << model.objective().name() << "\n";
    os << "subject to\n";
    for (const auto& c : model.constraints()) {
        os << "  [" << c.label << "] ";
        bool first = true;
        for (const auto& t : c.terms) {
            if (!first) os << (t.coef < 0 ? " - " : " + ");
            else if (t.coef < 0) os << "-";
            os << std::abs(t.coef) << " " << t.var.name();
            first = false;
        }
        if (first) os << "0";
        os << (c.relation == Relation::LE ? " <= " : c.relation == Relation::GE ? " >= " : " = ")
           << c.rhs << "\n";
    }
    os << "bounds\n";
    for (const auto& v : model.variables())
        os << "  " << v.bounds.lower << " <= " << v.ref.name() << " <= " << v.bounds.upper << "\n";
    return os.str();
}

}  // namespace bipromethee
