#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace bipromethee {

/// Optimal epsilon must exceed this for "strictly positive".
inline constexpr double kDefaultEpsThreshold = 1e-6;
/// Upper bound placed on the epsilon variable.
inline constexpr double kEpsilonCap = 1.0;
/// Constraint residual accepted on an optimal solution.
inline constexpr double kFeasibilityTolerance = 1e-7;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { AJplus, AJminus, APairPlus, APairMinus, AOppPlus, AOppMinus, Epsilon, Auxiliary };

struct VariableRef {
    VarKind kind = VarKind::Epsilon;
    int j = -1;
    int k = -1;
    std::string tag;

    static VariableRef a_plus(std::size_t j) { return {VarKind::AJplus, int(j), -1, {}}; }
    static VariableRef a_minus(std::size_t j) { return {VarKind::AJminus, int(j), -1, {}}; }
    /// Pair variables are normalized to j < k.
    static VariableRef pair_plus(std::size_t j, std::size_t k);
    static VariableRef pair_minus(std::size_t j, std::size_t k);
    static VariableRef opp_plus(std::size_t j, std::size_t k) { return {VarKind::AOppPlus, int(j), int(k), {}}; }
    static VariableRef opp_minus(std::size_t j, std::size_t k) { return {VarKind::AOppMinus, int(j), int(k), {}}; }
    static VariableRef epsilon() { return {VarKind::Epsilon, -1, -1, {}}; }
    static VariableRef auxiliary(std::string tag) { return {VarKind::Auxiliary, -1, -1, std::move(tag)}; }

    std::string name() const;

    friend auto operator<=>(const VariableRef&, const VariableRef&) = default;
    friend bool operator==(const VariableRef&, const VariableRef&) = default;
};

struct Bounds {
    double lower = -kInfinity;
    double upper = kInfinity;
};

struct Term {
    VariableRef var;
    double coef = 0.0;
};

enum class Relation { LE, GE, EQ };

struct LinearConstraint {
    std::vector<Term> terms;
    Relation relation = Relation::GE;
    double rhs = 0.0;
    std::string label;

    /// Merges duplicate variables (summing coefficients) and drops zero terms.
    /// Terms end up sorted by variable.
    void canonicalize();
    /// Left-hand side evaluated at `values`.
    double lhs(const std::map<VariableRef, double>& values) const;
    /// Amount by which the constraint is violated at `values` (0 if satisfied).
    double violation(const std::map<VariableRef, double>& values) const;
};

struct Variable {
    VariableRef ref;
    Bounds bounds;
};

/// Maximize one designated variable subject to linear rows and variable bounds.
class LPModel {
public:
    /// Adds a variable; re-adding an existing one tightens nothing and throws.
    void add_variable(const VariableRef& ref, Bounds bounds);
    bool has_variable(const VariableRef& ref) const { return index_.count(ref) != 0; }
    std::size_t index_of(const VariableRef& ref) const;

    /// Canonicalizes and appends; every referenced variable must exist.
    void add_constraint(LinearConstraint c);

    void set_objective(const VariableRef& ref);
    const VariableRef& objective() const { return objective_; }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }

    /// Throws ValidationError when malformed (missing objective, bad bounds, NaN).
    void validate() const;

private:
    std::vector<Variable> variables_;
    std::map<VariableRef, std::size_t> index_;
    std::vector<LinearConstraint> constraints_;
    VariableRef objective_;
    bool has_objective_ = false;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LPStatus s);

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    double objective_value = 0.0;
    std::map<VariableRef, double> assignment;

    double value(const VariableRef& ref) const;
};

/// Seam for plugging in a different LP engine.
class LPSolver {
public:
    virtual ~LPSolver() = default;
    virtual LPSolution solve(const LPModel& model) const = 0;
};

/// Dense two-phase primal simplex with Bland's rule.
class SimplexSolver final : public LPSolver {
public:
    LPSolution solve(const LPModel& model) const override;
};

LPSolution solve(const LPModel& model);

/// True iff the model is solved to optimality with objective > eps_threshold.
bool check_feasible_positive(const LPModel& model, double eps_threshold = kDefaultEpsThreshold);

/// Human-readable dump, one labelled constraint per line.
std::string to_lp_text(const LPModel& model);

}  // namespace bipromethee
