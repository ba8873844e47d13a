#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bipromethee/bicapacity.hpp"
#include "bipromethee/lp.hpp"
#include "bipromethee/model.hpp"

namespace bipromethee {

// Alternatives and criteria are referenced by index in problem order.

struct LocalPreference { std::size_t a, b; };
struct LocalIndifference { std::size_t a, b; };
struct P1Preference { std::size_t a, b; };
struct P1Indifference { std::size_t a, b; };
struct P2Preference { std::size_t a, b; };
struct P2Indifference { std::size_t a, b; };
/// Ch^B(P^B(a,b)) exceeds Ch^B(P^B(c,d)).
struct IntensityPreference { std::size_t a, b, c, d; };
struct IntensityIndifference { std::size_t a, b, c, d; };
struct CriterionMoreImportant { std::size_t j, k; };
struct CriterionEquallyImportant { std::size_t j, k; };

enum class InteractionKind { Synergy, Redundancy, None };
struct InteractionSign { std::size_t j, k; InteractionKind sign; };
/// |a_jk| > |a_pq|; both pairs need a declared sign other than None.
struct InteractionStronger { std::size_t j, k, p, q; };
struct InteractionEqual { std::size_t j, k, p, q; };

enum class OppositionMode {
    /// With `pivot` in favour, opponent `greater` weighs more than opponent `lesser`:
    /// a+_{pivot|greater} < a+_{pivot|lesser}.
    VaryOpponent,
    /// Opponent `pivot` weighs more against `greater` than against `lesser`:
    /// a+_{greater|pivot} < a+_{lesser|pivot}.
    VaryHolder,
};
struct OpposingPowerGreater { OppositionMode mode; std::size_t pivot, greater, lesser; };

using PreferenceStatement =
    std::variant<LocalPreference, LocalIndifference, P1Preference, P1Indifference, P2Preference,
                 P2Indifference, IntensityPreference, IntensityIndifference,
                 CriterionMoreImportant, CriterionEquallyImportant, InteractionSign,
                 InteractionStronger, InteractionEqual, OpposingPowerGreater>;

/// Declared interaction signs keyed by (min(j,k), max(j,k)).
using InteractionSigns = std::map<std::pair<std::size_t, std::size_t>, InteractionKind>;

InteractionSigns declared_interaction_signs(const std::vector<PreferenceStatement>& statements);

/// Throws ValidationError when indices are out of range or pairs degenerate.
void validate_statement(const PreferenceStatement& s, std::size_t m, std::size_t n);

std::string describe(const PreferenceStatement& s);

/// Linear expression over LP variables.
using LinearExpr = std::map<VariableRef, double>;

// Choquet and flow expressions under the shared-coefficient parametrization:
// a_j and a_jk are common to mu+ and mu-, a+_{j|k} and a-_{j|k} stay separate.
LinearExpr choquet_positive_expr(std::span<const double> x);
LinearExpr choquet_negative_expr(std::span<const double> x);
LinearExpr choquet_net_expr(std::span<const double> x);
LinearExpr flow_positive_expr(const BipolarPreferenceMatrix& pb, std::size_t a);
LinearExpr flow_negative_expr(const BipolarPreferenceMatrix& pb, std::size_t a);
LinearExpr flow_net_expr(const BipolarPreferenceMatrix& pb, std::size_t a);

/// lhs - rhs as a single expression.
LinearExpr difference(const LinearExpr& lhs, const LinearExpr& rhs);
/// Builds `expr (+ eps_coef * eps) rel rhs`.
LinearConstraint make_row(const LinearExpr& expr, Relation rel, double rhs, std::string label,
                          double eps_coef = 0.0);

/// Rows contributed by a single statement. `signs` supplies the declared
/// interaction signs needed by InteractionStronger / InteractionEqual.
std::vector<LinearConstraint> statement_to_constraints(const PreferenceStatement& s,
                                                       const BipolarPreferenceMatrix& pb,
                                                       const InteractionSigns& signs = {},
                                                       const std::string& label = "statement");

enum class ModelLevel { Classical, SymmetricChoquet, Bipolar, Inconsistent };

std::string to_string(ModelLevel level);

/// Statement rows plus sign, symmetry, boundary and monotonicity rows, plus
/// the pins of the requested level. Objective: maximize epsilon (<= 1).
LPModel build_base_model(const std::vector<PreferenceStatement>& statements,
                         const BipolarPreferenceMatrix& pb, ModelLevel level);

/// Reads the 2-additive coefficients off an LP assignment.
TwoAdditiveBicapacity parameters_from_solution(const LPSolution& solution, std::size_t n);

struct StepTrace {
    ModelLevel level;
    bool ran = false;
    LPStatus status = LPStatus::Infeasible;
    double epsilon = 0.0;  ///< meaningful when status is Optimal
    bool passed = false;
};

struct ElicitationOptions {
    double eps_threshold = kDefaultEpsThreshold;
};

struct ElicitationResult {
    ModelLevel level = ModelLevel::Inconsistent;
    double epsilon = 0.0;
    std::optional<TwoAdditiveBicapacity> parameters;
    std::vector<StepTrace> steps;
    /// Minimal conflicting statement subsets (indices into the input).
    std::vector<std::vector<std::size_t>> infeasibility_hint;
    /// Statements whose sole removal restores consistency.
    std::vector<std::size_t> removal_candidates;
};

/// Tries the classical, symmetric Choquet and bipolar models in that order
/// and stops at the first one whose optimal epsilon exceeds the threshold.
ElicitationResult constructive_elicitation(const std::vector<PreferenceStatement>& statements,
                                           const BipolarPreferenceMatrix& pb,
                                           const ElicitationOptions& options = {});

}  // namespace bipromethee
