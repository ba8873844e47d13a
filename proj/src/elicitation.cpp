#include "bipromethee/elicitation.hpp"

#include <algorithm>
#include <sstream>

#include "bipromethee/errors.hpp"

namespace bipromethee {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::pair<std::size_t, std::size_t> pair_key(std::size_t j, std::size_t k) {
    return {std::min(j, k), std::max(j, k)};
}

void add(LinearExpr& e, const VariableRef& v, double c) {
    if (c != 0.0) e[v] += c;
}

void add_scaled(LinearExpr& into, const LinearExpr& from, double scale) {
    for (const auto& [v, c] : from) into[v] += scale * c;
}

}  // namespace

InteractionSigns declared_interaction_signs(const std::vector<PreferenceStatement>& statements) {
    InteractionSigns signs;
    for (const auto& s : statements)
        if (const auto* is = std::get_if<InteractionSign>(&s)) signs[pair_key(is->j, is->k)] = is->sign;
    return signs;
}

void validate_statement(const PreferenceStatement& s, std::size_t m, std::size_t n) {
    auto alt = [m](std::size_t i) {
        if (i >= m) throw ValidationError("alternative index " + std::to_string(i) + " out of range");
    };
    auto crit = [n](std::size_t i) {
        if (i >= n) throw ValidationError("criterion index " + std::to_string(i) + " out of range");
    };
    auto distinct_pair = [](std::size_t x, std::size_t y, const char* what) {
        if (x == y) throw ValidationError(std::string(what) + " must name two different items");
    };
    std::visit(overloaded{
                   [&](const auto& p) requires requires { p.a; p.b; p.c; } {
                       alt(p.a); alt(p.b); alt(p.c); alt(p.d);
                       distinct_pair(p.a, p.b, "intensity statement");
                       distinct_pair(p.c, p.d, "intensity statement");
                   },
                   [&](const auto& p) requires(requires { p.a; p.b; } && !requires { p.c; }) {
                       alt(p.a); alt(p.b);
                       distinct_pair(p.a, p.b, "pairwise statement");
                   },
                   [&](const CriterionMoreImportant& p) { crit(p.j); crit(p.k); distinct_pair(p.j, p.k, "importance statement"); },
                   [&](const CriterionEquallyImportant& p) { crit(p.j); crit(p.k); distinct_pair(p.j, p.k, "importance statement"); },
                   [&](const InteractionSign& p) { crit(p.j); crit(p.k); distinct_pair(p.j, p.k, "interaction sign"); },
                   [&](const auto& p) requires requires { p.p; p.q; } {
                       crit(p.j); crit(p.k); crit(p.p); crit(p.q);
                       distinct_pair(p.j, p.k, "interaction pair");
                       distinct_pair(p.p, p.q, "interaction pair");
                   },
                   [&](const OpposingPowerGreater& p) {
                       crit(p.pivot); crit(p.greater); crit(p.lesser);
                       if (p.pivot == p.greater || p.pivot == p.lesser || p.greater == p.lesser)
                           throw ValidationError("opposing power statement needs three distinct criteria");
                   },
               },
               s);
}

std::string describe(const PreferenceStatement& s) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const LocalPreference& p) { os << "local " << p.a << " P " << p.b; },
                   [&](const LocalIndifference& p) { os << "local " << p.a << " I " << p.b; },
                   [&](const P1Preference& p) { os << "promethee1 " << p.a << " P " << p.b; },
                   [&](const P1Indifference& p) { os << "promethee1 " << p.a << " I " << p.b; },
                   [&](const P2Preference& p) { os << "promethee2 " << p.a << " P " << p.b; },
                   [&](const P2Indifference& p) { os << "promethee2 " << p.a << " I " << p.b; },
                   [&](const IntensityPreference& p) { os << "(" << p.a << "," << p.b << ") P (" << p.c << "," << p.d << ")"; },
                   [&](const IntensityIndifference& p) { os << "(" << p.a << "," << p.b << ") I (" << p.c << "," << p.d << ")"; },
                   [&](const CriterionMoreImportant& p) { os << "criterion " << p.j << " > " << p.k; },
                   [&](const CriterionEquallyImportant& p) { os << "criterion " << p.j << " = " << p.k; },
                   [&](const InteractionSign& p) {
                       os << "interaction {" << p.j << "," << p.k << "} "
                          << (p.sign == InteractionKind::Synergy ? "synergy"
                              : p.sign == InteractionKind::Redundancy ? "redundancy" : "none");
                   },
                   [&](const InteractionStronger& p) { os << "|a_" << p.j << p.k << "| > |a_" << p.p << p.q << "|"; },
                   [&](const InteractionEqual& p) { os << "|a_" << p.j << p.k << "| = |a_" << p.p << p.q << "|"; },
                   [&](const OpposingPowerGreater& p) {
                       if (p.mode == OppositionMode::VaryOpponent)
                           os << "a+_" << p.pivot << "|" << p.greater << " < a+_" << p.pivot << "|" << p.lesser;
                       else
                           os << "a+_" << p.greater << "|" << p.pivot << " < a+_" << p.lesser << "|" << p.pivot;
                   },
               },
               s);
    return os.str();
}

LinearExpr choquet_positive_expr(std::span<const double> x) {
    const std::size_t n = x.size();
    LinearExpr e;
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] <= 0.0) continue;
        add(e, VariableRef::a_plus(j), x[j]);
        for (std::size_t k = j + 1; k < n; ++k)
            if (x[k] > 0.0) add(e, VariableRef::pair_plus(j, k), std::min(x[j], x[k]));
        for (std::size_t k = 0; k < n; ++k)
            if (x[k] < 0.0) add(e, VariableRef::opp_plus(j, k), std::min(x[j], -x[k]));
    }
    return e;
}

LinearExpr choquet_negative_expr(std::span<const double> x) {
    const std::size_t n = x.size();
    LinearExpr e;
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] < 0.0) {
            add(e, VariableRef::a_plus(j), -x[j]);
            for (std::size_t k = j + 1; k < n; ++k)
                if (x[k] < 0.0) add(e, VariableRef::pair_plus(j, k), std::min(-x[j], -x[k]));
        } else if (x[j] > 0.0) {
            for (std::size_t k = 0; k < n; ++k)
                if (x[k] < 0.0) add(e, VariableRef::opp_minus(j, k), std::min(x[j], -x[k]));
        }
    }
    return e;
}

LinearExpr choquet_net_expr(std::span<const double> x) {
    return difference(choquet_positive_expr(x), choquet_negative_expr(x));
}

namespace {

template <class F>
LinearExpr flow_expr(const BipolarPreferenceMatrix& pb, std::size_t a, F part) {
    const std::size_t m = pb.alternative_count();
    LinearExpr e;
    const double scale = 1.0 / static_cast<double>(m - 1);
    for (std::size_t o = 0; o < m; ++o)
        if (o != a) add_scaled(e, part(pb.at(a, o)), scale);
    return e;
}

}  // namespace

LinearExpr flow_positive_expr(const BipolarPreferenceMatrix& pb, std::size_t a) {
    return flow_expr(pb, a, choquet_positive_expr);
}
LinearExpr flow_negative_expr(const BipolarPreferenceMatrix& pb, std::size_t a) {
    return flow_expr(pb, a, choquet_negative_expr);
}
LinearExpr flow_net_expr(const BipolarPreferenceMatrix& pb, std::size_t a) {
    return flow_expr(pb, a, choquet_net_expr);
}

LinearExpr difference(const LinearExpr& lhs, const LinearExpr& rhs) {
    LinearExpr e = lhs;
    add_scaled(e, rhs, -1.0);
    return e;
}

LinearConstraint make_row(const LinearExpr& expr, Relation rel, double rhs, std::string label,
                          double eps_coef) {
    LinearConstraint c;
    c.terms.reserve(expr.size() + 1);
    for (const auto& [v, coef] : expr) c.terms.push_back({v, coef});
    if (eps_coef != 0.0) c.terms.push_back({VariableRef::epsilon(), eps_coef});
    c.relation = rel;
    c.rhs = rhs;
    c.label = std::move(label);
    c.canonicalize();
    return c;
}

std::vector<LinearConstraint> statement_to_constraints(const PreferenceStatement& s,
                                                       const BipolarPreferenceMatrix& pb,
                                                       const InteractionSigns& signs,
                                                       const std::string& label) {
    validate_statement(s, pb.alternative_count(), pb.criterion_count());
    std::vector<LinearConstraint> rows;
    const std::string tag = label + ": " + describe(s);
    auto a_var = [](std::size_t j) { return LinearExpr{{VariableRef::a_plus(j), 1.0}}; };
    auto pair_var = [](std::size_t j, std::size_t k, double c = 1.0) {
        return LinearExpr{{VariableRef::pair_plus(j, k), c}};
    };
    auto sign_of = [&](std::size_t j, std::size_t k) {
        auto it = signs.find(pair_key(j, k));
        if (it == signs.end() || it->second == InteractionKind::None)
            throw LinearizationError("interaction magnitude comparison needs a declared synergy or "
                                     "redundancy for pair {" + std::to_string(j) + "," +
                                     std::to_string(k) + "}");
        return it->second;
    };
    // +1 for synergy (|a| = a), -1 for redundancy (|a| = -a)
    auto abs_sign = [&](std::size_t j, std::size_t k) {
        return sign_of(j, k) == InteractionKind::Synergy ? 1.0 : -1.0;
    };

    std::visit(
        overloaded{
            [&](const LocalPreference& p) {
                rows.push_back(make_row(choquet_net_expr(pb.at(p.a, p.b)), Relation::GE, 0.0, tag, -1.0));
            },
            [&](const LocalIndifference& p) {
                rows.push_back(make_row(choquet_net_expr(pb.at(p.a, p.b)), Relation::EQ, 0.0, tag));
            },
            [&](const P1Preference& p) {
                rows.push_back(make_row(difference(flow_positive_expr(pb, p.a), flow_positive_expr(pb, p.b)),
                                        Relation::GE, 0.0, tag + " [phi+]"));
                rows.push_back(make_row(difference(flow_negative_expr(pb, p.a), flow_negative_expr(pb, p.b)),
                                        Relation::LE, 0.0, tag + " [phi-]"));
                rows.push_back(make_row(difference(flow_net_expr(pb, p.a), flow_net_expr(pb, p.b)),
                                        Relation::GE, 0.0, tag + " [phi]", -1.0));
            },
            [&](const P1Indifference& p) {
                rows.push_back(make_row(difference(flow_positive_expr(pb, p.a), flow_positive_expr(pb, p.b)),
                                        Relation::EQ, 0.0, tag + " [phi+]"));
                rows.push_back(make_row(difference(flow_negative_expr(pb, p.a), flow_negative_expr(pb, p.b)),
                                        Relation::EQ, 0.0, tag + " [phi-]"));
            },
            [&](const P2Preference& p) {
                rows.push_back(make_row(difference(flow_net_expr(pb, p.a), flow_net_expr(pb, p.b)),
                                        Relation::GE, 0.0, tag, -1.0));
            },
            [&](const P2Indifference& p) {
                rows.push_back(make_row(difference(flow_net_expr(pb, p.a), flow_net_expr(pb, p.b)),
                                        Relation::EQ, 0.0, tag));
            },
            [&](const IntensityPreference& p) {
                rows.push_back(make_row(difference(choquet_net_expr(pb.at(p.a, p.b)),
                                                   choquet_net_expr(pb.at(p.c, p.d))),
                                        Relation::GE, 0.0, tag, -1.0));
            },
            [&](const IntensityIndifference& p) {
                rows.push_back(make_row(difference(choquet_net_expr(pb.at(p.a, p.b)),
                                                   choquet_net_expr(pb.at(p.c, p.d))),
                                        Relation::EQ, 0.0, tag));
            },
            [&](const CriterionMoreImportant& p) {
                rows.push_back(make_row(difference(a_var(p.j), a_var(p.k)), Relation::GE, 0.0, tag, -1.0));
            },
            [&](const CriterionEquallyImportant& p) {
                rows.push_back(make_row(difference(a_var(p.j), a_var(p.k)), Relation::EQ, 0.0, tag));
            },
            [&](const InteractionSign& p) {
                switch (p.sign) {
                    case InteractionKind::Synergy:
                        rows.push_back(make_row(pair_var(p.j, p.k), Relation::GE, 0.0, tag, -1.0));
                        break;
                    case InteractionKind::Redundancy:
                        rows.push_back(make_row(pair_var(p.j, p.k, -1.0), Relation::GE, 0.0, tag, -1.0));
                        break;
                    case InteractionKind::None:
                        rows.push_back(make_row(pair_var(p.j, p.k), Relation::EQ, 0.0, tag));
                        break;
                }
            },
            [&](const InteractionStronger& p) {
                auto e = pair_var(p.j, p.k, abs_sign(p.j, p.k));
                add(e, VariableRef::pair_plus(p.p, p.q), -abs_sign(p.p, p.q));
                rows.push_back(make_row(e, Relation::GE, 0.0, tag, -1.0));
            },
            [&](const InteractionEqual& p) {
                auto e = pair_var(p.j, p.k, abs_sign(p.j, p.k));
                add(e, VariableRef::pair_plus(p.p, p.q), -abs_sign(p.p, p.q));
                rows.push_back(make_row(e, Relation::EQ, 0.0, tag));
            },
            [&](const OpposingPowerGreater& p) {
                LinearExpr e;
                if (p.mode == OppositionMode::VaryOpponent) {
                    add(e, VariableRef::opp_plus(p.pivot, p.lesser), 1.0);
                    add(e, VariableRef::opp_plus(p.pivot, p.greater), -1.0);
                } else {
                    add(e, VariableRef::opp_plus(p.lesser, p.pivot), 1.0);
                    add(e, VariableRef::opp_plus(p.greater, p.pivot), -1.0);
                }
                rows.push_back(make_row(e, Relation::GE, 0.0, tag, -1.0));
            },
        },
        s);
    return rows;
}

std::string to_string(ModelLevel level) {
    switch (level) {
        case ModelLevel::Classical: return "classical";
        case ModelLevel::SymmetricChoquet: return "symmetric_choquet";
        case ModelLevel::Bipolar: return "bipolar";
        case ModelLevel::Inconsistent: return "inconsistent";
    }
    return "inconsistent";
}

namespace {

void add_structure(LPModel& model, std::size_t n, ModelLevel level) {
    for (std::size_t j = 0; j < n; ++j) model.add_variable(VariableRef::a_plus(j), {0.0, kInfinity});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            model.add_variable(VariableRef::pair_plus(j, k), {-kInfinity, kInfinity});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (j != k) model.add_variable(VariableRef::opp_plus(j, k), {-kInfinity, 0.0});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (j != k) model.add_variable(VariableRef::opp_minus(j, k), {-kInfinity, 0.0});
    model.add_variable(VariableRef::epsilon(), {-kInfinity, kEpsilonCap});
    model.set_objective(VariableRef::epsilon());

    // symmetry a+_{j|k} = a-_{k|j}
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (j != k)
                model.add_constraint(make_row({{VariableRef::opp_plus(j, k), 1.0}, {VariableRef::opp_minus(k, j), -1.0}},
                                              Relation::EQ, 0.0,
                                              "symmetry " + std::to_string(j) + "|" + std::to_string(k)));

    LinearExpr boundary;
    for (std::size_t j = 0; j < n; ++j) {
        boundary[VariableRef::a_plus(j)] = 1.0;
        for (std::size_t k = j + 1; k < n; ++k) boundary[VariableRef::pair_plus(j, k)] = 1.0;
    }
    model.add_constraint(make_row(boundary, Relation::EQ, 1.0, "boundary"));

    // monotonicity over disjoint (C, D) of J \ {j}
    const std::size_t per_j = signed_coalition_count(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t code = 0; code < per_j; ++code) {
            LinearExpr plus{{VariableRef::a_plus(j), 1.0}};
            LinearExpr minus{{VariableRef::a_plus(j), 1.0}};
            std::size_t c = code;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                const std::size_t digit = c % 3;
                c /= 3;
                if (digit == 1) {  // k in C
                    plus[VariableRef::pair_plus(j, k)] += 1.0;
                    minus[VariableRef::opp_minus(k, j)] += 1.0;
                } else if (digit == 2) {  // k in D
                    plus[VariableRef::opp_plus(j, k)] += 1.0;
                    minus[VariableRef::pair_plus(j, k)] += 1.0;
                }
            }
            const auto suffix = std::to_string(j) + "#" + std::to_string(code);
            model.add_constraint(make_row(plus, Relation::GE, 0.0, "monotonicity+ " + suffix));
            model.add_constraint(make_row(minus, Relation::GE, 0.0, "monotonicity- " + suffix));
        }
    }

    if (level == ModelLevel::Classical) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                model.add_constraint(make_row({{VariableRef::pair_plus(j, k), 1.0}}, Relation::EQ, 0.0,
                                              "classical pin a_" + std::to_string(j) + "," + std::to_string(k)));
    }
    if (level == ModelLevel::Classical || level == ModelLevel::SymmetricChoquet) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (j != k) {
                    const auto t = std::to_string(j) + "|" + std::to_string(k);
                    model.add_constraint(make_row({{VariableRef::opp_plus(j, k), 1.0}}, Relation::EQ, 0.0, "pin a+_" + t));
                    model.add_constraint(make_row({{VariableRef::opp_minus(j, k), 1.0}}, Relation::EQ, 0.0, "pin a-_" + t));
                }
    }
}

}  // namespace

LPModel build_base_model(const std::vector<PreferenceStatement>& statements,
                         const BipolarPreferenceMatrix& pb, ModelLevel level) {
    const std::size_t n = pb.criterion_count();
    if (n > kMaxEnumeratedCriteria)
        throw CapacityError("elicitation is limited to " + std::to_string(kMaxEnumeratedCriteria) +
                            " criteria");
    if (level == ModelLevel::Inconsistent) throw ConfigError("no model for the inconsistent level");
    LPModel model;
    add_structure(model, n, level);
    const auto signs = declared_interaction_signs(statements);
    for (std::size_t i = 0; i < statements.size(); ++i)
        for (auto& row : statement_to_constraints(statements[i], pb, signs, "statement " + std::to_string(i)))
            model.add_constraint(std::move(row));
    return model;
}

TwoAdditiveBicapacity parameters_from_solution(const LPSolution& solution, std::size_t n) {
    TwoAdditiveBicapacity b(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = solution.value(VariableRef::a_plus(j));
        b.set_a_plus(j, a);
        b.set_a_minus(j, a);
        for (std::size_t k = j + 1; k < n; ++k) {
            const double v = solution.value(VariableRef::pair_plus(j, k));
            b.set_pair_plus(j, k, v);
            b.set_pair_minus(j, k, v);
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            b.set_opp_plus(j, k, solution.value(VariableRef::opp_plus(j, k)));
            b.set_opp_minus(j, k, solution.value(VariableRef::opp_minus(j, k)));
        }
    }
    return b;
}

namespace {

// Optimal epsilon of the bipolar model for a statement subset, or nullopt
// when infeasible or not translatable.
std::optional<double> bipolar_epsilon(const std::vector<PreferenceStatement>& statements,
                                      const BipolarPreferenceMatrix& pb) {
    try {
        const auto sol = solve(build_base_model(statements, pb, ModelLevel::Bipolar));
        if (sol.status != LPStatus::Optimal) return std::nullopt;
        return sol.objective_value;
    } catch (const LinearizationError&) {
        return std::nullopt;
    }
}

bool consistent(const std::vector<PreferenceStatement>& statements, const BipolarPreferenceMatrix& pb,
                double threshold) {
    const auto eps = bipolar_epsilon(statements, pb);
    return eps && *eps > threshold;
}

std::vector<PreferenceStatement> pick(const std::vector<PreferenceStatement>& statements,
                                      const std::vector<std::size_t>& idx) {
    std::vector<PreferenceStatement> out;
    for (auto i : idx) out.push_back(statements[i]);
    return out;
}

// Deletion filter: drop every statement whose absence keeps the rest inconsistent.
std::vector<std::size_t> minimal_conflict(const std::vector<PreferenceStatement>& statements,
                                          const BipolarPreferenceMatrix& pb, double threshold) {
    std::vector<std::size_t> core(statements.size());
    for (std::size_t i = 0; i < core.size(); ++i) core[i] = i;
    for (std::size_t pos = 0; pos < core.size();) {
        auto trial = core;
        trial.erase(trial.begin() + std::ptrdiff_t(pos));
        auto subset = pick(statements, trial);
        bool translatable = true;
        try {
            (void)build_base_model(subset, pb, ModelLevel::Bipolar);
        } catch (const LinearizationError&) {
            translatable = false;
        }
        if (translatable && !consistent(subset, pb, threshold))
            core = std::move(trial);
        else
            ++pos;
    }
    return core;
}

}  // namespace

namespace {

// Pinned coefficients come back from the simplex with round-off residue.
void clear_pinned(TwoAdditiveBicapacity& b, ModelLevel level) {
    if (level == ModelLevel::Bipolar) return;
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k) continue;
            b.set_opp_plus(j, k, 0.0);
            b.set_opp_minus(j, k, 0.0);
            if (level == ModelLevel::Classical && j < k) {
                b.set_pair_plus(j, k, 0.0);
                b.set_pair_minus(j, k, 0.0);
            }
        }
}

}  // namespace

ElicitationResult constructive_elicitation(const std::vector<PreferenceStatement>& statements,
                                           const BipolarPreferenceMatrix& pb,
                                           const ElicitationOptions& options) {
    ElicitationResult result;
    const std::size_t n = pb.criterion_count();
    for (auto level : {ModelLevel::Classical, ModelLevel::SymmetricChoquet, ModelLevel::Bipolar})
        result.steps.push_back({level});

    for (auto& step : result.steps) {
        const auto solution = solve(build_base_model(statements, pb, step.level));
        step.ran = true;
        step.status = solution.status;
        step.epsilon = solution.status == LPStatus::Optimal ? solution.objective_value : 0.0;
        step.passed = solution.status == LPStatus::Optimal && solution.objective_value > options.eps_threshold;
        if (step.passed) {
            result.level = step.level;
            result.epsilon = solution.objective_value;
            result.parameters = parameters_from_solution(solution, n);
            clear_pinned(*result.parameters, step.level);
            return result;
        }
    }
    result.level = ModelLevel::Inconsistent;
    const auto& last = result.steps.back();
    result.epsilon = last.epsilon;
    if (!consistent({}, pb, options.eps_threshold)) return result;
    result.infeasibility_hint.push_back(minimal_conflict(statements, pb, options.eps_threshold));
    for (std::size_t i = 0; i < statements.size(); ++i) {
        auto reduced = statements;
        reduced.erase(reduced.begin() + std::ptrdiff_t(i));
        if (consistent(reduced, pb, options.eps_threshold)) result.removal_candidates.push_back(i);
    }
    return result;
}

}  // namespace bipromethee
