#include "bipromethee/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "bipromethee/errors.hpp"

namespace bipromethee {

void CriterionSpec::validate() const {
    if (id.empty()) throw ConfigError("criterion id must not be empty");
    if (shape == Shape::Usual) return;
    if (!std::isfinite(q) || !std::isfinite(p))
        throw ConfigError("criterion '" + id + "': thresholds must be finite");
    if (q < 0.0) throw ConfigError("criterion '" + id + "': q must be >= 0");
    if (p <= q) throw ConfigError("criterion '" + id + "': linear shape requires p > q");
}

DecisionProblem::DecisionProblem(std::vector<CriterionSpec> criteria,
                                 std::vector<std::string> alternatives,
                                 std::vector<std::vector<double>> evaluations)
    : criteria_(std::move(criteria)), alternatives_(std::move(alternatives)) {
    if (criteria_.empty()) throw ConfigError("at least one criterion is required");
    if (alternatives_.size() < 2) throw ConfigError("at least two alternatives are required");

    std::unordered_set<std::string> seen;
    for (const auto& c : criteria_) {
        c.validate();
        if (!seen.insert(c.id).second) throw ConfigError("duplicate criterion id '" + c.id + "'");
    }
    seen.clear();
    for (const auto& a : alternatives_) {
        if (a.empty()) throw ConfigError("alternative id must not be empty");
        if (!seen.insert(a).second) throw ConfigError("duplicate alternative id '" + a + "'");
    }

    if (evaluations.size() != alternatives_.size())
        throw ConfigError("evaluations must have one row per alternative");
    evaluations_.reserve(alternatives_.size() * criteria_.size());
    for (std::size_t i = 0; i < evaluations.size(); ++i) {
        if (evaluations[i].size() != criteria_.size())
            throw ConfigError("evaluation row for '" + alternatives_[i] +
                              "' must have one value per criterion");
        for (double v : evaluations[i]) {
            if (!std::isfinite(v))
                throw ConfigError("evaluation for '" + alternatives_[i] + "' is not finite");
            evaluations_.push_back(v);
        }
    }
}

std::size_t DecisionProblem::alternative_index(const std::string& id) const {
    auto it = std::find(alternatives_.begin(), alternatives_.end(), id);
    if (it == alternatives_.end()) throw LookupError("unknown alternative '" + id + "'");
    return static_cast<std::size_t>(it - alternatives_.begin());
}

std::size_t DecisionProblem::criterion_index(const std::string& id) const {
    auto it = std::find_if(criteria_.begin(), criteria_.end(),
                           [&](const CriterionSpec& c) { return c.id == id; });
    if (it == criteria_.end()) throw LookupError("unknown criterion '" + id + "'");
    return static_cast<std::size_t>(it - criteria_.begin());
}

double partial_preference(double d, const CriterionSpec& spec) {
    if (spec.shape == Shape::Usual) return d > 0.0 ? 1.0 : 0.0;
    spec.validate();
    if (d <= spec.q) return 0.0;
    if (d >= spec.p) return 1.0;
    return (d - spec.q) / (spec.p - spec.q);
}

namespace {

double signed_difference(const DecisionProblem& problem, std::size_t a, std::size_t b,
                         std::size_t j) {
    double d = problem.evaluation(a, j) - problem.evaluation(b, j);
    return problem.criteria()[j].direction == Direction::Cost ? -d : d;
}

void check_alternative(const DecisionProblem& problem, std::size_t a) {
    if (a >= problem.alternative_count())
        throw LookupError("alternative index " + std::to_string(a) + " out of range");
}

}  // namespace

std::vector<double> bipolar_preference_vector(const DecisionProblem& problem,
                                              std::size_t a, std::size_t b) {
    check_alternative(problem, a);
    check_alternative(problem, b);
    std::vector<double> out(problem.criterion_count());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const auto& spec = problem.criteria()[j];
        double d = signed_difference(problem, a, b, j);
        out[j] = partial_preference(d, spec) - partial_preference(-d, spec);
    }
    return out;
}

std::vector<double> bipolar_preference_vector(const DecisionProblem& problem,
                                              const std::string& a, const std::string& b) {
    return bipolar_preference_vector(problem, problem.alternative_index(a),
                                     problem.alternative_index(b));
}

BipolarPreferenceMatrix::BipolarPreferenceMatrix(const DecisionProblem& problem)
    : m_(problem.alternative_count()),
      n_(problem.criterion_count()),
      values_(m_ * m_ * n_, 0.0) {
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t b = a + 1; b < m_; ++b) {
            auto v = bipolar_preference_vector(problem, a, b);
            for (std::size_t j = 0; j < n_; ++j) {
                values_[(a * m_ + b) * n_ + j] = v[j];
                values_[(b * m_ + a) * n_ + j] = -v[j];
            }
        }
    }
}

}  // namespace bipromethee
