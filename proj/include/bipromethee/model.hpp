#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bipromethee {

enum class Direction { Gain, Cost };
enum class Shape { Linear, Usual };

struct CriterionSpec {
    std::string id;
    Direction direction = Direction::Gain;
    double q = 0.0;  ///< indifference threshold
    double p = 1.0;  ///< preference threshold
    Shape shape = Shape::Linear;

    /// Throws ConfigError when p <= q or q < 0 on a Linear criterion.
    void validate() const;
};

/// Immutable multi-criteria problem: m alternatives evaluated on n criteria.
class DecisionProblem {
public:
    /// Validates every invariant (m >= 2, n >= 1, unique ids, finite
    /// evaluations, well-formed criteria) and throws ConfigError otherwise.
    DecisionProblem(std::vector<CriterionSpec> criteria,
                    std::vector<std::string> alternatives,
                    std::vector<std::vector<double>> evaluations);

    std::size_t criterion_count() const { return criteria_.size(); }
    std::size_t alternative_count() const { return alternatives_.size(); }

    const std::vector<CriterionSpec>& criteria() const { return criteria_; }
    const std::vector<std::string>& alternatives() const { return alternatives_; }

    double evaluation(std::size_t alternative, std::size_t criterion) const {
        return evaluations_[alternative * criteria_.size() + criterion];
    }

    /// Index of an alternative id; throws LookupError when unknown.
    std::size_t alternative_index(const std::string& id) const;
    /// Index of a criterion id; throws LookupError when unknown.
    std::size_t criterion_index(const std::string& id) const;

private:
    std::vector<CriterionSpec> criteria_;
    std::vector<std::string> alternatives_;
    std::vector<double> evaluations_;  // row-major m x n
};

/// Degree P_j in [0,1] to which a difference `d` expresses a preference.
/// For Cost criteria the caller passes the already sign-flipped difference.
double partial_preference(double d, const CriterionSpec& spec);

/// P_j(a,b) - P_j(b,a) for every criterion, in criterion order.
std::vector<double> bipolar_preference_vector(const DecisionProblem& problem,
                                              std::size_t a, std::size_t b);
std::vector<double> bipolar_preference_vector(const DecisionProblem& problem,
                                              const std::string& a, const std::string& b);

/// All pairwise bipolar preference vectors. Entry (b,a) is the exact negation
/// of entry (a,b); the diagonal is zero.
class BipolarPreferenceMatrix {
public:
    explicit BipolarPreferenceMatrix(const DecisionProblem& problem);

    std::size_t alternative_count() const { return m_; }
    std::size_t criterion_count() const { return n_; }

    std::span<const double> at(std::size_t a, std::size_t b) const {
        return {values_.data() + (a * m_ + b) * n_, n_};
    }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<double> values_;
};

}  // namespace bipromethee
