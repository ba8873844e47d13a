#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bipromethee {

/// Largest criterion count for which monotonicity is enumerated exactly.
inline constexpr std::size_t kMaxEnumeratedCriteria = 8;
/// Largest criterion count for which a full 3^n coalition table is built.
inline constexpr std::size_t kMaxGeneralCriteria = 12;

/// Pair (C, D) of disjoint criterion subsets, stored as bit masks.
struct SignedCoalition {
    std::uint32_t positive = 0;  ///< C
    std::uint32_t negative = 0;  ///< D

    static SignedCoalition from_indices(const std::vector<std::size_t>& positive,
                                        const std::vector<std::size_t>& negative);

    bool contains_positive(std::size_t j) const { return (positive >> j) & 1u; }
    bool contains_negative(std::size_t j) const { return (negative >> j) & 1u; }

    /// Throws LookupError on overlap or indices >= n.
    void validate(std::size_t n) const;

    friend bool operator==(const SignedCoalition&, const SignedCoalition&) = default;
};

/// Number of signed coalitions on n criteria (3^n).
std::size_t signed_coalition_count(std::size_t n);
/// Base-3 code of a coalition: digit j is 0 (absent), 1 (in C) or 2 (in D).
std::size_t coalition_code(const SignedCoalition& cd, std::size_t n);
SignedCoalition coalition_from_code(std::size_t code, std::size_t n);

/// Bicapacity given explicitly on every signed coalition (mu+ and mu- tables).
/// Only used as a reference for the 2-additive closed forms.
struct GeneralBicapacity {
    std::size_t n = 0;
    std::vector<double> table_plus;   ///< indexed by coalition_code
    std::vector<double> table_minus;

    double mu_plus(const SignedCoalition& cd) const { return table_plus[coalition_code(cd, n)]; }
    double mu_minus(const SignedCoalition& cd) const { return table_minus[coalition_code(cd, n)]; }
};

/// 2-additive decomposable bicapacity.
///
/// Pair coefficients a_jk are keyed by the unordered pair {j,k}; opposition
/// coefficients a_{j|k} by the ordered pair (j,k), j being the criterion in
/// favour and k the opposing one.
class TwoAdditiveBicapacity {
public:
    TwoAdditiveBicapacity() = default;
    explicit TwoAdditiveBicapacity(std::size_t n);

    /// Singleton weights a_j^+ = a_j^- = w_j, no interaction.
    static TwoAdditiveBicapacity additive(const std::vector<double>& weights);

    std::size_t size() const { return n_; }

    double a_plus(std::size_t j) const { return a_plus_.at(j); }
    double a_minus(std::size_t j) const { return a_minus_.at(j); }
    double pair_plus(std::size_t j, std::size_t k) const { return pair_plus_[pair_slot(j, k)]; }
    double pair_minus(std::size_t j, std::size_t k) const { return pair_minus_[pair_slot(j, k)]; }
    double opp_plus(std::size_t j, std::size_t k) const { return opp_plus_[opp_slot(j, k)]; }
    double opp_minus(std::size_t j, std::size_t k) const { return opp_minus_[opp_slot(j, k)]; }

    void set_a_plus(std::size_t j, double v) { a_plus_.at(j) = v; }
    void set_a_minus(std::size_t j, double v) { a_minus_.at(j) = v; }
    void set_pair_plus(std::size_t j, std::size_t k, double v) { pair_plus_[pair_slot(j, k)] = v; }
    void set_pair_minus(std::size_t j, std::size_t k, double v) { pair_minus_[pair_slot(j, k)] = v; }
    void set_opp_plus(std::size_t j, std::size_t k, double v) { opp_plus_[opp_slot(j, k)] = v; }
    void set_opp_minus(std::size_t j, std::size_t k, double v) { opp_minus_[opp_slot(j, k)] = v; }

    /// True when every a_jk and a_{j|k} coefficient is exactly zero.
    bool has_interactions() const;

    friend bool operator==(const TwoAdditiveBicapacity&, const TwoAdditiveBicapacity&) = default;

private:
    std::size_t pair_slot(std::size_t j, std::size_t k) const;
    std::size_t opp_slot(std::size_t j, std::size_t k) const;

    std::size_t n_ = 0;
    std::vector<double> a_plus_;
    std::vector<double> a_minus_;
    std::vector<double> pair_plus_;   // upper triangle, row-major
    std::vector<double> pair_minus_;
    std::vector<double> opp_plus_;    // n x n, diagonal unused
    std::vector<double> opp_minus_;
};

double eval_mu_plus(const TwoAdditiveBicapacity& b, const SignedCoalition& cd);
double eval_mu_minus(const TwoAdditiveBicapacity& b, const SignedCoalition& cd);
double eval_bicapacity(const TwoAdditiveBicapacity& b, const SignedCoalition& cd);
double eval_bicapacity(const GeneralBicapacity& g, const SignedCoalition& cd);

enum class ConstraintFamily { Sign, Boundary, MonotonicityPlus, MonotonicityMinus };

struct Violation {
    ConstraintFamily family;
    std::string description;
    double slack;  ///< signed amount by which the constraint is violated (< 0 for >= rows)
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks sign constraints, both boundary equalities and the two families of
/// monotonicity constraints over every disjoint (C, D) of J \ {j}.
/// Throws CapacityError for n > kMaxEnumeratedCriteria.
ValidationReport validate(const TwoAdditiveBicapacity& b, double tol = 1e-9);

/// Boundary and monotonicity check directly on coalition tables
/// (all single-element moves between signed coalitions).
ValidationReport validate(const GeneralBicapacity& g, double tol = 1e-9);

enum class SymmetryClass { None, BipolarSymmetric, StrongSymmetric };

std::string to_string(SymmetryClass s);

SymmetryClass symmetry_class(const TwoAdditiveBicapacity& b, double tol = 1e-9);

/// Materializes mu+ and mu- on all 3^n signed coalitions (n <= kMaxGeneralCriteria).
GeneralBicapacity to_general(const TwoAdditiveBicapacity& b);

}  // namespace bipromethee
