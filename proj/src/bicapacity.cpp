#include "bipromethee/bicapacity.hpp"

#include <cmath>
#include <sstream>

#include "bipromethee/errors.hpp"

namespace bipromethee {

SignedCoalition SignedCoalition::from_indices(const std::vector<std::size_t>& positive,
                                              const std::vector<std::size_t>& negative) {
    SignedCoalition cd;
    for (auto j : positive) {
        if (j >= 32) throw LookupError("criterion index out of range");
        cd.positive |= 1u << j;
    }
    for (auto j : negative) {
        if (j >= 32) throw LookupError("criterion index out of range");
        cd.negative |= 1u << j;
    }
    return cd;
}

void SignedCoalition::validate(std::size_t n) const {
    if (positive & negative) throw LookupError("signed coalition has overlapping C and D");
    const std::uint32_t universe = n >= 32 ? ~0u : ((1u << n) - 1u);
    if ((positive | negative) & ~universe)
        throw LookupError("signed coalition references a criterion index >= n");
}

std::size_t signed_coalition_count(std::size_t n) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c *= 3;
    return c;
}

std::size_t coalition_code(const SignedCoalition& cd, std::size_t n) {
    std::size_t code = 0;
    for (std::size_t j = n; j-- > 0;) {
        code *= 3;
        if (cd.contains_positive(j)) code += 1;
        else if (cd.contains_negative(j)) code += 2;
    }
    return code;
}

SignedCoalition coalition_from_code(std::size_t code, std::size_t n) {
    SignedCoalition cd;
    for (std::size_t j = 0; j < n; ++j) {
        switch (code % 3) {
            case 1: cd.positive |= 1u << j; break;
            case 2: cd.negative |= 1u << j; break;
            default: break;
        }
        code /= 3;
    }
    return cd;
}

TwoAdditiveBicapacity::TwoAdditiveBicapacity(std::size_t n)
    : n_(n),
      a_plus_(n, 0.0),
      a_minus_(n, 0.0),
      pair_plus_(n * (n > 0 ? n - 1 : 0) / 2, 0.0),
      pair_minus_(pair_plus_.size(), 0.0),
      opp_plus_(n * n, 0.0),
      opp_minus_(n * n, 0.0) {
    if (n == 0) throw ConfigError("a bicapacity needs at least one criterion");
    if (n > 31) throw CapacityError("at most 31 criteria are supported");
}

TwoAdditiveBicapacity TwoAdditiveBicapacity::additive(const std::vector<double>& weights) {
    TwoAdditiveBicapacity b(weights.size());
    for (std::size_t j = 0; j < weights.size(); ++j) {
        b.a_plus_[j] = weights[j];
        b.a_minus_[j] = weights[j];
    }
    return b;
}

bool TwoAdditiveBicapacity::has_interactions() const {
    for (double v : pair_plus_) if (v != 0.0) return true;
    for (double v : pair_minus_) if (v != 0.0) return true;
    for (double v : opp_plus_) if (v != 0.0) return true;
    for (double v : opp_minus_) if (v != 0.0) return true;
    return false;
}

std::size_t TwoAdditiveBicapacity::pair_slot(std::size_t j, std::size_t k) const {
    if (j == k || j >= n_ || k >= n_) throw LookupError("invalid criterion pair");
    if (j > k) std::swap(j, k);
    // rows 0..j-1 hold (n-1) + (n-2) + ... + (n-j) entries
    return j * (2 * n_ - j - 1) / 2 + (k - j - 1);
}

std::size_t TwoAdditiveBicapacity::opp_slot(std::size_t j, std::size_t k) const {
    if (j == k || j >= n_ || k >= n_) throw LookupError("invalid opposition pair");
    return j * n_ + k;
}

double eval_mu_plus(const TwoAdditiveBicapacity& b, const SignedCoalition& cd) {
    const std::size_t n = b.size();
    cd.validate(n);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!cd.contains_positive(j)) continue;
        sum += b.a_plus(j);
        for (std::size_t k = j + 1; k < n; ++k)
            if (cd.contains_positive(k)) sum += b.pair_plus(j, k);
        for (std::size_t k = 0; k < n; ++k)
            if (cd.contains_negative(k)) sum += b.opp_plus(j, k);
    }
    return sum;
}

double eval_mu_minus(const TwoAdditiveBicapacity& b, const SignedCoalition& cd) {
    const std::size_t n = b.size();
    cd.validate(n);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (cd.contains_negative(j)) {
            sum += b.a_minus(j);
            for (std::size_t k = j + 1; k < n; ++k)
                if (cd.contains_negative(k)) sum += b.pair_minus(j, k);
        }
        if (cd.contains_positive(j)) {
            for (std::size_t k = 0; k < n; ++k)
                if (cd.contains_negative(k)) sum += b.opp_minus(j, k);
        }
    }
    return sum;
}

double eval_bicapacity(const TwoAdditiveBicapacity& b, const SignedCoalition& cd) {
    return eval_mu_plus(b, cd) - eval_mu_minus(b, cd);
}

double eval_bicapacity(const GeneralBicapacity& g, const SignedCoalition& cd) {
    cd.validate(g.n);
    return g.mu_plus(cd) - g.mu_minus(cd);
}

namespace {

std::string describe_coalition(const SignedCoalition& cd, std::size_t n) {
    std::ostringstream os;
    os << "C={";
    bool first = true;
    for (std::size_t j = 0; j < n; ++j)
        if (cd.contains_positive(j)) { os << (first ? "" : ",") << j; first = false; }
    os << "} D={";
    first = true;
    for (std::size_t j = 0; j < n; ++j)
        if (cd.contains_negative(j)) { os << (first ? "" : ",") << j; first = false; }
    os << "}";
    return os.str();
}

}  // namespace

ValidationReport validate(const TwoAdditiveBicapacity& b, double tol) {
    const std::size_t n = b.size();
    if (n > kMaxEnumeratedCriteria)
        throw CapacityError("monotonicity enumeration is limited to " +
                            std::to_string(kMaxEnumeratedCriteria) + " criteria");
    ValidationReport report;
    auto add = [&](ConstraintFamily f, std::string what, double slack) {
        report.violations.push_back({f, std::move(what), slack});
    };

    for (std::size_t j = 0; j < n; ++j) {
        if (b.a_plus(j) < -tol) add(ConstraintFamily::Sign, "a+_" + std::to_string(j) + " >= 0", b.a_plus(j));
        if (b.a_minus(j) < -tol) add(ConstraintFamily::Sign, "a-_" + std::to_string(j) + " >= 0", b.a_minus(j));
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const auto tag = std::to_string(j) + "|" + std::to_string(k);
            if (b.opp_plus(j, k) > tol) add(ConstraintFamily::Sign, "a+_" + tag + " <= 0", -b.opp_plus(j, k));
            if (b.opp_minus(j, k) > tol) add(ConstraintFamily::Sign, "a-_" + tag + " <= 0", -b.opp_minus(j, k));
        }
    }

    double total_plus = 0.0, total_minus = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        total_plus += b.a_plus(j);
        total_minus += b.a_minus(j);
        for (std::size_t k = j + 1; k < n; ++k) {
            total_plus += b.pair_plus(j, k);
            total_minus += b.pair_minus(j, k);
        }
    }
    if (std::abs(total_plus - 1.0) > tol)
        add(ConstraintFamily::Boundary, "mu+(J,{}) = 1", total_plus - 1.0);
    if (std::abs(total_minus - 1.0) > tol)
        add(ConstraintFamily::Boundary, "mu-({},J) = 1", total_minus - 1.0);

    // For each j, enumerate disjoint (C, D) over J \ {j} with base-3 digits.
    const std::size_t per_j = signed_coalition_count(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t code = 0; code < per_j; ++code) {
            SignedCoalition cd;
            std::size_t c = code;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                switch (c % 3) {
                    case 1: cd.positive |= 1u << k; break;
                    case 2: cd.negative |= 1u << k; break;
                    default: break;
                }
                c /= 3;
            }
            double plus = b.a_plus(j);
            double minus = b.a_minus(j);
            for (std::size_t k = 0; k < n; ++k) {
                if (cd.contains_positive(k)) {
                    plus += b.pair_plus(j, k);
                    minus += b.opp_minus(k, j);
                } else if (cd.contains_negative(k)) {
                    plus += b.opp_plus(j, k);
                    minus += b.pair_minus(j, k);
                }
            }
            if (plus < -tol)
                add(ConstraintFamily::MonotonicityPlus,
                    "j=" + std::to_string(j) + " " + describe_coalition(cd, n), plus);
            if (minus < -tol)
                add(ConstraintFamily::MonotonicityMinus,
                    "j=" + std::to_string(j) + " " + describe_coalition(cd, n), minus);
        }
    }
    return report;
}

ValidationReport validate(const GeneralBicapacity& g, double tol) {
    const std::size_t n = g.n;
    ValidationReport report;
    const std::size_t total = signed_coalition_count(n);
    const std::uint32_t all = (1u << n) - 1u;
    auto add = [&](ConstraintFamily f, std::string what, double slack) {
        report.violations.push_back({f, std::move(what), slack});
    };

    if (std::abs(g.mu_plus({all, 0}) - 1.0) > tol) add(ConstraintFamily::Boundary, "mu+(J,{}) = 1", g.mu_plus({all, 0}) - 1.0);
    if (std::abs(g.mu_minus({0, all}) - 1.0) > tol) add(ConstraintFamily::Boundary, "mu-({},J) = 1", g.mu_minus({0, all}) - 1.0);

    for (std::size_t code = 0; code < total; ++code) {
        const auto cd = coalition_from_code(code, n);
        const double plus = g.table_plus[code];
        const double minus = g.table_minus[code];
        if (cd.positive == 0 && std::abs(plus) > tol)
            add(ConstraintFamily::Boundary, "mu+({},D) = 0 at " + describe_coalition(cd, n), plus);
        if (cd.negative == 0 && std::abs(minus) > tol)
            add(ConstraintFamily::Boundary, "mu-(C,{}) = 0 at " + describe_coalition(cd, n), minus);
        for (std::size_t j = 0; j < n; ++j) {
            if (cd.contains_positive(j) || cd.contains_negative(j)) continue;
            SignedCoalition up{cd.positive | (1u << j), cd.negative};
            SignedCoalition down{cd.positive, cd.negative | (1u << j)};
            const double up_plus = g.mu_plus(up), down_plus = g.mu_plus(down);
            const double up_minus = g.mu_minus(up), down_minus = g.mu_minus(down);
            if (up_plus - plus < -tol)
                add(ConstraintFamily::MonotonicityPlus, "adding " + std::to_string(j) + " to C at " + describe_coalition(cd, n), up_plus - plus);
            if (plus - down_plus < -tol)
                add(ConstraintFamily::MonotonicityPlus, "adding " + std::to_string(j) + " to D at " + describe_coalition(cd, n), plus - down_plus);
            if (down_minus - minus < -tol)
                add(ConstraintFamily::MonotonicityMinus, "adding " + std::to_string(j) + " to D at " + describe_coalition(cd, n), down_minus - minus);
            if (minus - up_minus < -tol)
                add(ConstraintFamily::MonotonicityMinus, "adding " + std::to_string(j) + " to C at " + describe_coalition(cd, n), minus - up_minus);
        }
    }
    return report;
}

std::string to_string(SymmetryClass s) {
    switch (s) {
        case SymmetryClass::None: return "none";
        case SymmetryClass::BipolarSymmetric: return "bipolar_symmetric";
        case SymmetryClass::StrongSymmetric: return "strong_symmetric";
    }
    return "none";
}

SymmetryClass symmetry_class(const TwoAdditiveBicapacity& b, double tol) {
    const std::size_t n = b.size();
    auto close = [tol](double x, double y) { return std::abs(x - y) <= tol; };
    for (std::size_t j = 0; j < n; ++j) {
        if (!close(b.a_plus(j), b.a_minus(j))) return SymmetryClass::None;
        for (std::size_t k = j + 1; k < n; ++k)
            if (!close(b.pair_plus(j, k), b.pair_minus(j, k))) return SymmetryClass::None;
    }
    bool strong = true;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k) continue;
            if (!close(b.opp_plus(j, k) - b.opp_minus(j, k), b.opp_minus(k, j) - b.opp_plus(k, j)))
                return SymmetryClass::None;
            if (!close(b.opp_plus(j, k), b.opp_minus(k, j))) strong = false;
        }
    }
    return strong ? SymmetryClass::StrongSymmetric : SymmetryClass::BipolarSymmetric;
}

GeneralBicapacity to_general(const TwoAdditiveBicapacity& b) {
    const std::size_t n = b.size();
    if (n > kMaxGeneralCriteria)
        throw CapacityError("coalition tables are limited to " +
                            std::to_string(kMaxGeneralCriteria) + " criteria");
    GeneralBicapacity g;
    g.n = n;
    const std::size_t total = signed_coalition_count(n);
    g.table_plus.resize(total);
    g.table_minus.resize(total);
    for (std::size_t code = 0; code < total; ++code) {
        const auto cd = coalition_from_code(code, n);
        g.table_plus[code] = eval_mu_plus(b, cd);
        g.table_minus[code] = eval_mu_minus(b, cd);
    }
    return g;
}

}  // namespace bipromethee
