#include "bipromethee/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bipromethee/errors.hpp"

namespace bipromethee {

OrderedProfile OrderedProfile::build(std::span<const double> x) {
    OrderedProfile p;
    const std::size_t n = x.size();
    p.values.assign(x.begin(), x.end());
    p.order.resize(n);
    std::iota(p.order.begin(), p.order.end(), std::size_t{0});
    std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(x[i]) < std::abs(x[j]);
    });
    p.levels.resize(n + 1);
    for (std::size_t level = 0; level < n; ++level) {
        const double threshold = std::abs(x[p.order[level]]);
        if (threshold == 0.0) continue;  // outside J^>
        SignedCoalition cd;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0.0) continue;
            if (x[i] >= threshold) cd.positive |= 1u << i;
            else if (-x[i] >= threshold) cd.negative |= 1u << i;
        }
        p.levels[level] = cd;
    }
    return p;
}

ChoquetValue choquet_general(std::span<const double> x, const GeneralBicapacity& g) {
    if (x.size() != g.n) throw ConfigError("profile dimension does not match bicapacity");
    const auto profile = OrderedProfile::build(x);
    ChoquetValue v;
    for (std::size_t level = 0; level < g.n; ++level) {
        const double height = std::abs(x[profile.order[level]]);
        if (height == 0.0) continue;
        const auto& here = profile.levels[level];
        const auto& next = profile.levels[level + 1];
        const double plus = g.mu_plus(here) - g.mu_plus(next);
        const double minus = g.mu_minus(here) - g.mu_minus(next);
        v.positive += height * plus;
        v.negative += height * minus;
        v.net += height * (plus - minus);
    }
    return v;
}

ChoquetValue choquet_2additive(std::span<const double> x, const TwoAdditiveBicapacity& b) {
    const std::size_t n = b.size();
    if (x.size() != n) throw ConfigError("profile dimension does not match bicapacity");
    ChoquetValue v;
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] > 0.0) {
            v.positive += b.a_plus(j) * x[j];
            for (std::size_t k = j + 1; k < n; ++k)
                if (x[k] > 0.0) v.positive += b.pair_plus(j, k) * std::min(x[j], x[k]);
            for (std::size_t k = 0; k < n; ++k) {
                if (x[k] < 0.0) {
                    const double m = std::min(x[j], -x[k]);
                    v.positive += b.opp_plus(j, k) * m;
                    v.negative += b.opp_minus(j, k) * m;
                }
            }
        } else if (x[j] < 0.0) {
            v.negative += b.a_minus(j) * -x[j];
            for (std::size_t k = j + 1; k < n; ++k)
                if (x[k] < 0.0) v.negative += b.pair_minus(j, k) * std::min(-x[j], -x[k]);
        }
    }
    v.net = v.positive - v.negative;
    return v;
}

std::vector<FlowTriple> bipolar_flows(const BipolarPreferenceMatrix& pb,
                                      const TwoAdditiveBicapacity& b) {
    const std::size_t m = pb.alternative_count();
    if (m < 2) throw ConfigError("flows need at least two alternatives");
    std::vector<FlowTriple> flows(m);
    const double scale = 1.0 / static_cast<double>(m - 1);
    for (std::size_t a = 0; a < m; ++a) {
        ChoquetValue sum;
        for (std::size_t o = 0; o < m; ++o) {
            if (o == a) continue;
            const auto v = choquet_2additive(pb.at(a, o), b);
            sum.positive += v.positive;
            sum.negative += v.negative;
            sum.net += v.net;
        }
        flows[a] = {sum.positive * scale, sum.negative * scale, sum.net * scale};
    }
    return flows;
}

std::vector<FlowTriple> bipolar_flows(const DecisionProblem& problem,
                                      const TwoAdditiveBicapacity& b) {
    return bipolar_flows(BipolarPreferenceMatrix(problem), b);
}

std::vector<FlowTriple> classical_flows(const DecisionProblem& problem,
                                        const std::vector<double>& weights) {
    const std::size_t n = problem.criterion_count();
    const std::size_t m = problem.alternative_count();
    if (weights.size() != n) throw ConfigError("one weight per criterion is required");
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw ConfigError("weights must be finite and >= 0");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("weights must sum to 1");

    // pi(a,b) = sum_j w_j P_j(a,b)
    std::vector<double> pi(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t o = 0; o < m; ++o) {
            if (a == o) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const auto& spec = problem.criteria()[j];
                double d = problem.evaluation(a, j) - problem.evaluation(o, j);
                if (spec.direction == Direction::Cost) d = -d;
                s += weights[j] * partial_preference(d, spec);
            }
            pi[a * m + o] = s;
        }
    }
    std::vector<FlowTriple> flows(m);
    const double scale = 1.0 / static_cast<double>(m - 1);
    for (std::size_t a = 0; a < m; ++a) {
        double out = 0.0, in = 0.0;
        for (std::size_t o = 0; o < m; ++o) {
            if (o == a) continue;
            out += pi[a * m + o];
            in += pi[o * m + a];
        }
        flows[a].positive = out * scale;
        flows[a].negative = in * scale;
        flows[a].net = flows[a].positive - flows[a].negative;
    }
    return flows;
}

std::string to_string(ExploitationLevel level) {
    switch (level) {
        case ExploitationLevel::Local: return "local";
        case ExploitationLevel::Promethee1: return "promethee1";
        case ExploitationLevel::Promethee2: return "promethee2";
    }
    return "local";
}

ExploitationLevel exploitation_level_from_string(const std::string& s) {
    if (s == "local") return ExploitationLevel::Local;
    if (s == "promethee1") return ExploitationLevel::Promethee1;
    if (s == "promethee2") return ExploitationLevel::Promethee2;
    throw ValidationError("unknown exploitation level '" + s + "'");
}

char symbol(PairRelation r) {
    switch (r) {
        case PairRelation::Preferred: return 'P';
        case PairRelation::PreferredBy: return '-';
        case PairRelation::Indifferent: return 'I';
        case PairRelation::Incomparable: return 'R';
    }
    return '?';
}

OutrankingStructure::OutrankingStructure(ExploitationLevel level, std::size_t m)
    : level_(level), m_(m), cells_(m * m, PairRelation::Indifferent) {}

namespace {

bool approx_eq(double x, double y) { return std::abs(x - y) <= kFlowIndifferenceBand; }
bool approx_ge(double x, double y) { return x >= y - kFlowIndifferenceBand; }
bool strictly_gt(double x, double y) { return x > y + kFlowIndifferenceBand; }

PairRelation promethee1_relation(const FlowTriple& a, const FlowTriple& b) {
    if (approx_eq(a.positive, b.positive) && approx_eq(a.negative, b.negative))
        return PairRelation::Indifferent;
    if (approx_ge(a.positive, b.positive) && approx_ge(b.negative, a.negative) &&
        strictly_gt(a.net, b.net))
        return PairRelation::Preferred;
    if (approx_ge(b.positive, a.positive) && approx_ge(a.negative, b.negative) &&
        strictly_gt(b.net, a.net))
        return PairRelation::PreferredBy;
    return PairRelation::Incomparable;
}

PairRelation promethee2_relation(const FlowTriple& a, const FlowTriple& b) {
    if (strictly_gt(a.net, b.net)) return PairRelation::Preferred;
    if (strictly_gt(b.net, a.net)) return PairRelation::PreferredBy;
    return PairRelation::Indifferent;
}

}  // namespace

OutrankingStructure outranking_structure(const std::vector<FlowTriple>& flows,
                                         ExploitationLevel level) {
    if (level == ExploitationLevel::Local)
        throw ConfigError("local relations are defined on pairwise integrals, not flows");
    OutrankingStructure s(level, flows.size());
    for (std::size_t a = 0; a < flows.size(); ++a) {
        for (std::size_t b = 0; b < flows.size(); ++b) {
            if (a == b) continue;
            s.set(a, b, level == ExploitationLevel::Promethee1
                            ? promethee1_relation(flows[a], flows[b])
                            : promethee2_relation(flows[a], flows[b]));
        }
    }
    return s;
}

OutrankingStructure local_structure(const BipolarPreferenceMatrix& pb,
                                    const TwoAdditiveBicapacity& b) {
    const std::size_t m = pb.alternative_count();
    OutrankingStructure s(ExploitationLevel::Local, m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t o = 0; o < m; ++o) {
            if (a == o) continue;
            const double v = choquet_2additive(pb.at(a, o), b).net;
            if (v > kFlowIndifferenceBand) s.set(a, o, PairRelation::Preferred);
            else if (v < -kFlowIndifferenceBand) s.set(a, o, PairRelation::PreferredBy);
            else s.set(a, o, PairRelation::Indifferent);
        }
    }
    return s;
}

std::vector<std::vector<std::size_t>> promethee2_ranking(const std::vector<FlowTriple>& flows) {
    std::vector<std::size_t> order(flows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return flows[a].net > flows[b].net; });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t idx : order) {
        if (!groups.empty() && flows[groups.back().front()].net == flows[idx].net)
            groups.back().push_back(idx);
        else
            groups.push_back({idx});
    }
    return groups;
}

}  // namespace bipromethee
