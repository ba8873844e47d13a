#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bipromethee/bicapacity.hpp"
#include "bipromethee/model.hpp"

namespace bipromethee {

/// Tolerance used when comparing flows inside an OutrankingStructure.
inline constexpr double kFlowIndifferenceBand = 1e-9;

/// Profile sorted by |x| (stable on index) with its level sets.
struct OrderedProfile {
    std::vector<double> values;
    std::vector<std::size_t> order;           ///< |x_order[0]| <= |x_order[1]| <= ...
    std::vector<SignedCoalition> levels;      ///< (C_(i), D_(i)) for i = 0..n; levels[n] is empty

    static OrderedProfile build(std::span<const double> x);
};

/// Net, positive and negative parts of a bipolar Choquet integral.
struct ChoquetValue {
    double net = 0.0;
    double positive = 0.0;
    double negative = 0.0;
};

/// Ordered-sum evaluation on explicit coalition tables.
ChoquetValue choquet_general(std::span<const double> x, const GeneralBicapacity& g);

/// Closed-form evaluation for a 2-additive decomposable bicapacity.
ChoquetValue choquet_2additive(std::span<const double> x, const TwoAdditiveBicapacity& b);

struct FlowTriple {
    double positive = 0.0;
    double negative = 0.0;
    double net = 0.0;

    friend bool operator==(const FlowTriple&, const FlowTriple&) = default;
};

/// Bipolar flows for every alternative, in problem order.
std::vector<FlowTriple> bipolar_flows(const DecisionProblem& problem,
                                      const TwoAdditiveBicapacity& b);
std::vector<FlowTriple> bipolar_flows(const BipolarPreferenceMatrix& pb,
                                      const TwoAdditiveBicapacity& b);

/// Classical PROMETHEE flows with weights w_j >= 0 summing to one.
std::vector<FlowTriple> classical_flows(const DecisionProblem& problem,
                                        const std::vector<double>& weights);

enum class ExploitationLevel { Local, Promethee1, Promethee2 };

std::string to_string(ExploitationLevel level);
ExploitationLevel exploitation_level_from_string(const std::string& s);

/// Relation of the ordered pair (a, b). `PreferredBy` is the mirror of
/// `Preferred`: b is preferred to a.
enum class PairRelation { Preferred, PreferredBy, Indifferent, Incomparable };

/// One-letter symbol: P, -, I, R.
char symbol(PairRelation r);

class OutrankingStructure {
public:
    OutrankingStructure(ExploitationLevel level, std::size_t m);

    ExploitationLevel level() const { return level_; }
    std::size_t size() const { return m_; }
    PairRelation at(std::size_t a, std::size_t b) const { return cells_[a * m_ + b]; }
    void set(std::size_t a, std::size_t b, PairRelation r) { cells_[a * m_ + b] = r; }

private:
    ExploitationLevel level_;
    std::size_t m_;
    std::vector<PairRelation> cells_;
};

/// PROMETHEE I / II relations from flows (classical or bipolar).
/// Local level is not defined on flows; use local_structure.
OutrankingStructure outranking_structure(const std::vector<FlowTriple>& flows,
                                         ExploitationLevel level);

/// Pairwise relation from the sign of Ch^B(P^B(a,b)).
OutrankingStructure local_structure(const BipolarPreferenceMatrix& pb,
                                    const TwoAdditiveBicapacity& b);

/// PROMETHEE II complete ranking: groups of alternative indices by decreasing
/// net flow. Only exactly equal net flows share a group.
std::vector<std::vector<std::size_t>> promethee2_ranking(const std::vector<FlowTriple>& flows);

}  // namespace bipromethee
