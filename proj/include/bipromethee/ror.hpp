#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "bipromethee/choquet.hpp"
#include "bipromethee/elicitation.hpp"
#include "bipromethee/lp.hpp"
#include "bipromethee/model.hpp"

namespace bipromethee {

enum class RelationKind { Necessary, Possible };

std::string to_string(RelationKind kind);

/// Outcome of one necessary/possible check.
struct CellCheck {
    bool holds = false;
    /// Some LP of the check was feasible; `epsilon` is then its best optimum.
    bool feasible = false;
    double epsilon = 0.0;
    /// Feasible and |epsilon| within ten thresholds of zero.
    bool borderline = false;
};

struct RorOptions {
    double eps_threshold = kDefaultEpsThreshold;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Pair-level checks over the bipolar compatible set of a fixed statement list.
class RobustAnalysis {
public:
    /// Throws PreconditionError when the bipolar model is not consistent.
    RobustAnalysis(std::vector<PreferenceStatement> statements, const BipolarPreferenceMatrix& pb,
                   RorOptions options = {});

    CellCheck necessary(std::size_t a, std::size_t b, ExploitationLevel level) const;
    CellCheck possible(std::size_t a, std::size_t b, ExploitationLevel level) const;

    const std::vector<PreferenceStatement>& statements() const { return statements_; }
    const BipolarPreferenceMatrix& preferences() const { return pb_; }
    double base_epsilon() const { return base_epsilon_; }

private:
    std::vector<PreferenceStatement> statements_;
    const BipolarPreferenceMatrix& pb_;
    RorOptions options_;
    LPModel base_;
    double base_epsilon_ = 0.0;

    double solve_with(const std::vector<LinearConstraint>& extra, bool& feasible) const;
    CellCheck finish(bool feasible, double eps, RelationKind kind) const;
};

bool necessary(std::size_t a, std::size_t b, ExploitationLevel level,
               const std::vector<PreferenceStatement>& statements, const BipolarPreferenceMatrix& pb,
               double eps_threshold = kDefaultEpsThreshold);
bool possible(std::size_t a, std::size_t b, ExploitationLevel level,
              const std::vector<PreferenceStatement>& statements, const BipolarPreferenceMatrix& pb,
              double eps_threshold = kDefaultEpsThreshold);

/// m x m boolean relation; the diagonal is always false.
struct RelationMatrix {
    RelationKind kind = RelationKind::Necessary;
    ExploitationLevel level = ExploitationLevel::Local;
    std::size_t m = 0;
    std::vector<std::uint8_t> cells;
    std::vector<CellCheck> checks;

    RelationMatrix() = default;
    RelationMatrix(RelationKind kind, ExploitationLevel level, std::size_t m);
    bool at(std::size_t a, std::size_t b) const { return cells[a * m + b] != 0; }
    bool operator==(const RelationMatrix& o) const {
        return kind == o.kind && level == o.level && m == o.m && cells == o.cells;
    }
};

using CellList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Changes of one exploitation level relative to the previous snapshot.
struct LevelDiff {
    CellList gained_necessary;
    CellList lost_necessary;
    CellList gained_possible;
    CellList lost_possible;
};

inline constexpr std::array<ExploitationLevel, 3> kAllLevels{
    ExploitationLevel::Local, ExploitationLevel::Promethee1, ExploitationLevel::Promethee2};

struct RorSnapshot {
    std::size_t iteration = 0;
    std::vector<PreferenceStatement> statements;
    /// Necessary matrices for kAllLevels, then the possible ones.
    std::array<RelationMatrix, 6> matrices;
    bool has_previous = false;
    /// Indexed like kAllLevels.
    std::array<LevelDiff, 3> diff;

    const RelationMatrix& matrix(RelationKind kind, ExploitationLevel level) const;
    RelationMatrix& matrix(RelationKind kind, ExploitationLevel level);
};

std::size_t level_index(ExploitationLevel level);

/// Diff of `current` against `previous`, per level.
std::array<LevelDiff, 3> diff_snapshots(const RorSnapshot& previous, const RorSnapshot& current);

/// All six matrices, computed in parallel. The iteration is one past
/// `previous`, or 0 without one.
RorSnapshot ror_snapshot(const std::vector<PreferenceStatement>& statements,
                         const BipolarPreferenceMatrix& pb, const RorSnapshot* previous = nullptr,
                         const RorOptions& options = {});

}  // namespace bipromethee
