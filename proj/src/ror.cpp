#include "bipromethee/ror.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bipromethee/errors.hpp"

namespace bipromethee {

std::string to_string(RelationKind kind) {
    return kind == RelationKind::Necessary ? "necessary" : "possible";
}

RobustAnalysis::RobustAnalysis(std::vector<PreferenceStatement> statements,
                               const BipolarPreferenceMatrix& pb, RorOptions options)
    : statements_(std::move(statements)),
      pb_(pb),
      options_(options),
      base_(build_base_model(statements_, pb_, ModelLevel::Bipolar)) {
    const auto sol = solve(base_);
    if (sol.status != LPStatus::Optimal || sol.objective_value <= options_.eps_threshold)
        throw PreconditionError("statements admit no compatible bipolar model");
    base_epsilon_ = sol.objective_value;
}

double RobustAnalysis::solve_with(const std::vector<LinearConstraint>& extra, bool& feasible) const {
    LPModel model = base_;
    for (const auto& row : extra) model.add_constraint(row);
    const auto sol = solve(model);
    feasible = sol.status == LPStatus::Optimal;
    return feasible ? sol.objective_value : 0.0;
}

CellCheck RobustAnalysis::finish(bool feasible, double eps, RelationKind kind) const {
    CellCheck c;
    c.feasible = feasible;
    c.epsilon = eps;
    c.borderline = feasible && std::abs(eps) <= 10.0 * options_.eps_threshold;
    if (kind == RelationKind::Necessary)
        c.holds = !feasible || eps <= options_.eps_threshold;
    else
        c.holds = feasible && eps > options_.eps_threshold;
    return c;
}

CellCheck RobustAnalysis::necessary(std::size_t a, std::size_t b, ExploitationLevel level) const {
    if (a == b) throw ValidationError("necessary check needs two different alternatives");
    const std::size_t m = pb_.alternative_count();
    if (a >= m || b >= m) throw ValidationError("alternative index out of range");
    bool feasible = false;
    double eps = 0.0;
    switch (level) {
        case ExploitationLevel::Local:
            eps = solve_with({make_row(choquet_net_expr(pb_.at(a, b)), Relation::LE, 0.0, "negation local", 1.0)},
                             feasible);
            break;
        case ExploitationLevel::Promethee2:
            eps = solve_with({make_row(difference(flow_net_expr(pb_, a), flow_net_expr(pb_, b)), Relation::LE, 0.0,
                                       "negation promethee2", 1.0)},
                             feasible);
            break;
        case ExploitationLevel::Promethee1: {
            const auto plus = difference(flow_positive_expr(pb_, a), flow_positive_expr(pb_, b));
            const auto minus = difference(flow_negative_expr(pb_, a), flow_negative_expr(pb_, b));
            constexpr std::array<std::array<int, 2>, 3> branches{{{0, 0}, {0, 1}, {1, 0}}};
            for (const auto& [m1, m2] : branches) {
                bool f = false;
                const double e = solve_with(
                    {make_row(plus, Relation::LE, 2.0 * m1, "negation phi+", 1.0),
                     make_row(minus, Relation::GE, -2.0 * m2, "negation phi-", -1.0)},
                    f);
                if (f && (!feasible || e > eps)) eps = e;
                feasible = feasible || f;
            }
            break;
        }
    }
    return finish(feasible, eps, RelationKind::Necessary);
}

CellCheck RobustAnalysis::possible(std::size_t a, std::size_t b, ExploitationLevel level) const {
    if (a == b) throw ValidationError("possible check needs two different alternatives");
    const std::size_t m = pb_.alternative_count();
    if (a >= m || b >= m) throw ValidationError("alternative index out of range");
    std::vector<LinearConstraint> extra;
    switch (level) {
        case ExploitationLevel::Local:
            extra.push_back(make_row(choquet_net_expr(pb_.at(a, b)), Relation::GE, 0.0, "affirmation local"));
            break;
        case ExploitationLevel::Promethee2:
            extra.push_back(make_row(difference(flow_net_expr(pb_, a), flow_net_expr(pb_, b)), Relation::GE, 0.0,
                                     "affirmation promethee2"));
            break;
        case ExploitationLevel::Promethee1:
            extra.push_back(make_row(difference(flow_positive_expr(pb_, a), flow_positive_expr(pb_, b)),
                                     Relation::GE, 0.0, "affirmation phi+"));
            extra.push_back(make_row(difference(flow_negative_expr(pb_, a), flow_negative_expr(pb_, b)),
                                     Relation::LE, 0.0, "affirmation phi-"));
            break;
    }
    bool feasible = false;
    const double eps = solve_with(extra, feasible);
    return finish(feasible, eps, RelationKind::Possible);
}

bool necessary(std::size_t a, std::size_t b, ExploitationLevel level,
               const std::vector<PreferenceStatement>& statements, const BipolarPreferenceMatrix& pb,
               double eps_threshold) {
    return RobustAnalysis(statements, pb, {eps_threshold, 1}).necessary(a, b, level).holds;
}

bool possible(std::size_t a, std::size_t b, ExploitationLevel level,
              const std::vector<PreferenceStatement>& statements, const BipolarPreferenceMatrix& pb,
              double eps_threshold) {
    return RobustAnalysis(statements, pb, {eps_threshold, 1}).possible(a, b, level).holds;
}

RelationMatrix::RelationMatrix(RelationKind kind_, ExploitationLevel level_, std::size_t m_)
    : kind(kind_), level(level_), m(m_), cells(m_ * m_, 0), checks(m_ * m_) {}

std::size_t level_index(ExploitationLevel level) {
    switch (level) {
        case ExploitationLevel::Local: return 0;
        case ExploitationLevel::Promethee1: return 1;
        case ExploitationLevel::Promethee2: return 2;
    }
    return 0;
}

const RelationMatrix& RorSnapshot::matrix(RelationKind kind, ExploitationLevel level) const {
    return matrices[(kind == RelationKind::Necessary ? 0 : 3) + level_index(level)];
}

RelationMatrix& RorSnapshot::matrix(RelationKind kind, ExploitationLevel level) {
    return matrices[(kind == RelationKind::Necessary ? 0 : 3) + level_index(level)];
}

std::array<LevelDiff, 3> diff_snapshots(const RorSnapshot& previous, const RorSnapshot& current) {
    std::array<LevelDiff, 3> out;
    for (auto level : kAllLevels) {
        auto& d = out[level_index(level)];
        const auto& pn = previous.matrix(RelationKind::Necessary, level);
        const auto& cn = current.matrix(RelationKind::Necessary, level);
        const auto& pp = previous.matrix(RelationKind::Possible, level);
        const auto& cp = current.matrix(RelationKind::Possible, level);
        if (pn.m != cn.m) throw ValidationError("snapshots cover different alternative sets");
        for (std::size_t a = 0; a < cn.m; ++a)
            for (std::size_t b = 0; b < cn.m; ++b) {
                if (!pn.at(a, b) && cn.at(a, b)) d.gained_necessary.emplace_back(a, b);
                if (pn.at(a, b) && !cn.at(a, b)) d.lost_necessary.emplace_back(a, b);
                if (!pp.at(a, b) && cp.at(a, b)) d.gained_possible.emplace_back(a, b);
                if (pp.at(a, b) && !cp.at(a, b)) d.lost_possible.emplace_back(a, b);
            }
    }
    return out;
}

RorSnapshot ror_snapshot(const std::vector<PreferenceStatement>& statements,
                         const BipolarPreferenceMatrix& pb, const RorSnapshot* previous,
                         const RorOptions& options) {
    const RobustAnalysis analysis(statements, pb, options);
    const std::size_t m = pb.alternative_count();

    RorSnapshot snap;
    snap.iteration = previous ? previous->iteration + 1 : 0;
    snap.statements = statements;
    for (auto level : kAllLevels) {
        snap.matrix(RelationKind::Necessary, level) = RelationMatrix(RelationKind::Necessary, level, m);
        snap.matrix(RelationKind::Possible, level) = RelationMatrix(RelationKind::Possible, level, m);
    }

    struct Task { ExploitationLevel level; std::size_t a, b; };
    std::vector<Task> tasks;
    for (auto level : kAllLevels)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (a != b) tasks.push_back({level, a, b});

    // Each task writes only its own cells.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto& t = tasks[i];
            try {
                const auto nec = analysis.necessary(t.a, t.b, t.level);
                const auto pos = analysis.possible(t.a, t.b, t.level);
                auto& nm = snap.matrix(RelationKind::Necessary, t.level);
                auto& pm = snap.matrix(RelationKind::Possible, t.level);
                nm.cells[t.a * m + t.b] = nec.holds;
                nm.checks[t.a * m + t.b] = nec;
                pm.cells[t.a * m + t.b] = pos.holds;
                pm.checks[t.a * m + t.b] = pos;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    if (previous) {
        snap.has_previous = true;
        snap.diff = diff_snapshots(*previous, snap);
    }
    return snap;
}

}  // namespace bipromethee
