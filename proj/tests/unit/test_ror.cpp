#include <doctest.h>

#include <random>

#include "bipromethee/errors.hpp"
#include "bipromethee/ror.hpp"
#include "oracles.hpp"

using namespace bipromethee;

namespace {

constexpr std::size_t s1 = 0, s3 = 2, s4 = 3, s5 = 4, s7 = 6;

std::vector<PreferenceStatement> both_batches() {
    auto s = oracle::students_first_batch();
    for (const auto& t : oracle::students_second_batch()) s.push_back(t);
    return s;
}

std::vector<PreferenceStatement> random_local_statements(std::mt19937& rng, std::size_t m, int count) {
    std::vector<PreferenceStatement> s;
    std::uniform_int_distribution<std::size_t> alt(0, m - 1);
    for (int k = 0; k < count; ++k) {
        std::size_t a = alt(rng), b = alt(rng);
        if (a == b) b = (a + 1) % m;
        s.push_back(LocalPreference{a, b});
    }
    return s;
}

}  // namespace

TEST_CASE("students after the first batch") {
    const BipolarPreferenceMatrix pb(oracle::students());
    const auto st = oracle::students_first_batch();
    CHECK(necessary(s7, s1, ExploitationLevel::Local, st, pb));
    CHECK(necessary(s7, s1, ExploitationLevel::Promethee1, st, pb));
    CHECK_FALSE(necessary(s7, s5, ExploitationLevel::Promethee1, st, pb));
    CHECK(possible(s3, s7, ExploitationLevel::Local, st, pb));
}

TEST_CASE("students after the second batch") {
    const BipolarPreferenceMatrix pb(oracle::students());
    CHECK_FALSE(possible(s1, s4, ExploitationLevel::Local, both_batches(), pb));
    const RobustAnalysis ra(both_batches(), pb);
    CHECK(ra.base_epsilon() == doctest::Approx(0.05).epsilon(1e-7));
    const auto c = ra.possible(s1, s4, ExploitationLevel::Local);
    CHECK_FALSE(c.holds);
}

TEST_CASE("dominance by at least p is necessary without statements") {
    const DecisionProblem p({{"g1", Direction::Gain, 0, 2, Shape::Linear}, {"g2", Direction::Gain, 0, 2, Shape::Linear}},
                            {"a", "b"}, {{5, 5}, {1, 2}});
    const BipolarPreferenceMatrix pb(p);
    for (auto level : kAllLevels) {
        CHECK(necessary(0, 1, level, {}, pb));
        CHECK_FALSE(possible(1, 0, level, {}, pb));
    }
}

TEST_CASE("inconsistent statements are a precondition failure") {
    const BipolarPreferenceMatrix pb(oracle::students());
    const std::vector<PreferenceStatement> s{LocalPreference{0, 1}, LocalPreference{1, 0}};
    CHECK_THROWS_AS(RobustAnalysis(s, pb), PreconditionError);
    CHECK_THROWS_AS(ror_snapshot(s, pb), PreconditionError);
}

TEST_CASE("snapshots: diagonal, iteration numbering and diffs") {
    const BipolarPreferenceMatrix pb(oracle::students());
    const auto first = ror_snapshot(oracle::students_first_batch(), pb);
    CHECK(first.iteration == 0);
    CHECK_FALSE(first.has_previous);
    for (const auto& mat : first.matrices) {
        CHECK(mat.m == 8);
        for (std::size_t a = 0; a < 8; ++a) CHECK_FALSE(mat.at(a, a));
    }
    const auto second = ror_snapshot(both_batches(), pb, &first);
    CHECK(second.iteration == 1);
    CHECK(second.has_previous);
    for (auto level : kAllLevels) {
        const auto& d = second.diff[level_index(level)];
        CHECK(d.lost_necessary.empty());
        CHECK(d.gained_possible.empty());
        const auto& n1 = first.matrix(RelationKind::Necessary, level);
        const auto& n2 = second.matrix(RelationKind::Necessary, level);
        for (const auto& [a, b] : d.gained_necessary) {
            CHECK_FALSE(n1.at(a, b));
            CHECK(n2.at(a, b));
        }
        const auto& p1 = first.matrix(RelationKind::Possible, level);
        const auto& p2 = second.matrix(RelationKind::Possible, level);
        for (const auto& [a, b] : d.lost_possible) {
            CHECK(p1.at(a, b));
            CHECK_FALSE(p2.at(a, b));
        }
    }
    const auto& loc = second.diff[level_index(ExploitationLevel::Local)];
    CHECK(std::find(loc.lost_possible.begin(), loc.lost_possible.end(), std::pair<std::size_t, std::size_t>{s1, s4}) !=
          loc.lost_possible.end());
}

TEST_CASE("snapshot is independent of the thread count") {
    const BipolarPreferenceMatrix pb(oracle::students());
    RorOptions one;
    one.threads = 1;
    RorOptions many;
    many.threads = 4;
    const auto a = ror_snapshot(oracle::students_first_batch(), pb, nullptr, one);
    const auto b = ror_snapshot(oracle::students_first_batch(), pb, nullptr, many);
    for (std::size_t i = 0; i < 6; ++i) CHECK(a.matrices[i] == b.matrices[i]);
}

TEST_CASE("property: containment, local completeness and monotonicity") {
    std::mt19937 rng(41);
    RorOptions opt;
    opt.threads = 2;
    int checked = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t m = 4, n = 2 + trial % 2;
        const auto p = oracle::random_problem(rng, m, n);
        const BipolarPreferenceMatrix pb(p);
        const auto all = random_local_statements(rng, m, 2);
        const std::vector<PreferenceStatement> prefix{all[0]};
        if (constructive_elicitation(all, pb).level == ModelLevel::Inconsistent) continue;
        ++checked;
        const auto before = ror_snapshot(prefix, pb, nullptr, opt);
        const auto after = ror_snapshot(all, pb, &before, opt);
        for (const auto* snap : {&before, &after})
            for (auto level : kAllLevels) {
                const auto& nec = snap->matrix(RelationKind::Necessary, level);
                const auto& pos = snap->matrix(RelationKind::Possible, level);
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < m; ++b) {
                        if (nec.at(a, b)) CHECK(pos.at(a, b));
                        if (level == ExploitationLevel::Local && a != b) CHECK((pos.at(a, b) || pos.at(b, a)));
                    }
            }
        for (auto level : kAllLevels)
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    if (before.matrix(RelationKind::Necessary, level).at(a, b))
                        CHECK(after.matrix(RelationKind::Necessary, level).at(a, b));
                    if (after.matrix(RelationKind::Possible, level).at(a, b))
                        CHECK(before.matrix(RelationKind::Possible, level).at(a, b));
                }
    }
    CHECK(checked > 4);
}

TEST_CASE("property: necessary cells hold for the elicited model") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 8; ++trial) {
        const auto p = oracle::random_problem(rng, 4, 3);
        const BipolarPreferenceMatrix pb(p);
        const auto st = random_local_statements(rng, 4, 1);
        const auto r = constructive_elicitation(st, pb);
        if (!r.parameters) continue;
        const RobustAnalysis ra(st, pb);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                if (a == b) continue;
                const double ch = choquet_2additive(pb.at(a, b), *r.parameters).net;
                if (ra.necessary(a, b, ExploitationLevel::Local).holds) CHECK(ch >= -1e-7);
                if (!ra.possible(a, b, ExploitationLevel::Local).holds) CHECK(ch <= 1e-6);
            }
    }
}
