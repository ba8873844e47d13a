// Acceptance suite: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bipromethee/ror.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace bipromethee;

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    std::vector<std::string> notes;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<PreferenceStatement> both_batches() {
    auto s = oracle::students_first_batch();
    for (const auto& t : oracle::students_second_batch()) s.push_back(t);
    return s;
}

Outcome p1_preference_vector() {
    const auto v = bipolar_preference_vector(oracle::students(), 0, 1);
    const std::vector<double> want{0.25, 0.75, -0.5};
    Outcome o;
    o.pass = v == want;
    o.summary = fmt("P^B(s1,s2) = [%g, %g, %g]", v[0], v[1], v[2]);
    return o;
}

Outcome p2_general_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20240601);
    double worst = 0.0;
    const int cases = 1200;
    for (int i = 0; i < cases; ++i) {
        const std::size_t n = 2 + std::size_t(i % 3);
        const auto b = oracle::random_bicapacity(rng, n);
        const auto g = to_general(b);
        auto x = oracle::random_profile(rng, n);
        if (i % 5 == 0) x[0] = x[n - 1];  // ties
        if (i % 7 == 0) x[1] = 0.0;
        const auto a = choquet_2additive(x, b);
        const auto c = choquet_general(x, g);
        worst = std::max({worst, std::abs(a.net - c.net), std::abs(a.positive - c.positive),
                          std::abs(a.negative - c.negative)});
    }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = worst <= 1e-9 && t < 10.0;
    o.summary = fmt("%d cases, n in {2,3,4}, max deviation %.3g, %.2f s", cases, worst, t);
    return o;
}

Outcome p3_symmetry() {
    std::mt19937 rng(7);
    double strong_worst = 0.0, bipolar_net_worst = 0.0;
    int bipolar_gaps = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + std::size_t(i % 3);
        const auto b = oracle::random_strong_symmetric(rng, n);
        const auto x = oracle::random_profile(rng, n);
        std::vector<double> neg(x);
        for (auto& v : neg) v = -v;
        const auto p = choquet_2additive(x, b), q = choquet_2additive(neg, b);
        strong_worst = std::max({strong_worst, std::abs(p.positive - q.negative), std::abs(p.net + q.net)});
    }
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + std::size_t(i % 3);
        const auto b = oracle::random_bipolar_only(rng, n);
        const auto x = oracle::random_profile(rng, n);
        std::vector<double> neg(x);
        for (auto& v : neg) v = -v;
        const auto p = choquet_2additive(x, b), q = choquet_2additive(neg, b);
        bipolar_net_worst = std::max(bipolar_net_worst, std::abs(p.net + q.net));
        if (std::abs(p.positive - q.negative) > 1e-9) ++bipolar_gaps;
    }

    TwoAdditiveBicapacity c(2);
    for (std::size_t j = 0; j < 2; ++j) {
        c.set_a_plus(j, 0.5);
        c.set_a_minus(j, 0.5);
    }
    c.set_opp_plus(0, 1, -0.1);
    c.set_opp_minus(0, 1, -0.1);
    const std::vector<double> x{1.0, -1.0}, neg{-1.0, 1.0};
    const auto v = choquet_2additive(x, c), w = choquet_2additive(neg, c);
    const bool counterexample = validate(c).ok() && symmetry_class(c) == SymmetryClass::BipolarSymmetric &&
                                std::abs(v.net + w.net) <= 1e-12 && std::abs(v.positive - w.negative) > 1e-3;

    Outcome o;
    o.pass = strong_worst <= 1e-9 && bipolar_net_worst <= 1e-9 && counterexample;
    o.summary = fmt("strong max error %.3g; bipolar-only net error %.3g; counterexample %s", strong_worst,
                    bipolar_net_worst, counterexample ? "confirmed" : "missing");
    o.notes.push_back(fmt("bipolar-only instances with positive(x) != negative(-x): %d of 200", bipolar_gaps));
    o.notes.push_back(fmt("counterexample: positive(1,-1) = %g, negative(-1,1) = %g", v.positive, w.negative));
    return o;
}

Outcome p4_restoration() {
    std::mt19937 rng(99);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t m = 2 + std::size_t(i % 7), n = 1 + std::size_t(i % 5);
        const auto p = oracle::random_problem(rng, m, n);
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) total += (x = oracle::uniform(rng, 0.0, 1.0));
        for (auto& x : w) x /= total;
        TwoAdditiveBicapacity b(n);
        for (std::size_t j = 0; j < n; ++j) {
            b.set_a_plus(j, w[j]);
            b.set_a_minus(j, w[j]);
        }
        const auto bip = bipolar_flows(p, b);
        const auto cls = classical_flows(p, w);
        for (std::size_t a = 0; a < m; ++a) worst = std::max(worst, std::abs(bip[a].net - cls[a].net));
    }
    Outcome o;
    o.pass = worst <= 1e-9;
    o.summary = fmt("100 problems, max |bipolar net - classical net| = %.3g", worst);
    return o;
}

ElicitationResult g_iteration1, g_iteration2;

Outcome p5_procedure() {
    const auto t0 = std::chrono::steady_clock::now();
    const BipolarPreferenceMatrix pb(oracle::students());
    g_iteration1 = constructive_elicitation(oracle::students_first_batch(), pb);
    const double t = seconds_since(t0);
    const auto& s = g_iteration1.steps;
    auto show = [](const StepTrace& st) {
        return st.status == LPStatus::Optimal ? fmt("%.6g", st.epsilon) : to_string(st.status);
    };
    Outcome o;
    o.pass = s.size() == 3 && !s[0].passed && !s[1].passed && s[2].passed && g_iteration1.level == ModelLevel::Bipolar &&
             t < 5.0;
    o.summary = fmt("classical %s, symmetric %s, bipolar %s -> %s, %.2f s", show(s[0]).c_str(), show(s[1]).c_str(),
                    show(s[2]).c_str(), to_string(g_iteration1.level).c_str(), t);
    return o;
}

const char* short_name(ExploitationLevel l) {
    switch (l) {
        case ExploitationLevel::Local: return "local";
        case ExploitationLevel::Promethee1: return "P1";
        default: return "P2";
    }
}

Outcome p6_ror() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto problem = oracle::students();
    const BipolarPreferenceMatrix pb(problem);
    const auto first = ror_snapshot(oracle::students_first_batch(), pb);
    auto second = ror_snapshot(both_batches(), pb, &first);
    g_iteration2 = constructive_elicitation(both_batches(), pb);
    const double t = seconds_since(t0);
    const RorSnapshot* snaps[2] = {&first, &second};
    const auto& A = problem.alternatives();

    Outcome o;
    int agree = 0, total = 0, borderline_disagreements = 0;
    for (const auto& ref : testdata::kStudentReference) {
        const auto& mat = snaps[ref.iteration - 1]->matrix(ref.kind, ref.level);
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t b = 0; b < 8; ++b) {
                if (a == b) continue;
                ++total;
                if (mat.at(a, b) == ref.at(a, b)) {
                    ++agree;
                    continue;
                }
                const auto& c = mat.checks[a * 8 + b];
                if (c.borderline) ++borderline_disagreements;
                o.notes.push_back(fmt("disagreement: iteration %d %s %s (%s,%s) computed %d reference %d eps* %s%s",
                                      ref.iteration, to_string(ref.kind).c_str(), short_name(ref.level),
                                      A[a].c_str(), A[b].c_str(), int(mat.at(a, b)), int(ref.at(a, b)),
                                      c.feasible ? fmt("%.6g", c.epsilon).c_str() : "infeasible",
                                      c.borderline ? " (borderline)" : ""));
            }
    }
    const int disagreements = total - agree;
    const double rate = double(agree) / double(total);

    bool containment = true, monotone = true;
    for (auto level : kAllLevels)
        for (std::size_t a = 0; a < 8; ++a)
            for (std::size_t b = 0; b < 8; ++b) {
                for (const auto* s : snaps)
                    if (s->matrix(RelationKind::Necessary, level).at(a, b) &&
                        !s->matrix(RelationKind::Possible, level).at(a, b))
                        containment = false;
                if (first.matrix(RelationKind::Necessary, level).at(a, b) &&
                    !second.matrix(RelationKind::Necessary, level).at(a, b))
                    monotone = false;
                if (second.matrix(RelationKind::Possible, level).at(a, b) &&
                    !first.matrix(RelationKind::Possible, level).at(a, b))
                    monotone = false;
            }

    bool direction = true;
    int highlighted = 0, highlighted_in_diff = 0;
    for (const auto& d : second.diff)
        if (!d.lost_necessary.empty() || !d.gained_possible.empty()) direction = false;
    for (const auto& h : testdata::kStudentHighlights) {
        const auto& d = second.diff[level_index(h.level)];
        const auto& list = h.kind == RelationKind::Necessary ? d.gained_necessary : d.lost_possible;
        for (const auto& c : h.cells) {
            ++highlighted;
            const std::pair<std::size_t, std::size_t> cell{c.a, c.b};
            if (std::find(list.begin(), list.end(), cell) != list.end()) {
                ++highlighted_in_diff;
            } else {
                o.notes.push_back(fmt("highlighted %s %s (%s,%s) is not in the computed diff",
                                      to_string(h.kind).c_str(), short_name(h.level), A[c.a].c_str(),
                                      A[c.b].c_str()));
            }
        }
    }

    const bool agreement_gate = rate >= 0.95 && borderline_disagreements == disagreements;
    const bool property_gates = containment && monotone && direction && highlighted_in_diff == highlighted;
    o.pass = agreement_gate && property_gates && t < 60.0;
    o.summary = fmt("agreement %.1f%% (%d/%d), %d disagreements of which %d borderline; containment %s, "
                    "monotonicity %s, diff direction %s, highlighted cells in diff %d/%d; %.2f s",
                    100.0 * rate, agree, total, disagreements, borderline_disagreements, containment ? "ok" : "broken",
                    monotone ? "ok" : "broken", direction ? "ok" : "broken", highlighted_in_diff, highlighted, t);
    return o;
}

Outcome p7_lp() {
    std::mt19937 rng(4242);
    double worst = 0.0;
    bool deterministic = true, solved = true;
    for (int i = 0; i < 50; ++i) {
        const auto lp = oracle::random_small_lp(rng);
        const auto model = lp.to_model();
        const auto s = solve(model);
        const auto grid = lp.grid_maximum();
        if (s.status != LPStatus::Optimal || !grid) {
            solved = false;
            continue;
        }
        worst = std::max(worst, std::abs(s.objective_value - *grid));
        for (int r = 0; r < 3; ++r) {
            const auto again = solve(model);
            if (std::memcmp(&again.objective_value, &s.objective_value, sizeof(double)) != 0 ||
                again.assignment != s.assignment)
                deterministic = false;
        }
    }
    Outcome o;
    o.pass = solved && worst <= 1e-4 && deterministic;
    o.summary = fmt("50 models, max |simplex - grid| = %.3g, repeated solves %s", worst,
                    deterministic ? "identical" : "differ");
    return o;
}

Outcome p8_validation() {
    Outcome o;
    bool accepted = true;
    for (const auto* r : {&g_iteration1, &g_iteration2}) {
        if (!r->parameters) {
            accepted = false;
            continue;
        }
        const auto report = validate(*r->parameters);
        const auto general = validate(to_general(*r->parameters));
        if (!report.ok() || !general.ok()) accepted = false;
        for (const auto& v : report.violations) o.notes.push_back("unexpected violation: " + v.description);
    }
    TwoAdditiveBicapacity bad(2);
    bad.set_a_plus(0, 0.1);
    bad.set_a_plus(1, 0.9);
    bad.set_a_minus(0, 0.5);
    bad.set_a_minus(1, 0.5);
    bad.set_opp_plus(0, 1, -0.2);
    const auto report = validate(bad);
    const bool rejected = !report.ok();
    for (const auto& v : report.violations) o.notes.push_back("violation example: " + v.description);
    o.pass = accepted && rejected;
    o.summary = fmt("elicited parameter sets %s, violation example %s", accepted ? "accepted" : "rejected",
                    rejected ? "rejected" : "accepted");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"P1", p1_preference_vector}, {"P2", p2_general_equivalence}, {"P3", p3_symmetry},
        {"P4", p4_restoration},       {"P5", p5_procedure},          {"P6", p6_ror},
        {"P7", p7_lp},                {"P8", p8_validation},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("exception: ") + e.what();
        }
        std::printf("%s %s: %s\n", name, o.pass ? "PASS" : "FAIL", o.summary.c_str());
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        if (!o.pass) ++failed;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
