#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "bipromethee/errors.hpp"
#include "bipromethee/http.hpp"
#include "bipromethee/io.hpp"
#include "bipromethee/ror.hpp"
#include "bipromethee/service.hpp"

namespace {

using namespace bipromethee;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInconsistent = 3;

struct Options {
    std::string problem;
    std::string criteria;
    std::vector<std::string> statements;
    std::string bicapacity;
    std::string weights;
    double eps_threshold = kDefaultEpsThreshold;
    std::string format = "json";
    std::string out;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string store_dir = "sessions";
    bool ephemeral = false;
    std::string static_dir;
    unsigned threads = 0;
};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

DecisionProblem load_problem(const Options& o) {
    if (ends_with(o.problem, ".csv")) {
        if (o.criteria.empty()) throw ValidationError("CSV problems need --criteria");
        return io::problem_from_csv(io::read_file(o.problem), io::read_json_file(o.criteria));
    }
    return io::problem_from_json(io::read_json_file(o.problem));
}

/// Each --statements file is one batch; a file holding an array of arrays
/// contributes one batch per inner array.
std::vector<std::vector<PreferenceStatement>> load_batches(const Options& o, const DecisionProblem& p) {
    std::vector<std::vector<PreferenceStatement>> batches;
    for (const auto& path : o.statements) {
        const auto j = io::read_json_file(path);
        if (j.is_array() && !j.empty() && j.front().is_array())
            for (const auto& inner : j) batches.push_back(io::statements_from_json(inner, p));
        else
            batches.push_back(io::statements_from_json(j, p));
    }
    return batches;
}

std::vector<double> load_weights(const std::string& spec, const DecisionProblem& p) {
    std::ifstream probe(spec);
    if (probe) return io::weights_from_json(io::read_json_file(spec), p);
    std::vector<double> w;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            w.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw ValidationError("--weights must be a JSON file or a comma-separated list of numbers");
        }
    }
    if (w.size() != p.criterion_count()) throw ValidationError("--weights needs one value per criterion");
    return w;
}

std::vector<FlowTriple> compute_flows(const Options& o, const DecisionProblem& p) {
    if (!o.bicapacity.empty() && !o.weights.empty())
        throw ValidationError("give either --bicapacity or --weights, not both");
    if (!o.bicapacity.empty()) {
        const auto b = io::bicapacity_from_json(io::read_json_file(o.bicapacity));
        if (b.size() != p.criterion_count()) throw ValidationError("bicapacity size does not match the problem");
        const auto report = validate(b);
        if (!report.ok()) {
            std::string msg = "bicapacity is not valid:";
            for (const auto& v : report.violations) msg += "\n  " + v.description;
            throw ValidationError(msg);
        }
        return bipolar_flows(p, b);
    }
    if (!o.weights.empty()) return classical_flows(p, load_weights(o.weights, p));
    throw ValidationError("flows and rank need --bicapacity or --weights");
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        io::write_file(o.out, text.empty() || text.back() == '\n' ? text : text + "\n");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string flows_table(const std::vector<FlowTriple>& flows, const DecisionProblem& p) {
    std::ostringstream os;
    os << std::left << std::setw(12) << "alternative" << std::right << std::setw(12) << "phi+"
       << std::setw(12) << "phi-" << std::setw(12) << "phi" << '\n';
    for (std::size_t a = 0; a < flows.size(); ++a)
        os << std::left << std::setw(12) << p.alternatives()[a] << std::right << std::setw(12)
           << fmt(flows[a].positive) << std::setw(12) << fmt(flows[a].negative) << std::setw(12)
           << fmt(flows[a].net) << '\n';
    return os.str();
}

std::string rank_table(const std::vector<FlowTriple>& flows, const DecisionProblem& p) {
    std::ostringstream os;
    const auto& A = p.alternatives();
    os << "PROMETHEE II:";
    std::size_t pos = 1;
    for (const auto& g : promethee2_ranking(flows)) {
        os << "\n  " << pos << ".";
        for (auto a : g) os << ' ' << A[a];
        pos += g.size();
    }
    os << "\n\nPROMETHEE I (P preferred, - preferred by, I indifferent, R incomparable):\n";
    const auto s = outranking_structure(flows, ExploitationLevel::Promethee1);
    os << std::setw(8) << "";
    for (const auto& id : A) os << std::setw(6) << id;
    os << '\n';
    for (std::size_t a = 0; a < A.size(); ++a) {
        os << std::setw(8) << A[a];
        for (std::size_t b = 0; b < A.size(); ++b) os << std::setw(6) << (a == b ? 'I' : symbol(s.at(a, b)));
        os << '\n';
    }
    return os.str();
}

std::string elicitation_table(const ElicitationResult& r, const DecisionProblem& p) {
    std::ostringstream os;
    os << "level: " << to_string(r.level) << "\nepsilon: " << fmt(r.epsilon) << "\nsteps:\n";
    for (const auto& s : r.steps) {
        os << "  " << std::left << std::setw(18) << to_string(s.level) << std::right;
        if (!s.ran) os << "skipped";
        else if (s.status != LPStatus::Optimal) os << to_string(s.status);
        else os << "eps = " << fmt(s.epsilon) << (s.passed ? "  pass" : "  fail");
        os << '\n';
    }
    if (r.parameters) {
        const auto& b = *r.parameters;
        const auto id = [&](std::size_t j) { return p.criteria()[j].id; };
        os << "parameters:\n";
        for (std::size_t j = 0; j < b.size(); ++j) os << "  a(" << id(j) << ") = " << fmt(b.a_plus(j)) << '\n';
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t k = j + 1; k < b.size(); ++k)
                os << "  a(" << id(j) << "," << id(k) << ") = " << fmt(b.pair_plus(j, k)) << '\n';
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                if (j != k)
                    os << "  a+(" << id(j) << "|" << id(k) << ") = " << fmt(b.opp_plus(j, k)) << "   a-("
                       << id(j) << "|" << id(k) << ") = " << fmt(b.opp_minus(j, k)) << '\n';
    }
    for (const auto& subset : r.infeasibility_hint) {
        os << "conflicting statements:";
        for (auto i : subset) os << ' ' << i;
        os << '\n';
    }
    if (!r.removal_candidates.empty()) {
        os << "removing any one of these restores consistency:";
        for (auto i : r.removal_candidates) os << ' ' << i;
        os << '\n';
    }
    return os.str();
}

std::string snapshot_table(const RorSnapshot& s, const DecisionProblem& p) {
    std::ostringstream os;
    const auto& A = p.alternatives();
    os << "iteration " << s.iteration << (s.has_previous ? "  (* = changed since previous)" : "") << '\n';
    for (const auto& m : s.matrices) {
        std::set<std::pair<std::size_t, std::size_t>> marked;
        if (s.has_previous) {
            const auto& d = s.diff[level_index(m.level)];
            const auto& a = m.kind == RelationKind::Necessary ? d.gained_necessary : d.gained_possible;
            const auto& b = m.kind == RelationKind::Necessary ? d.lost_necessary : d.lost_possible;
            marked.insert(a.begin(), a.end());
            marked.insert(b.begin(), b.end());
        }
        os << '\n' << io::matrix_key(m.kind, m.level) << '\n' << std::setw(8) << "";
        for (const auto& id : A) os << std::setw(5) << id;
        os << '\n';
        for (std::size_t a = 0; a < m.m; ++a) {
            os << std::setw(8) << A[a];
            for (std::size_t b = 0; b < m.m; ++b)
                os << std::setw(4) << (m.at(a, b) ? '1' : '0') << (marked.count({a, b}) ? '*' : ' ');
            os << '\n';
        }
    }
    return os.str();
}

int run_flows(const Options& o, bool rank) {
    const auto p = load_problem(o);
    const auto flows = compute_flows(o, p);
    if (o.format == "table") emit(o, rank ? rank_table(flows, p) : flows_table(flows, p));
    else emit(o, (rank ? io::ranking_to_json(flows, p) : io::flows_to_json(flows, p)).dump(2));
    return kExitOk;
}

int run_elicit(const Options& o) {
    const auto p = load_problem(o);
    if (o.statements.empty()) throw ValidationError("elicit needs --statements");
    std::vector<PreferenceStatement> all;
    for (auto& b : load_batches(o, p)) all.insert(all.end(), b.begin(), b.end());
    const BipolarPreferenceMatrix pb(p);
    const auto r = constructive_elicitation(all, pb, {o.eps_threshold});
    if (o.format == "table") emit(o, elicitation_table(r, p));
    else emit(o, io::elicitation_to_json(r, all, p).dump(2));
    return r.level == ModelLevel::Inconsistent ? kExitInconsistent : kExitOk;
}

int run_ror(const Options& o) {
    const auto p = load_problem(o);
    if (o.statements.empty()) throw ValidationError("ror needs --statements");
    const auto batches = load_batches(o, p);
    const BipolarPreferenceMatrix pb(p);
    const RorOptions ropts{o.eps_threshold, o.threads};

    std::vector<PreferenceStatement> in_force;
    std::vector<RorSnapshot> snaps;
    json out = json::array();
    std::string table;
    int code = kExitOk;
    for (std::size_t i = 0; i <= batches.size(); ++i) {
        if (i > 0) in_force.insert(in_force.end(), batches[i - 1].begin(), batches[i - 1].end());
        const auto r = constructive_elicitation(in_force, pb, {o.eps_threshold});
        json entry;
        if (r.level == ModelLevel::Inconsistent) {
            entry = {{"iteration", i}, {"snapshot", nullptr}};
            code = kExitInconsistent;
        } else {
            snaps.push_back(ror_snapshot(in_force, pb, snaps.empty() ? nullptr : &snaps.back(), ropts));
            snaps.back().iteration = i;
            entry = io::snapshot_to_json(snaps.back(), p);
            table += snapshot_table(snaps.back(), p) + "\n";
        }
        entry["elicitation"] = io::elicitation_to_json(r, in_force, p);
        table += "elicitation after iteration " + std::to_string(i) + ":\n" + elicitation_table(r, p) + "\n";
        out.push_back(entry);
        if (code == kExitInconsistent) break;
    }
    emit(o, o.format == "table" ? table : out.dump(2));
    return code;
}

int run_serve(const Options& o) {
    std::unique_ptr<service::SessionStore> store;
    if (o.ephemeral) store = std::make_unique<service::MemoryStore>();
    else store = std::make_unique<service::DirectoryStore>(o.store_dir);
    service::SessionService svc(std::move(store), {o.eps_threshold, std::chrono::milliseconds(2000), o.threads});
    std::cerr << "listening on http://" << o.host << ":" << o.port << '\n';
    if (!service::run_server(svc, {o.host, o.port, o.static_dir})) {
        std::cerr << "error: cannot listen on " << o.host << ":" << o.port << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bipolar PROMETHEE with 2-additive bicapacities: flows, elicitation and robust ordinal regression"};
    app.require_subcommand(1);
    Options o;

    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--problem", o.problem, "Problem JSON, or CSV together with --criteria")->required();
        sub->add_option("--criteria", o.criteria, "Criteria sidecar JSON for CSV problems");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--out", o.out, "Output file (default stdout)");
    };
    auto add_statements = [&](CLI::App* sub) {
        sub->add_option("--statements", o.statements, "Statements JSON; repeat for successive iterations")
            ->required();
        sub->add_option("--eps-threshold", o.eps_threshold, "Smallest epsilon treated as positive")
            ->check(CLI::PositiveNumber);
    };

    auto* flows = app.add_subcommand("flows", "Positive, negative and net flows");
    auto* rank = app.add_subcommand("rank", "PROMETHEE I and II rankings");
    for (auto* sub : {flows, rank}) {
        add_problem(sub);
        sub->add_option("--bicapacity", o.bicapacity, "Bicapacity JSON");
        sub->add_option("--weights", o.weights, "Classical weights: JSON file or comma-separated list");
    }
    auto* elicit = app.add_subcommand("elicit", "Find the simplest model compatible with the statements");
    add_problem(elicit);
    add_statements(elicit);
    auto* ror = app.add_subcommand("ror", "Necessary and possible relations per iteration");
    add_problem(ror);
    add_statements(ror);
    ror->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    auto* serve = app.add_subcommand("serve", "Run the session HTTP service");
    serve->add_option("--port", o.port, "Port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", o.host, "Bind address");
    serve->add_option("--store-dir", o.store_dir, "Directory holding session files");
    serve->add_flag("--ephemeral", o.ephemeral, "Keep sessions in memory only");
    serve->add_option("--static-dir", o.static_dir, "Directory served at /");
    serve->add_option("--eps-threshold", o.eps_threshold, "Smallest epsilon treated as positive")
        ->check(CLI::PositiveNumber);
    serve->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*flows) return run_flows(o, false);
        if (*rank) return run_flows(o, true);
        if (*elicit) return run_elicit(o);
        if (*ror) return run_ror(o);
        if (*serve) return run_serve(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
