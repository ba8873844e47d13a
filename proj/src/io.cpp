#include "bipromethee/io.hpp"

#include <fstream>
#include <sstream>

#include "bipromethee/errors.hpp"

namespace bipromethee::io {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string str_field(const json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_string()) throw ValidationError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double num(const json& v, const std::string& what) {
    if (!v.is_number()) throw ValidationError(what + " must be a number");
    return v.get<double>();
}

CriterionSpec criterion_from_json(const json& c) {
    CriterionSpec spec;
    spec.id = str_field(c, "id");
    const std::string dir = c.value("direction", std::string("gain"));
    if (dir == "gain" || dir == "max") spec.direction = Direction::Gain;
    else if (dir == "cost" || dir == "min") spec.direction = Direction::Cost;
    else throw ValidationError("unknown direction '" + dir + "'");
    const std::string shape = c.value("shape", std::string("linear"));
    if (shape == "linear") spec.shape = Shape::Linear;
    else if (shape == "usual") spec.shape = Shape::Usual;
    else throw ValidationError("unknown shape '" + shape + "'");
    if (c.contains("q")) spec.q = num(c.at("q"), "q");
    if (c.contains("p")) spec.p = num(c.at("p"), "p");
    else if (spec.shape == Shape::Linear) throw ValidationError("linear criterion '" + spec.id + "' needs p");
    return spec;
}

json criterion_to_json(const CriterionSpec& c) {
    return {{"id", c.id},
            {"direction", c.direction == Direction::Gain ? "gain" : "cost"},
            {"q", c.q},
            {"p", c.p},
            {"shape", c.shape == Shape::Linear ? "linear" : "usual"}};
}

std::pair<std::size_t, std::size_t> parse_index_pair(const std::string& key, char sep, std::size_t n) {
    const auto pos = key.find(sep);
    if (pos == std::string::npos) throw ValidationError("malformed key '" + key + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        const auto a = std::stoul(key.substr(0, pos), &used1);
        const auto rest = key.substr(pos + 1);
        const auto b = std::stoul(rest, &used2);
        if (used1 != pos || used2 != rest.size()) throw std::invalid_argument("trailing");
        if (a >= n || b >= n || a == b) throw ValidationError("key '" + key + "' out of range");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError("malformed key '" + key + "'");
    }
}

std::vector<double> number_array(const json& j, std::size_t n, const char* key) {
    if (!j.contains(key)) return std::vector<double>(n, 0.0);
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != n)
        throw ValidationError(std::string("'") + key + "' must be an array of length n");
    std::vector<double> out;
    for (const auto& v : a) out.push_back(num(v, key));
    return out;
}

std::size_t alt(const json& j, const char* key, const DecisionProblem& p) {
    return p.alternative_index(str_field(j, key));
}
std::size_t crit(const json& v, const DecisionProblem& p) {
    if (!v.is_string()) throw ValidationError("criterion reference must be a string id");
    return p.criterion_index(v.get<std::string>());
}
std::size_t crit(const json& j, const char* key, const DecisionProblem& p) { return crit(field(j, key), p); }

std::pair<std::size_t, std::size_t> crit_pair(const json& j, const char* key, const DecisionProblem& p) {
    const auto& v = field(j, key);
    if (!v.is_array() || v.size() != 2)
        throw ValidationError(std::string("'") + key + "' must be a two-element array");
    return {crit(v[0], p), crit(v[1], p)};
}

InteractionKind interaction_kind(const std::string& s) {
    if (s == "synergy") return InteractionKind::Synergy;
    if (s == "redundancy") return InteractionKind::Redundancy;
    if (s == "none") return InteractionKind::None;
    throw ValidationError("unknown interaction sign '" + s + "'");
}

std::string interaction_kind_name(InteractionKind k) {
    switch (k) {
        case InteractionKind::Synergy: return "synergy";
        case InteractionKind::Redundancy: return "redundancy";
        case InteractionKind::None: return "none";
    }
    return "none";
}

json pair_list(const CellList& cells, const DecisionProblem& p) {
    json out = json::array();
    for (const auto& [a, b] : cells) out.push_back({p.alternatives()[a], p.alternatives()[b]});
    return out;
}

json step_status(const StepTrace& s) {
    if (!s.ran) return "skipped";
    return to_string(s.status);
}

}  // namespace

DecisionProblem problem_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("problem must be a JSON object");
    const auto& cj = field(j, "criteria");
    const auto& aj = field(j, "alternatives");
    const auto& ej = field(j, "evaluations");
    if (!cj.is_array() || !aj.is_array() || !ej.is_array())
        throw ValidationError("criteria, alternatives and evaluations must be arrays");
    std::vector<CriterionSpec> criteria;
    for (const auto& c : cj) criteria.push_back(criterion_from_json(c));
    std::vector<std::string> alternatives;
    for (const auto& a : aj) {
        if (!a.is_string()) throw ValidationError("alternative ids must be strings");
        alternatives.push_back(a.get<std::string>());
    }
    std::vector<std::vector<double>> evaluations;
    for (const auto& row : ej) {
        if (!row.is_array()) throw ValidationError("evaluation rows must be arrays");
        std::vector<double> r;
        for (const auto& v : row) r.push_back(num(v, "evaluation"));
        evaluations.push_back(std::move(r));
    }
    return DecisionProblem(std::move(criteria), std::move(alternatives), std::move(evaluations));
}

json problem_to_json(const DecisionProblem& problem) {
    json criteria = json::array();
    for (const auto& c : problem.criteria()) criteria.push_back(criterion_to_json(c));
    json evaluations = json::array();
    for (std::size_t a = 0; a < problem.alternative_count(); ++a) {
        json row = json::array();
        for (std::size_t j = 0; j < problem.criterion_count(); ++j) row.push_back(problem.evaluation(a, j));
        evaluations.push_back(row);
    }
    return {{"criteria", criteria}, {"alternatives", problem.alternatives()}, {"evaluations", evaluations}};
}

DecisionProblem problem_from_csv(const std::string& csv_text, const json& criteria) {
    const json& list = criteria.is_object() ? field(criteria, "criteria") : criteria;
    if (!list.is_array()) throw ValidationError("criteria sidecar must be an array");
    std::map<std::string, CriterionSpec> by_id;
    for (const auto& c : list) {
        auto spec = criterion_from_json(c);
        by_id[spec.id] = spec;
    }

    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        return cells;
    };

    std::istringstream in(csv_text);
    std::string line;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) header = split(line);
    if (header.size() < 2) throw ValidationError("CSV header needs an id column and at least one criterion");

    std::vector<CriterionSpec> specs;
    for (std::size_t i = 1; i < header.size(); ++i) {
        auto it = by_id.find(header[i]);
        if (it == by_id.end()) throw ValidationError("criterion '" + header[i] + "' missing from sidecar");
        specs.push_back(it->second);
    }
    std::vector<std::string> alternatives;
    std::vector<std::vector<double>> evaluations;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw ValidationError("CSV row '" + line + "' has the wrong number of cells");
        alternatives.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cells[i], &used));
                if (used != cells[i].size()) throw std::invalid_argument("trailing");
            } catch (const std::logic_error&) {
                throw ValidationError("non-numeric CSV cell '" + cells[i] + "'");
            }
        }
        evaluations.push_back(std::move(row));
    }
    return DecisionProblem(std::move(specs), std::move(alternatives), std::move(evaluations));
}

TwoAdditiveBicapacity bicapacity_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("bicapacity must be a JSON object");
    const auto& nj = field(j, "n");
    if (!nj.is_number_unsigned() || nj.get<std::size_t>() == 0)
        throw ValidationError("'n' must be a positive integer");
    const std::size_t n = nj.get<std::size_t>();
    if (n > kMaxGeneralCriteria) throw CapacityError("bicapacity too large");
    TwoAdditiveBicapacity b(n);
    const auto ap = number_array(j, n, "a_plus");
    const auto am = number_array(j, n, "a_minus");
    for (std::size_t i = 0; i < n; ++i) {
        b.set_a_plus(i, ap[i]);
        b.set_a_minus(i, am[i]);
    }
    auto read_map = [&](const char* key, char sep, auto setter) {
        if (!j.contains(key)) return;
        const auto& m = j.at(key);
        if (!m.is_object()) throw ValidationError(std::string("'") + key + "' must be an object");
        for (const auto& [k, v] : m.items()) {
            const auto [a, c] = parse_index_pair(k, sep, n);
            setter(a, c, num(v, key));
        }
    };
    read_map("pair_plus", ',', [&](auto a, auto c, double v) { b.set_pair_plus(a, c, v); });
    read_map("pair_minus", ',', [&](auto a, auto c, double v) { b.set_pair_minus(a, c, v); });
    read_map("opp_plus", '|', [&](auto a, auto c, double v) { b.set_opp_plus(a, c, v); });
    read_map("opp_minus", '|', [&](auto a, auto c, double v) { b.set_opp_minus(a, c, v); });
    return b;
}

json bicapacity_to_json(const TwoAdditiveBicapacity& b) {
    const std::size_t n = b.size();
    json ap = json::array(), am = json::array();
    json pp = json::object(), pm = json::object(), op = json::object(), om = json::object();
    for (std::size_t j = 0; j < n; ++j) {
        ap.push_back(b.a_plus(j));
        am.push_back(b.a_minus(j));
        for (std::size_t k = j + 1; k < n; ++k) {
            const auto key = std::to_string(j) + "," + std::to_string(k);
            pp[key] = b.pair_plus(j, k);
            pm[key] = b.pair_minus(j, k);
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const auto key = std::to_string(j) + "|" + std::to_string(k);
            op[key] = b.opp_plus(j, k);
            om[key] = b.opp_minus(j, k);
        }
    }
    return {{"n", n}, {"a_plus", ap}, {"a_minus", am}, {"pair_plus", pp},
            {"pair_minus", pm}, {"opp_plus", op}, {"opp_minus", om}};
}

std::vector<double> weights_from_json(const json& j, const DecisionProblem& problem) {
    std::vector<double> w(problem.criterion_count(), 0.0);
    if (j.is_array()) {
        if (j.size() != w.size()) throw ValidationError("weights array must have one entry per criterion");
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = num(j[i], "weight");
    } else if (j.is_object()) {
        if (j.size() != w.size()) throw ValidationError("weights object must name every criterion");
        for (const auto& [k, v] : j.items()) w[problem.criterion_index(k)] = num(v, "weight");
    } else {
        throw ValidationError("weights must be an array or an object keyed by criterion id");
    }
    return w;
}

PreferenceStatement statement_from_json(const json& j, const DecisionProblem& p) {
    const std::string type = str_field(j, "type");
    PreferenceStatement s = [&]() -> PreferenceStatement {
        if (type == "local_preference") return LocalPreference{alt(j, "a", p), alt(j, "b", p)};
        if (type == "local_indifference") return LocalIndifference{alt(j, "a", p), alt(j, "b", p)};
        if (type == "p1_preference") return P1Preference{alt(j, "a", p), alt(j, "b", p)};
        if (type == "p1_indifference") return P1Indifference{alt(j, "a", p), alt(j, "b", p)};
        if (type == "p2_preference") return P2Preference{alt(j, "a", p), alt(j, "b", p)};
        if (type == "p2_indifference") return P2Indifference{alt(j, "a", p), alt(j, "b", p)};
        if (type == "intensity_preference")
            return IntensityPreference{alt(j, "a", p), alt(j, "b", p), alt(j, "c", p), alt(j, "d", p)};
        if (type == "intensity_indifference")
            return IntensityIndifference{alt(j, "a", p), alt(j, "b", p), alt(j, "c", p), alt(j, "d", p)};
        if (type == "criterion_more_important") return CriterionMoreImportant{crit(j, "j", p), crit(j, "k", p)};
        if (type == "criterion_equally_important")
            return CriterionEquallyImportant{crit(j, "j", p), crit(j, "k", p)};
        if (type == "interaction_sign")
            return InteractionSign{crit(j, "j", p), crit(j, "k", p), interaction_kind(str_field(j, "sign"))};
        if (type == "interaction_stronger" || type == "interaction_equal") {
            const auto [a, b] = crit_pair(j, "pair1", p);
            const auto [c, d] = crit_pair(j, "pair2", p);
            if (type == "interaction_stronger") return InteractionStronger{a, b, c, d};
            return InteractionEqual{a, b, c, d};
        }
        if (type == "opposing_power_greater") {
            const std::string mode = str_field(j, "mode");
            OppositionMode m;
            if (mode == "vary_opponent") m = OppositionMode::VaryOpponent;
            else if (mode == "vary_holder") m = OppositionMode::VaryHolder;
            else throw ValidationError("unknown opposing power mode '" + mode + "'");
            return OpposingPowerGreater{m, crit(j, "pivot", p), crit(j, "greater", p), crit(j, "lesser", p)};
        }
        throw ValidationError("unknown statement type '" + type + "'");
    }();
    validate_statement(s, p.alternative_count(), p.criterion_count());
    return s;
}

json statement_to_json(const PreferenceStatement& s, const DecisionProblem& p) {
    const auto& A = p.alternatives();
    auto C = [&](std::size_t j) { return p.criteria()[j].id; };
    auto two = [&](const char* type, std::size_t a, std::size_t b) {
        return json{{"type", type}, {"a", A[a]}, {"b", A[b]}};
    };
    auto four = [&](const char* type, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        return json{{"type", type}, {"a", A[a]}, {"b", A[b]}, {"c", A[c]}, {"d", A[d]}};
    };
    return std::visit(
        overloaded{
            [&](const LocalPreference& x) { return two("local_preference", x.a, x.b); },
            [&](const LocalIndifference& x) { return two("local_indifference", x.a, x.b); },
            [&](const P1Preference& x) { return two("p1_preference", x.a, x.b); },
            [&](const P1Indifference& x) { return two("p1_indifference", x.a, x.b); },
            [&](const P2Preference& x) { return two("p2_preference", x.a, x.b); },
            [&](const P2Indifference& x) { return two("p2_indifference", x.a, x.b); },
            [&](const IntensityPreference& x) { return four("intensity_preference", x.a, x.b, x.c, x.d); },
            [&](const IntensityIndifference& x) { return four("intensity_indifference", x.a, x.b, x.c, x.d); },
            [&](const CriterionMoreImportant& x) {
                return json{{"type", "criterion_more_important"}, {"j", C(x.j)}, {"k", C(x.k)}};
            },
            [&](const CriterionEquallyImportant& x) {
                return json{{"type", "criterion_equally_important"}, {"j", C(x.j)}, {"k", C(x.k)}};
            },
            [&](const InteractionSign& x) {
                return json{{"type", "interaction_sign"}, {"j", C(x.j)}, {"k", C(x.k)},
                            {"sign", interaction_kind_name(x.sign)}};
            },
            [&](const InteractionStronger& x) {
                return json{{"type", "interaction_stronger"}, {"pair1", {C(x.j), C(x.k)}}, {"pair2", {C(x.p), C(x.q)}}};
            },
            [&](const InteractionEqual& x) {
                return json{{"type", "interaction_equal"}, {"pair1", {C(x.j), C(x.k)}}, {"pair2", {C(x.p), C(x.q)}}};
            },
            [&](const OpposingPowerGreater& x) {
                return json{{"type", "opposing_power_greater"},
                            {"mode", x.mode == OppositionMode::VaryOpponent ? "vary_opponent" : "vary_holder"},
                            {"pivot", C(x.pivot)}, {"greater", C(x.greater)}, {"lesser", C(x.lesser)}};
            },
        },
        s);
}

std::vector<PreferenceStatement> statements_from_json(const json& j, const DecisionProblem& problem) {
    const json& list = j.is_object() && j.contains("statements") ? j.at("statements") : j;
    if (!list.is_array()) throw ValidationError("statements must be a JSON array");
    std::vector<PreferenceStatement> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        try {
            out.push_back(statement_from_json(list[i], problem));
        } catch (const ValidationError& e) {
            throw ValidationError("statement " + std::to_string(i) + ": " + e.what());
        } catch (const LookupError& e) {
            throw ValidationError("statement " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

json statements_to_json(const std::vector<PreferenceStatement>& s, const DecisionProblem& problem) {
    json out = json::array();
    for (const auto& x : s) out.push_back(statement_to_json(x, problem));
    return out;
}

json flows_to_json(const std::vector<FlowTriple>& flows, const DecisionProblem& problem) {
    json out = json::object();
    for (std::size_t a = 0; a < flows.size(); ++a)
        out[problem.alternatives()[a]] = {
            {"phi_plus", flows[a].positive}, {"phi_minus", flows[a].negative}, {"phi_net", flows[a].net}};
    return out;
}

std::vector<FlowTriple> flows_from_json(const json& j, const DecisionProblem& problem) {
    if (!j.is_object() || j.size() != problem.alternative_count())
        throw ValidationError("flows must be an object with one entry per alternative");
    std::vector<FlowTriple> out(problem.alternative_count());
    for (const auto& [id, v] : j.items()) {
        auto& f = out[problem.alternative_index(id)];
        f.positive = num(field(v, "phi_plus"), "phi_plus");
        f.negative = num(field(v, "phi_minus"), "phi_minus");
        f.net = num(field(v, "phi_net"), "phi_net");
    }
    return out;
}

json ranking_to_json(const std::vector<FlowTriple>& flows, const DecisionProblem& problem) {
    const auto& A = problem.alternatives();
    json groups = json::array();
    for (const auto& g : promethee2_ranking(flows)) {
        json ids = json::array();
        for (auto a : g) ids.push_back(A[a]);
        groups.push_back(ids);
    }
    const auto p1 = outranking_structure(flows, ExploitationLevel::Promethee1);
    json matrix = json::array();
    for (std::size_t a = 0; a < A.size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < A.size(); ++b)
            row.push_back(a == b ? std::string("I") : std::string(1, symbol(p1.at(a, b))));
        matrix.push_back(row);
    }
    return {{"alternatives", A}, {"promethee2", groups}, {"promethee1", matrix},
            {"flows", flows_to_json(flows, problem)}};
}

json elicitation_to_json(const ElicitationResult& r, const std::vector<PreferenceStatement>& statements,
                         const DecisionProblem& problem) {
    json trace = json::array();
    for (const auto& s : r.steps) {
        json step{{"level", to_string(s.level)}, {"status", step_status(s)}, {"passed", s.passed}};
        step["epsilon"] = s.ran && s.status == LPStatus::Optimal ? json(s.epsilon) : json(nullptr);
        trace.push_back(step);
    }
    json hint = json::array();
    for (const auto& subset : r.infeasibility_hint) {
        json idx = json::array(), st = json::array();
        for (auto i : subset) {
            idx.push_back(i);
            st.push_back(statement_to_json(statements[i], problem));
        }
        hint.push_back({{"conflict", idx}, {"statements", st}});
    }
    return {{"level", to_string(r.level)},
            {"epsilon", r.epsilon},
            {"step_trace", trace},
            {"parameters", r.parameters ? bicapacity_to_json(*r.parameters) : json(nullptr)},
            {"infeasibility_hint", hint},
            {"removal_candidates", r.removal_candidates}};
}

std::string matrix_key(RelationKind kind, ExploitationLevel level) {
    return to_string(kind) + "_" + to_string(level);
}

json snapshot_to_json(const RorSnapshot& s, const DecisionProblem& problem) {
    const auto& A = problem.alternatives();
    json matrices = json::object();
    json borderline = json::array();
    for (const auto& m : s.matrices) {
        const auto key = matrix_key(m.kind, m.level);
        json rows = json::array();
        for (std::size_t a = 0; a < m.m; ++a) {
            json row = json::array();
            for (std::size_t b = 0; b < m.m; ++b) {
                row.push_back(m.at(a, b) ? 1 : 0);
                if (a != b && !m.checks.empty() && m.checks[a * m.m + b].borderline)
                    borderline.push_back({{"matrix", key}, {"a", A[a]}, {"b", A[b]},
                                          {"epsilon", m.checks[a * m.m + b].epsilon}});
            }
            rows.push_back(row);
        }
        matrices[key] = rows;
    }
    json diff = nullptr;
    if (s.has_previous) {
        diff = json::object();
        for (const char* name : {"gained_necessary", "lost_necessary", "gained_possible", "lost_possible"})
            diff[name] = json::object();
        for (auto level : kAllLevels) {
            const auto& d = s.diff[level_index(level)];
            const auto l = to_string(level);
            diff["gained_necessary"][l] = pair_list(d.gained_necessary, problem);
            diff["lost_necessary"][l] = pair_list(d.lost_necessary, problem);
            diff["gained_possible"][l] = pair_list(d.gained_possible, problem);
            diff["lost_possible"][l] = pair_list(d.lost_possible, problem);
        }
    }
    return {{"iteration", s.iteration},
            {"alternatives", A},
            {"diagonal", "false by convention"},
            {"statements", statements_to_json(s.statements, problem)},
            {"matrices", matrices},
            {"diff", diff},
            {"diagnostics", {{"borderline", borderline}}}};
}

RorSnapshot snapshot_from_json(const json& j, const DecisionProblem& problem) {
    RorSnapshot s;
    const auto& it = field(j, "iteration");
    if (!it.is_number_unsigned()) throw ValidationError("'iteration' must be a non-negative integer");
    s.iteration = it.get<std::size_t>();
    s.statements = statements_from_json(field(j, "statements"), problem);
    const std::size_t m = problem.alternative_count();
    const auto& mats = field(j, "matrices");
    for (auto kind : {RelationKind::Necessary, RelationKind::Possible})
        for (auto level : kAllLevels) {
            RelationMatrix rm(kind, level, m);
            rm.checks.clear();
            const auto& rows = field(mats, matrix_key(kind, level).c_str());
            if (!rows.is_array() || rows.size() != m) throw ValidationError("matrix has the wrong size");
            for (std::size_t a = 0; a < m; ++a) {
                if (!rows[a].is_array() || rows[a].size() != m) throw ValidationError("matrix has the wrong size");
                for (std::size_t b = 0; b < m; ++b) rm.cells[a * m + b] = rows[a][b].get<int>() != 0;
            }
            s.matrix(kind, level) = std::move(rm);
        }
    const auto& diff = field(j, "diff");
    if (!diff.is_null()) {
        s.has_previous = true;
        auto cells = [&](const char* name, ExploitationLevel level) {
            CellList out;
            for (const auto& pr : field(field(diff, name), to_string(level).c_str()))
                out.emplace_back(problem.alternative_index(pr.at(0).get<std::string>()),
                                 problem.alternative_index(pr.at(1).get<std::string>()));
            return out;
        };
        for (auto level : kAllLevels) {
            auto& d = s.diff[level_index(level)];
            d.gained_necessary = cells("gained_necessary", level);
            d.lost_necessary = cells("lost_necessary", level);
            d.gained_possible = cells("gained_possible", level);
            d.lost_possible = cells("lost_possible", level);
        }
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json_file(const std::string& path) {
    const auto text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace bipromethee::io
