#include "tdpair/io.hpp"

#include <fstream>
#include <sstream>

#include "tdpair/errors.hpp"

namespace tdpair {

Json field_to_json(const Field& f) {
    if (f.kind() == FieldKind::Rational) return Json{{"type", "rational"}};
    if (f.kind() == FieldKind::Prime) return Json{{"type", "gfp"}, {"p", f.characteristic()}};
    return Json{{"type", "quadratic"}, {"description", f.describe()}};
}

const Field& field_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError("field: expected an object with a string \"type\"");
    std::string t = j["type"];
    if (t == "rational") return Field::rational();
    if (t == "gfp") {
        if (!j.contains("p") || !j["p"].is_number_unsigned())
            throw ParseError("field: \"gfp\" needs a positive integer \"p\"");
        std::uint64_t p = j["p"];
        if (!is_prime(p)) throw ParseError("field: p = " + std::to_string(p) + " is not prime");
        return Field::prime(p);
    }
    throw ParseError("field: unknown type \"" + t + "\"");
}

const Field& field_from_spec(const std::string& spec) {
    if (spec == "rational" || spec == "Q") return Field::rational();
    if (spec.rfind("gfp:", 0) == 0) {
        std::string num = spec.substr(4);
        std::uint64_t p = 0;
        std::istringstream is(num);
        if (num.empty() || !(is >> p) || !is.eof()) throw ParseError("field spec: bad prime \"" + num + "\"");
        if (!is_prime(p)) throw ParseError("field spec: " + num + " is not prime");
        return Field::prime(p);
    }
    throw ParseError("field spec: expected \"rational\" or \"gfp:P\", got \"" + spec + "\"");
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
        rows.push_back(std::move(row));
    }
    return Json{{"field", field_to_json(m.field())}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("matrix document: expected a JSON object");
    if (!j.contains("field")) throw ParseError("matrix document: missing \"field\"");
    if (!j.contains("rows") || !j["rows"].is_array()) throw ParseError("matrix document: missing array \"rows\"");
    const Field& f = field_from_json(j["field"]);
    const Json& rows = j["rows"];
    if (rows.empty()) throw ParseError("matrix document: no rows (dimension must be positive)");
    std::size_t cols = 0;
    std::vector<Vector> data;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Json& row = rows[r];
        if (!row.is_array()) throw ParseError("matrix document: row " + std::to_string(r) + " is not an array");
        if (r == 0) cols = row.size();
        if (row.size() != cols || cols == 0)
            throw ParseError("matrix document: row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(cols));
        Vector v;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (!row[c].is_string())
                throw ParseError("matrix document: entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                 ") is not a string");
            std::string tok = row[c];
            try {
                v.push_back(Scalar::parse(f, tok, true));
            } catch (const Error& e) {
                throw ParseError("matrix document: entry (" + std::to_string(r) + ", " + std::to_string(c) + ") \"" +
                                 tok + "\": " + e.what());
            }
        }
        data.push_back(std::move(v));
    }
    return Matrix::from_rows(f, data);
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<Scalar> parse_scalar_list(const Field& f, const std::string& text) {
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        std::string t = b == std::string::npos ? "" : tok.substr(b, e - b + 1);
        try {
            out.push_back(Scalar::parse(f, t, false));
        } catch (const Error& err) {
            throw ParseError("list entry \"" + t + "\": " + err.what());
        }
    }
    if (out.empty()) throw ParseError("empty list");
    return out;
}

Json scalars_to_json(const std::vector<Scalar>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.to_string());
    return a;
}

namespace {

Json opt_scalar(const std::optional<Scalar>& s) { return s ? Json(s->to_string()) : Json(nullptr); }

Json sizes(const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

Json bools(const std::vector<bool>& v) {
    Json a = Json::array();
    for (bool x : v) a.push_back(x);
    return a;
}

}  // namespace

Json parameters_to_json(const ParameterSet& p) {
    return Json{{"beta", p.beta.to_string()},
                {"gamma", p.gamma.to_string()},
                {"gamma_star", p.gamma_star.to_string()},
                {"varrho", p.varrho.to_string()},
                {"varrho_star", p.varrho_star.to_string()},
                {"unique", p.unique}};
}

Json level_to_json(const LevelValue& v) {
    return Json{{"status", to_string(v.status)}, {"value", opt_scalar(v.value)}};
}

Json recurrence_to_json(const RecurrenceClass& c) {
    return Json{{"d", c.d},
                {"distinct_where_required", c.distinct_where_required},
                {"repeated_consecutive", sizes(c.repeated_consecutive)},
                {"is_recurrent", c.is_recurrent},
                {"ratio", opt_scalar(c.ratio)},
                {"beta", level_to_json(c.beta)},
                {"gamma", level_to_json(c.gamma)},
                {"varrho", level_to_json(c.varrho)},
                {"raw_three_term_solvable", c.raw_three_term_solvable}};
}

Json fit_to_json(const ClosedFormFit& fit) {
    Json alpha = Json::array();
    for (const auto& a : fit.alpha) alpha.push_back(a.to_string());
    return Json{{"case", to_string(fit.kase)},
                {"q", opt_scalar(fit.q)},
                {"alpha", alpha},
                {"extension_used", fit.extension_used},
                {"field", fit.field().describe()}};
}

Json verification_to_json(const VerificationReport& rep) {
    Json j{{"is_td_pair", rep.is_td_pair},
           {"failure_reason", rep.is_td_pair ? Json(nullptr) : Json(to_string(rep.failure_reason))},
           {"detail", rep.detail},
           {"irreducibility_certificate", rep.is_td_pair ? Json(to_string(rep.irreducibility_certificate))
                                                         : Json(nullptr)},
           {"ordering_count", rep.orderings.size()}};
    if (rep.is_td_pair) {
        j["d"] = rep.orderings.front().d();
        j["delta"] = rep.orderings.front().delta();
    }
    return j;
}

Json relations_to_json(const RelationReport& rep) {
    return Json{{"relation_a_holds", rep.relation_a_holds},
                {"relation_a_star_holds", rep.relation_a_star_holds},
                {"specialization", to_string(rep.specialization)},
                {"b", opt_scalar(rep.b)},
                {"b_star", opt_scalar(rep.b_star)},
                {"q", opt_scalar(rep.q)}};
}

Json conjectures_to_json(const ConjectureReport& rep) {
    Json fact = rep.factorization ? sizes(*rep.factorization) : Json(nullptr);
    return Json{{"rho_bound", rep.rho_bound_holds},
                {"spanning",
                 {{"verdict", rep.spanning.verdict ? Json(*rep.spanning.verdict) : Json(nullptr)},
                  {"quantifier_caveat", rep.spanning.quantifier_caveat},
                  {"words", rep.spanning.words}}},
                {"factorization", fact},
                {"implications_consistent", rep.implications_consistent},
                {"all_hold", rep.all_hold()}};
}

Json analysis_to_json(const OrderingAnalysis& an) {
    Json profile = Json::array();
    for (const auto& e : an.profile)
        profile.push_back(Json{{"i", e.i},
                               {"j", e.j},
                               {"rank_r", e.rank_r},
                               {"rank_l", e.rank_l},
                               {"r_injective", e.r_injective},
                               {"r_surjective", e.r_surjective},
                               {"l_injective", e.l_injective},
                               {"l_surjective", e.l_surjective}});
    Json checks = Json::object();
    for (const auto& c : an.checks) checks[c.name] = !c.applicable ? "n/a" : c.passed ? "pass" : "fail";
    Json bases = Json::array();
    for (const auto& u : an.rl.sp.u) {
        Json vs = Json::array();
        for (const auto& v : u.vectors()) vs.push_back(scalars_to_json(v));
        bases.push_back(std::move(vs));
    }
    return Json{{"ordering", an.ordering_index},
                {"theta", scalars_to_json(an.theta)},
                {"theta_star", scalars_to_json(an.theta_star)},
                {"shape", sizes(an.rl.sp.rho)},
                {"parameters", parameters_to_json(an.relations.params)},
                {"relations", relations_to_json(an.relations)},
                {"recurrence", recurrence_to_json(an.recurrence)},
                {"recurrence_star", recurrence_to_json(an.recurrence_star)},
                {"epsilon", scalars_to_json(an.rl.epsilon)},
                {"qform_q", opt_scalar(an.qform_q)},
                {"rank_profile", profile},
                {"conjectures", conjectures_to_json(an.conjectures)},
                {"checks", checks},
                {"all_checks_pass", an.all_checks_pass()},
                {"basis_dependent",
                 {{"split_bases", bases},
                  {"spanning_per_basis_vector", bools(an.conjectures.spanning.per_basis_vector)},
                  {"spanning_random_combinations", bools(an.conjectures.spanning.random_combinations)}}}};
}

namespace {

std::string join(const std::vector<Scalar>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].to_string();
    return s;
}

std::string join(const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
    return s;
}

}  // namespace

std::string analysis_to_text(const VerificationReport& rep, const std::vector<OrderingAnalysis>& analyses) {
    std::ostringstream os;
    os << "TD pair: " << (rep.is_td_pair ? "yes" : "no") << "\n";
    if (!rep.is_td_pair) {
        os << "failure: " << to_string(rep.failure_reason) << " (" << rep.detail << ")\n";
        return os.str();
    }
    os << "d = delta = " << rep.orderings.front().d() << ", irreducibility: "
       << to_string(rep.irreducibility_certificate) << ", orderings: " << rep.orderings.size() << "\n";
    for (const auto& an : analyses) {
        const auto& p = an.relations.params;
        os << "\nordering " << an.ordering_index << "\n";
        os << "  theta       " << join(an.theta) << "\n";
        os << "  theta*      " << join(an.theta_star) << "\n";
        os << "  shape       " << join(an.rl.sp.rho) << "\n";
        os << "  beta        " << p.beta.to_string() << (p.unique ? "" : "  (canonical, not unique)") << "\n";
        os << "  gamma       " << p.gamma.to_string() << "    gamma* " << p.gamma_star.to_string() << "\n";
        os << "  varrho      " << p.varrho.to_string() << "    varrho* " << p.varrho_star.to_string() << "\n";
        os << "  relations   A: " << (an.relations.relation_a_holds ? "hold" : "FAIL")
           << "  A*: " << (an.relations.relation_a_star_holds ? "hold" : "FAIL") << "  ("
           << to_string(an.relations.specialization) << ")\n";
        os << "  epsilon     " << join(an.rl.epsilon) << "\n";
        const auto& c = an.conjectures;
        os << "  conjectures rho bound " << (c.rho_bound_holds ? "yes" : "no") << ", spanning "
           << (c.spanning.verdict ? (*c.spanning.verdict ? "yes" : "no") : "mixed") << ", factorization "
           << (c.factorization ? "[" + join(*c.factorization) + "]" : "none") << "\n";
        auto failed = an.failed_checks();
        os << "  checks      " << an.checks.size() << " run, " << failed.size() << " failed";
        for (const auto& f : failed) os << " " << f;
        os << "\n";
    }
    return os.str();
}

Json scan_instance_to_json(const ScanInstance& inst, const Field& f) {
    (void)f;
    Json ords = Json::array();
    for (const auto& an : inst.analyses) {
        Json conj = conjectures_to_json(an.conjectures);
        conj.erase("spanning");
        conj["spanning"] = an.conjectures.spanning.verdict ? Json(*an.conjectures.spanning.verdict) : Json(nullptr);
        ords.push_back(Json{{"ordering", an.ordering_index},
                            {"theta", scalars_to_json(an.theta)},
                            {"theta_star", scalars_to_json(an.theta_star)},
                            {"parameters", parameters_to_json(an.relations.params)},
                            {"specialization", to_string(an.relations.specialization)},
                            {"epsilon", scalars_to_json(an.rl.epsilon)},
                            {"qform_q", opt_scalar(an.qform_q)},
                            {"conjectures", conj},
                            {"failed_checks", an.failed_checks()}});
    }
    Json j{{"type", "instance"},
           {"trial", inst.trial},
           {"a", matrix_to_json(inst.a)},
           {"a_star", matrix_to_json(inst.a_star)},
           {"d", inst.verification.orderings.front().d()},
           {"shape", inst.analyses.empty() ? Json(nullptr) : sizes(inst.analyses.front().rl.sp.rho)},
           {"irreducibility_certificate", to_string(inst.verification.irreducibility_certificate)},
           {"orderings", ords},
           {"all_checks_pass", inst.all_checks_pass()},
           {"conjecture_failure", inst.conjecture_failure()}};
    if (inst.pipeline_error) j["pipeline_error"] = *inst.pipeline_error;
    return j;
}

Json generalized_to_json(const GeneralizedWitness& w) {
    return Json{{"type", "generalized_non_td"},
                {"trial", w.trial},
                {"a", matrix_to_json(w.a)},
                {"a_star", matrix_to_json(w.a_star)},
                {"failure_reason", to_string(w.failure_reason)},
                {"parameters", parameters_to_json(w.params)}};
}

Json scan_summary_to_json(const ScanResult& res) {
    const auto& s = res.summary;
    const auto& c = res.config;
    Json cfg{{"p", c.p}, {"n", c.n}, {"trials", c.trials}, {"seed", c.seed}};
    cfg["mode"] = c.mode == ScanMode::QFormInstances ? "qform" : "random";
    if (c.mode == ScanMode::QFormInstances) cfg["q"] = c.q;
    return Json{{"type", "summary"},
                {"config", cfg},
                {"candidates", s.candidates},
                {"diagonalizable", s.diagonalizable},
                {"path_ordered", s.path_ordered},
                {"irreducible", s.irreducible},
                {"accepted", s.accepted},
                {"inconclusive", s.inconclusive},
                {"thin", s.thin},
                {"non_thin", s.non_thin},
                {"check_failures", s.check_failures},
                {"conjecture_failures", s.conjecture_failures},
                {"pipeline_errors", s.pipeline_errors},
                {"generalized_non_td", s.generalized_non_td},
                {"trial_errors", s.trial_errors}};
}

std::string scan_to_ndjson(const ScanResult& res) {
    std::string out;
    const Field& f = Field::prime(res.config.p);
    for (const auto& inst : res.accepted) out += scan_instance_to_json(inst, f).dump() + "\n";
    for (const auto& w : res.generalized) out += generalized_to_json(w).dump() + "\n";
    out += scan_summary_to_json(res).dump() + "\n";
    return out;
}

}  // namespace tdpair
