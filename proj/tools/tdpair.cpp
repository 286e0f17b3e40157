// tdpair command line front end.
//
// Exit codes: 0 success / property true, 1 property false, 2 invalid input,
// 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "tdpair/errors.hpp"
#include "tdpair/io.hpp"

using namespace tdpair;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInput = 2;
constexpr int kInternal = 3;

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

void check_dim(const Matrix& m, const std::string& what) {
    std::size_t cap = max_dim_from_env();
    if (m.rows() != m.cols()) throw ParseError(what + ": matrix is not square");
    if (m.rows() > cap)
        throw InvalidArgument(what + ": dimension " + std::to_string(m.rows()) + " exceeds TDPAIR_MAX_DIM = " +
                              std::to_string(cap));
}

std::pair<Matrix, Matrix> load_pair(const std::string& pa, const std::string& ps) {
    Matrix a = read_matrix_file(pa);
    Matrix as = read_matrix_file(ps);
    check_dim(a, pa);
    check_dim(as, ps);
    if (a.field() != as.field()) throw ParseError("A and A* are declared over different fields");
    if (a.rows() != as.rows()) throw ParseError("A and A* have different sizes");
    return {std::move(a), std::move(as)};
}

Json pair_document(const Matrix& a, const Matrix& as) {
    return Json{{"a", matrix_to_json(a)}, {"a_star", matrix_to_json(as)}};
}

// Writes the pair either as two MatrixDocuments or as one combined document.
void emit_pair(const Matrix& a, const Matrix& as, const std::string& out_a, const std::string& out_as,
               const std::string& output) {
    if (out_a.empty() != out_as.empty()) throw InvalidArgument("give both --out-a and --out-astar, or neither");
    if (!out_a.empty()) {
        emit(pretty(matrix_to_json(a)), out_a);
        emit(pretty(matrix_to_json(as)), out_as);
        return;
    }
    emit(pretty(pair_document(a, as)), output);
}

struct Common {
    std::string output;
    bool text = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_text) {
    cmd->add_option("-o,--output", c.output, "Write to PATH instead of standard output");
    if (with_text) {
        auto* t = cmd->add_flag("--text", c.text, "Human-readable output");
        cmd->add_flag("--json", "Machine-readable JSON (default)")->excludes(t);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification and analysis of tridiagonal pairs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tdpair 0.1.0");

    // verify
    Common verify_opts;
    std::string v_a, v_as;
    auto* verify = app.add_subcommand("verify", "Decide whether (A, A*) is a TD pair");
    verify->add_option("A", v_a, "MatrixDocument for A")->required();
    verify->add_option("ASTAR", v_as, "MatrixDocument for A*")->required();
    add_common(verify, verify_opts, true);

    // analyze
    Common an_opts;
    std::string an_a, an_as;
    long long an_ordering = -1;
    auto* analyze = app.add_subcommand("analyze", "Full analysis of a TD pair");
    analyze->add_option("A", an_a, "MatrixDocument for A")->required();
    analyze->add_option("ASTAR", an_as, "MatrixDocument for A*")->required();
    analyze->add_option("--ordering", an_ordering,
                        "Only this ordering (bit 0 reverses E, bit 1 reverses E*)");
    add_common(analyze, an_opts, true);

    // generate
    auto* generate = app.add_subcommand("generate", "Write generated matrix pairs");
    generate->require_subcommand(1);
    Common gen_opts;
    std::string gen_out_a, gen_out_as;
    std::size_t sl2_d = 1;
    std::string sl2_coeffs = "1,1,0", sl2_scale = "1";
    std::optional<std::uint64_t> sl2_conj;
    auto* sl2 = generate->add_subcommand("sl2", "A = s·h, A* = ce·e + cf·f + ch·h on the (d+1)-dim sl2 module");
    sl2->add_option("--d", sl2_d, "Diameter")->required();
    sl2->add_option("--coeffs", sl2_coeffs, "ce,cf,ch (rationals)");
    sl2->add_option("--scale", sl2_scale, "s (rational)");
    sl2->add_option("--conjugate", sl2_conj, "Conjugate both by a random invertible matrix from this seed");
    sl2->add_option("--out-a", gen_out_a, "Write A here");
    sl2->add_option("--out-astar", gen_out_as, "Write A* here");
    add_common(sl2, gen_opts, false);

    std::uint64_t qf_p = 7;
    std::size_t qf_d = 3;
    long long qf_q = 3, qf_a = 0, qf_b = 1, qf_as = 0, qf_cs = 1;
    auto* qform = generate->add_subcommand(
        "qform", "A = diag(a + b q^i), A* tridiagonal with diagonal a* + c* q^-i and unit off-diagonal, over GF(p)");
    qform->add_option("--p", qf_p, "Prime")->required();
    qform->add_option("--d", qf_d, "Diameter")->required();
    qform->add_option("--q", qf_q, "q, of multiplicative order > d")->required();
    qform->add_option("--a", qf_a);
    qform->add_option("--b", qf_b);
    qform->add_option("--a-star", qf_as);
    qform->add_option("--c-star", qf_cs);
    qform->add_option("--out-a", gen_out_a, "Write A here");
    qform->add_option("--out-astar", gen_out_as, "Write A* here");
    add_common(qform, gen_opts, false);

    // recurrence
    Common rec_opts;
    std::string rec_seq, rec_field = "rational";
    auto* recurrence = app.add_subcommand("recurrence", "Classify a sequence and fit its closed form");
    recurrence->add_option("--seq", rec_seq, "Comma separated terms, e.g. 1,2,4,8")->required();
    recurrence->add_option("--field", rec_field, "rational or gfp:P");
    add_common(recurrence, rec_opts, true);

    // rewrite
    Common rw_opts;
    std::string rw_word, rw_theta, rw_theta_star, rw_field = "rational";
    std::size_t rw_r = 0, rw_s = 0, rw_d = 0;
    auto* rewrite = app.add_subcommand("rewrite", "Expand F_r B_1...B_n F_s in terms of R, L and F_s");
    rewrite->add_option("--word", rw_word, "Letters A or A*, comma separated")->required();
    rewrite->add_option("--r", rw_r)->required();
    rewrite->add_option("--s", rw_s)->required();
    rewrite->add_option("--d", rw_d)->required();
    rewrite->add_option("--theta", rw_theta, "th_0..th_d for numeric coefficients");
    rewrite->add_option("--theta-star", rw_theta_star, "th*_0..th*_d for numeric coefficients");
    rewrite->add_option("--field", rw_field, "rational or gfp:P");
    add_common(rewrite, rw_opts, true);

    // scan
    Common scan_opts;
    ScanConfig sc;
    std::optional<long long> scan_q;
    auto* scan_cmd = app.add_subcommand("scan", "Random search for TD pairs over GF(p)");
    scan_cmd->add_option("--p", sc.p)->required();
    scan_cmd->add_option("--n", sc.n, "Matrix size")->required();
    scan_cmd->add_option("--trials", sc.trials)->required();
    scan_cmd->add_option("--seed", sc.seed)->required();
    scan_cmd->add_option("--qform", scan_q, "Sample q-form candidates with this q");
    scan_cmd->add_option("--threads", sc.threads, "Thread count (default: TDPAIR_THREADS or all)");
    add_common(scan_cmd, scan_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*verify) {
            auto [a, as] = load_pair(v_a, v_as);
            auto rep = verify_td_pair(a, as);
            if (verify_opts.text) {
                std::string line = rep.is_td_pair ? "TD pair (d = " + std::to_string(rep.orderings.front().d()) + ")"
                                                  : std::string("not a TD pair: ") + to_string(rep.failure_reason) +
                                                        " (" + rep.detail + ")";
                emit(line + "\n", verify_opts.output);
            } else {
                emit(pretty(Json{{"verification", verification_to_json(rep)}}), verify_opts.output);
            }
            return rep.is_td_pair ? kTrue : kFalse;
        }

        if (*analyze) {
            auto [a, as] = load_pair(an_a, an_as);
            auto rep = verify_td_pair(a, as);
            std::vector<OrderingAnalysis> analyses;
            if (rep.is_td_pair) {
                if (an_ordering >= 0 && static_cast<std::size_t>(an_ordering) >= rep.orderings.size())
                    throw InvalidArgument("--ordering " + std::to_string(an_ordering) + " out of range (" +
                                          std::to_string(rep.orderings.size()) + " orderings)");
                for (std::size_t k = 0; k < rep.orderings.size(); ++k)
                    if (an_ordering < 0 || static_cast<std::size_t>(an_ordering) == k)
                        analyses.push_back(analyze_ordering(rep.orderings[k], k));
            }
            if (an_opts.text) {
                emit(analysis_to_text(rep, analyses), an_opts.output);
            } else {
                Json j{{"verification", verification_to_json(rep)}};
                if (rep.is_td_pair) {
                    Json ords = Json::array();
                    for (const auto& an : analyses) ords.push_back(analysis_to_json(an));
                    j["orderings"] = std::move(ords);
                }
                emit(pretty(j), an_opts.output);
            }
            return rep.is_td_pair ? kTrue : kFalse;
        }

        if (*sl2) {
            const Field& q = Field::rational();
            auto coeffs = parse_scalar_list(q, sl2_coeffs);
            if (coeffs.size() != 3) throw ParseError("--coeffs needs exactly three values ce,cf,ch");
            if (sl2_d + 1 > max_dim_from_env()) throw InvalidArgument("--d exceeds TDPAIR_MAX_DIM");
            Sl2Spec spec(sl2_d);
            spec.c_e = coeffs[0];
            spec.c_f = coeffs[1];
            spec.c_h = coeffs[2];
            spec.a_scale = Scalar::parse(q, sl2_scale, false);
            auto [a, as] = sl2_module(spec);
            if (sl2_conj) {
                std::mt19937_64 rng(*sl2_conj);
                std::tie(a, as) = conjugate_pair(a, as, random_invertible(q, a.rows(), rng));
            }
            emit_pair(a, as, gen_out_a, gen_out_as, gen_opts.output);
            return kTrue;
        }

        if (*qform) {
            if (!is_prime(qf_p)) throw InvalidArgument("--p must be prime");
            if (qf_d + 1 > max_dim_from_env()) throw InvalidArgument("--d exceeds TDPAIR_MAX_DIM");
            auto [a, as] = qform_instance(qf_p, qf_d, qf_q, qf_a, qf_b, qf_as, qf_cs);
            emit_pair(a, as, gen_out_a, gen_out_as, gen_opts.output);
            return kTrue;
        }

        if (*recurrence) {
            const Field& f = field_from_spec(rec_field);
            auto seq = parse_scalar_list(f, rec_seq);
            auto cls = classify_sequence(seq);
            Json j{{"sequence", scalars_to_json(seq)}, {"classification", recurrence_to_json(cls)}};
            Json fit = nullptr;
            std::string fit_error;
            if (cls.beta.holds() && cls.beta.value && seq.size() >= 2) {
                try {
                    auto cf = fit_closed_form(seq, *cls.beta.value);
                    fit = fit_to_json(cf);
                    fit["field_constraints"] = field_constraints_check(cf, seq.size() - 1, f.characteristic());
                } catch (const InvalidArgument& e) {
                    fit_error = e.what();
                } catch (const Unsupported& e) {
                    fit_error = e.what();
                }
            } else {
                fit_error = "sequence is not beta-recurrent";
            }
            j["fit"] = fit;
            if (!fit_error.empty()) j["fit_error"] = fit_error;
            if (rec_opts.text) {
                std::ostringstream os;
                auto lv = [](const LevelValue& v) {
                    return std::string(to_string(v.status)) + (v.value ? " " + v.value->to_string() : "");
                };
                os << "recurrent " << (cls.is_recurrent ? "yes" : "no") << "\n"
                   << "beta      " << lv(cls.beta) << "\n"
                   << "gamma     " << lv(cls.gamma) << "\n"
                   << "varrho    " << lv(cls.varrho) << "\n";
                if (!fit.is_null()) {
                    os << "case      " << fit["case"].get<std::string>() << "\n";
                    if (!fit["q"].is_null()) os << "q         " << fit["q"].get<std::string>() << "\n";
                } else {
                    os << "fit       " << fit_error << "\n";
                }
                emit(os.str(), rec_opts.output);
            } else {
                emit(pretty(j), rec_opts.output);
            }
            return cls.is_recurrent ? kTrue : kFalse;
        }

        if (*rewrite) {
            auto word = parse_word(rw_word);
            if (word.empty()) throw ParseError("--word: empty word");
            if (rw_r > rw_d || rw_s > rw_d) throw InvalidArgument("--r and --s must lie in [0, d]");
            auto expr = rewrite_word(word, rw_r, rw_s, rw_d);
            Json j{{"word", rw_word},
                   {"r", rw_r},
                   {"s", rw_s},
                   {"d", rw_d},
                   {"expression", expr.render()},
                   {"terms", expr.ordered_words()}};
            if (rw_theta.empty() != rw_theta_star.empty())
                throw InvalidArgument("give both --theta and --theta-star, or neither");
            if (!rw_theta.empty()) {
                const Field& f = field_from_spec(rw_field);
                auto th = parse_scalar_list(f, rw_theta);
                auto ths = parse_scalar_list(f, rw_theta_star);
                if (th.size() != rw_d + 1 || ths.size() != rw_d + 1)
                    throw InvalidArgument("--theta and --theta-star need d+1 values each");
                Json num = Json::object();
                for (const auto& [w, c] : expr.instantiate(th, ths)) num[w.empty() ? "1" : w] = c.to_string();
                j["numeric"] = num;
            }
            if (rw_opts.text) {
                std::string out = expr.render() + (expr.is_zero() ? "" : "  (applied to F_" + std::to_string(rw_s) + ")");
                if (j.contains("numeric")) out += "\nnumeric: " + j["numeric"].dump();
                emit(out + "\n", rw_opts.output);
            } else {
                emit(pretty(j), rw_opts.output);
            }
            return kTrue;
        }

        if (*scan_cmd) {
            if (scan_q) {
                sc.mode = ScanMode::QFormInstances;
                sc.q = *scan_q;
            }
            sc.validate();
            auto res = scan(sc);
            emit(scan_to_ndjson(res), scan_opts.output);
            const auto& s = res.summary;
            return s.check_failures + s.conjecture_failures + s.pipeline_errors + s.trial_errors == 0 ? kTrue
                                                                                                       : kFalse;
        }
    } catch (const ParseError& e) {
        std::cerr << "tdpair: input error: " << e.what() << "\n";
        return kInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "tdpair: invalid argument: " << e.what() << "\n";
        return kInput;
    } catch (const NotSplit& e) {
        std::cerr << "tdpair: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "tdpair: internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "tdpair: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInput;
}
