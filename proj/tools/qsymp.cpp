// qsymp: exact calculus on the doubled two-vertex quiver — tame symplectic
// automorphisms, Gibbons-Hermsen Hamiltonian flows, Nagao factorization, and
// the seeded verification suites. All arithmetic is exact over Q(i); JSON
// payloads carry numbers as strings.

#include "qsymp/json_io.hpp"
#include "qsymp/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace qsymp;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) { return io::parse_text(read_file(path), path); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_verify(const std::string& suite, const SuiteParams& params, bool as_json) {
    std::vector<VerificationReport> reports;
    if (suite == "all")
        reports = run_all(params);
    else
        reports.push_back(run_suite(suite, params));

    bool all_ok = true;
    json out = json::array();
    for (const auto& rep : reports) {
        all_ok = all_ok && rep.passed();
        if (as_json) {
            out.push_back(io::to_json(rep));
        } else {
            std::cout << rep.suite << ": " << (rep.passed() ? "PASS" : "FAIL") << " ("
                      << rep.trials << " trials, seed " << rep.seed << ")\n";
            for (const auto& f : rep.failures)
                std::cout << "  trial " << f.trial << ": " << f.input << "\n    expected: " << f.expected
                          << "\n    actual:   " << f.actual << "\n";
        }
        std::cerr << "[" << rep.suite << " " << static_cast<long>(rep.elapsed_ms) << " ms]\n";
    }
    if (as_json) emit(out);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symplectic calculus on the doubled two-vertex quiver"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
    std::string suite = "all";
    SuiteParams params;
    bool as_json = false;
    verify->add_option("--suite", suite, "suite name or 'all'")->default_str("all");
    verify->add_option("--n", params.n_max, "largest matrix size n")->default_val(4);
    verify->add_option("--deg", params.deg_max, "degree / word-length budget")->default_val(6);
    verify->add_option("--trials", params.trials, "trial count (-1 = per-suite default)")->default_val(-1);
    verify->add_option("--seed", params.seed, "PRNG seed (reports record it)")->default_val(42);
    verify->add_flag("--json", as_json, "emit reports as JSON");

    // factor
    auto* factor = app.add_subcommand("factor", "alternating amalgamated factorization of a matrix over K[z]");
    std::string factor_file;
    factor->add_option("matrix", factor_file, "PolyMat2 JSON file")->required();

    // imap
    auto* imap = app.add_subcommand("imap", "image of a Gamma element as six generator images");
    std::string gamma_file;
    imap->add_option("gamma", gamma_file, "GammaElem JSON file")->required();

    // act
    auto* act = app.add_subcommand("act", "apply a tame word to a representation point");
    std::string act_word_file, act_point_file;
    act->add_option("--word", act_word_file, "TameWord JSON file")->required();
    act->add_option("--point", act_point_file, "RepPoint JSON file")->required();

    // flow
    auto* flow = app.add_subcommand("flow", "Hamiltonian flow of H(f) or H'(f) for a given time");
    std::string flow_ham_file, flow_time = "1", flow_point_file;
    flow->add_option("--ham", flow_ham_file, "HamSpec JSON file (kind H or Hp)")->required();
    flow->add_option("--time", flow_time, "flow time, an exact scalar")->default_str("1");
    flow->add_option("--point", flow_point_file, "RepPoint JSON file")->required();

    // bracket
    auto* bracket = app.add_subcommand("bracket", "Poisson bracket of two Hamiltonians at a point");
    std::string h1_file, h2_file, bracket_point_file;
    bracket->add_option("--h1", h1_file, "HamSpec JSON file")->required();
    bracket->add_option("--h2", h2_file, "HamSpec JSON file")->required();
    bracket->add_option("--point", bracket_point_file, "RepPoint JSON file")->required();

    // normalize
    auto* normalize = app.add_subcommand("normalize", "move a fiber point into the slice X2 = 0, Y1 = 0");
    std::string norm_point_file;
    uint64_t norm_seed = 0;
    normalize->add_option("--point", norm_point_file, "RepPoint JSON file")->required();
    normalize->add_option("--seed", norm_seed, "seed for generic-position retries")->default_val(0);

    // cm-point
    auto* cm = app.add_subcommand("cm-point", "build a Calogero-Moser point of the moment fiber");
    int cm_n = 1;
    std::string cm_tau = "1";
    std::vector<std::string> cm_x, cm_p;
    cm->add_option("--n", cm_n, "matrix size")->required();
    cm->add_option("--tau", cm_tau, "moment parameter (nonzero)")->default_str("1");
    cm->add_option("--x", cm_x, "distinct abscissae, comma separated")->required()->delimiter(',');
    cm->add_option("--p", cm_p, "momenta, comma separated")->required()->delimiter(',');

    try {
        app.parse(argc, argv);

        if (*verify) return cmd_verify(suite, params, as_json);

        if (*factor) {
            PolyMat2 m = io::polymat2_from_json(load_json(factor_file));
            emit(io::to_json(nagao_decompose(m)));
            return 0;
        }
        if (*imap) {
            GammaElem g = io::gamma_from_json(load_json(gamma_file));
            emit(io::to_json(i_map(g)));
            return 0;
        }
        if (*act) {
            TameWord w = io::tameword_from_json(load_json(act_word_file));
            RepPoint pt = io::point_from_json(load_json(act_point_file));
            emit(io::to_json(act_word(w, pt)));
            return 0;
        }
        if (*flow) {
            HamSpec h = io::ham_from_json(load_json(flow_ham_file));
            RepPoint pt = io::point_from_json(load_json(flow_point_file));
            Scalar t = Scalar::parse(flow_time);
            RepPoint out;
            switch (h.kind) {
                case HamSpec::Kind::H: out = flow_H(h.f, t, pt); break;
                case HamSpec::Kind::Hp: out = flow_Hp(h.f, t, pt); break;
                case HamSpec::Kind::J:
                    throw input_error(
                        "flow: J(k,alpha) is not in the flow API (non-polynomial in general); "
                        "use kind H or Hp, e.g. J(k,e21) = Hp(a*^k b*)");
            }
            emit(io::to_json(out));
            return 0;
        }
        if (*bracket) {
            HamSpec h1 = io::ham_from_json(load_json(h1_file));
            HamSpec h2 = io::ham_from_json(load_json(h2_file));
            RepPoint pt = io::point_from_json(load_json(bracket_point_file));
            std::cout << poisson_bracket(h1, h2, pt).str() << "\n";
            return 0;
        }
        if (*normalize) {
            RepPoint pt = io::point_from_json(load_json(norm_point_file));
            NormalizeResult res = normalize_to_Mn(pt, norm_seed);
            emit(io::to_json(res));
            return 0;
        }
        if (*cm) {
            std::vector<Scalar> xs, ps;
            for (const auto& s : cm_x) xs.push_back(Scalar::parse(s));
            for (const auto& s : cm_p) ps.push_back(Scalar::parse(s));
            emit(io::to_json(cm_point(cm_n, Scalar::parse(cm_tau), xs, ps)));
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const math_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
