// Batch front end: every computation of the library behind one verb each,
// with plain-text output by default and --json for machine consumption.
// Exit codes: 0 success, 1 domain error (error name on stderr), 2 usage.

#include "CLI11.hpp"
#include "json.hpp"

#include "neckcut/frobenius.hpp"
#include "neckcut/gmatrix.hpp"
#include "neckcut/skein.hpp"
#include "neckcut/symfun.hpp"

#include <iostream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace neckcut;

namespace {

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text << "\n";
    }
}

void run_dual_basis(int n, bool as_json) {
    FrobSystem sys = FrobSystem::universal(n);
    DualBasis pairs = sys.dual_basis();
    std::string text = "{";
    json jpairs = json::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) text += ", ";
        text += "(" + pairs[i].first.str() + ", " + pairs[i].second.str() + ")";
        jpairs.push_back({pairs[i].first.str(), pairs[i].second.str()});
    }
    text += "}";
    emit({{"n", n}, {"pairs", jpairs}}, as_json, text);
}

void run_genus_term(int n, bool as_json) {
    FrobSystem sys = FrobSystem::universal(n);
    std::string g = sys.genus_term().str();
    std::string eps = sys.epsilon(sys.genus_term()).str();
    emit({{"n", n}, {"g", g}, {"epsilon", eps}}, as_json,
         "g = " + g + "\neps(g) = " + eps);
}

void run_surface_eval(int n, int genus, const std::string& mark_text, bool as_json) {
    FrobSystem sys = FrobSystem::universal(n);
    AElement mark = sys.reduce(MultiPoly::parse(sys.extended(), mark_text));
    MultiPoly value = sys.closed_surface_eval(genus, mark);
    emit({{"n", n},
          {"genus", genus},
          {"mark", mark.str()},
          {"value", value.str()}},
         as_json, value.str());
}

void run_gmatrix(int n, int power, bool symmetric, bool as_json) {
    if (symmetric) {
        if (power != 1) throw UsageError("the symmetric form does not take --power");
        SymGMatrix m = g_matrix_symmetric(n);
        json rows = json::array();
        for (int i = 1; i <= n; ++i) {
            json row = json::array();
            for (int j = 1; j <= n; ++j) row.push_back(m.entry(i, j).str());
            rows.push_back(row);
        }
        emit({{"n", n}, {"symmetric", true}, {"entries", rows}}, as_json, m.str());
        return;
    }
    GMatrix m = n == 2 && power > 1 ? g2_power(static_cast<unsigned>(power))
                                    : g_matrix_recursive(n);
    if (n != 2) {
        GMatrix base = m;
        for (int k = 1; k < power; ++k) m = m * base;
    }
    json rows = json::array();
    for (int i = 1; i <= n; ++i) {
        json row = json::array();
        for (int j = 1; j <= n; ++j) row.push_back(m.entry(i, j).str());
        rows.push_back(row);
    }
    emit({{"n", n}, {"symmetric", false}, {"power", power}, {"entries", rows}}, as_json,
         m.str());
}

void run_roots_check(const std::vector<int>& mults, bool as_json) {
    bool ok = check_g_square_zero(mults);
    std::string parts;
    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (i) parts += ",";
        parts += std::to_string(mults[i]);
    }
    emit({{"multiplicities", mults}, {"g_square_zero", ok}}, as_json,
         "multiplicities: " + parts + "\ng^2 = 0: " + (ok ? "true" : "false"));
}

void run_product_system(const std::vector<int>& mults, bool as_json) {
    bool crt_ok = crt_map_check(mults);
    ProductSystem ps(mults);
    ProductSystem::Element sq = ps.mul(ps.g_prime(), ps.g_prime());
    bool gsq_zero = ps.is_zero(sq);
    emit({{"multiplicities", mults},
          {"crt_map", crt_ok},
          {"g_prime", ps.str(ps.g_prime())},
          {"g_prime_square_zero", gsq_zero}},
         as_json,
         "g' = " + ps.str(ps.g_prime()) + "\ncrt map: " +
             (crt_ok ? "ok" : "FAILED") +
             "\ng'^2 = 0: " + (gsq_zero ? "true" : "false"));
}

void run_symcheck(int n, bool as_json) {
    std::string text;
    json items = json::array();
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= n; ++b) {
            unsigned ua = static_cast<unsigned>(a), ub = static_cast<unsigned>(b),
                     un = static_cast<unsigned>(n);
            SymPoly product = sym_mul(SymPoly::p(ua, un), SymPoly::e(ub, un));
            bool ok = verify_product_identities(ua, ub, un);
            std::string line = "p_" + std::to_string(a) + " * e_" + std::to_string(b) +
                               " = " + product.str() + (ok ? "" : "  [MISMATCH]");
            if (!text.empty()) text += "\n";
            text += line;
            items.push_back(
                {{"a", a}, {"b", b}, {"product", product.str()}, {"identity", ok}});
        }
    }
    emit({{"n", n}, {"identities", items}}, as_json, text);
}

void run_skein_normalize(const std::string& config_text, bool as_json) {
    SphereConfig cfg = SphereConfig::parse(config_text);
    NormalForm nf = normalize_config(cfg);
    json qx = json::array();
    for (const MultiPoly& c : nf.qx()) qx.push_back(c.str());
    emit({{"config", cfg.str()},
          {"x_coefficients", qx},
          {"e_coefficient", nf.ecoeff().str()},
          {"text", nf.str()}},
         as_json, nf.str());
}

void run_lambda_f(const std::vector<int>& mults, int power, bool as_json) {
    FrobSystem sys = specialize_roots(mults);
    std::string text;
    json roots = json::array();
    for (int r = 1; r <= static_cast<int>(mults.size()); ++r) {
        AbstractSurface surface{{AbstractComponent::marked_f(static_cast<unsigned>(power))}};
        MultiPoly value = lambda_F_eval(surface, sys, r);
        bool functional_zero = neckcut_functional_check(mults, r);
        if (!text.empty()) text += "\n";
        text += "root " + std::to_string(r) + ": lambda_F(F x^" + std::to_string(power) +
                ") = " + value.str() +
                ", functional-zero = " + (functional_zero ? "true" : "false");
        roots.push_back({{"root", r},
                         {"value", value.str()},
                         {"functional_zero", functional_zero}});
    }
    emit({{"multiplicities", mults}, {"power", power}, {"roots", roots}}, as_json, text);
}

void run_witness(int genus, bool as_json) {
    TubeParams params = tube_params_for_genus(static_cast<unsigned>(genus));
    DependenceWitness w = dependence_witness(static_cast<unsigned>(genus), params);
    bool match = w.lhs == w.rhs;
    emit({{"genus", genus},
          {"t_plain", params.t_plain.str()},
          {"t_dot", params.t_dot.str()},
          {"lhs", w.lhs.str()},
          {"rhs", w.rhs.str()},
          {"match", match}},
         as_json,
         "t_plain = " + params.t_plain.str() + "\nt_dot = " + params.t_dot.str() +
             "\nlhs = " + w.lhs.str() + "\nrhs = " + w.rhs.str() +
             "\nmatch: " + (match ? "true" : "false"));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculator for universal Frobenius extensions and the "
                 "rank-2 sphere skein module"};
    app.require_subcommand(1);

    struct {
        int n = 2;
        int genus = 0;
        int power = 1;
        std::string mark = "1";
        std::string config;
        std::vector<int> mults;
        bool symmetric = false;
        bool json_out = false;
    } opt;

    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", opt.json_out, "JSON output"); };

    CLI::App* dual = app.add_subcommand("dual-basis", "dual basis pairs (x_i, y_i)");
    dual->add_option("--n", opt.n, "rank of the extension")->required()->check(CLI::Range(2, 12));
    add_json(dual);
    dual->callback([&] { run_dual_basis(opt.n, opt.json_out); });

    CLI::App* gterm = app.add_subcommand("genus-term", "genus-reduction term g and eps(g)");
    gterm->add_option("--n", opt.n, "rank of the extension")->required()->check(CLI::Range(2, 12));
    add_json(gterm);
    gterm->callback([&] { run_genus_term(opt.n, opt.json_out); });

    CLI::App* seval = app.add_subcommand("surface-eval",
                                         "eps(mark * g^genus) for a closed marked surface");
    seval->add_option("--n", opt.n, "rank of the extension")->required()->check(CLI::Range(2, 8));
    seval->add_option("--genus", opt.genus, "genus of the surface")->check(CLI::Range(0, 10));
    seval->add_option("--mark", opt.mark, "mark polynomial in x and a1..an (default 1)");
    add_json(seval);
    seval->callback([&] { run_surface_eval(opt.n, opt.genus, opt.mark, opt.json_out); });

    CLI::App* gmat = app.add_subcommand("gmatrix", "genus-reduction matrix G_n");
    gmat->add_option("--n", opt.n, "rank of the extension")->required()->check(CLI::Range(2, 8));
    gmat->add_option("--power", opt.power, "matrix power (a-form only)")->check(CLI::Range(1, 8));
    gmat->add_flag("--symmetric", opt.symmetric, "entries in the monomial symmetric basis");
    add_json(gmat);
    gmat->callback([&] { run_gmatrix(opt.n, opt.power, opt.symmetric, opt.json_out); });

    CLI::App* roots = app.add_subcommand("roots-check",
                                         "g^2 = 0 test for a repeated-root specialization");
    roots->add_option("--multiplicities", opt.mults, "root multiplicities k1,k2,...")
        ->required()
        ->delimiter(',');
    add_json(roots);
    roots->callback([&] { run_roots_check(opt.mults, opt.json_out); });

    CLI::App* prod = app.add_subcommand("product-system",
                                        "block form: CRT map and the product genus term");
    prod->add_option("--multiplicities", opt.mults, "root multiplicities k1,k2,...")
        ->required()
        ->delimiter(',');
    add_json(prod);
    prod->callback([&] { run_product_system(opt.mults, opt.json_out); });

    CLI::App* sym = app.add_subcommand("symcheck",
                                       "power-times-elementary products in the monomial basis");
    sym->add_option("--n", opt.n, "number of variables")->required()->check(CLI::Range(1, 8));
    add_json(sym);
    sym->callback([&] { run_symcheck(opt.n, opt.json_out); });

    CLI::App* skein = app.add_subcommand("skein-normalize",
                                         "normal form of a sphere configuration");
    skein->add_option("--config", opt.config, "comma-separated marks, e.g. d,p,p (or 1)")
        ->required();
    add_json(skein);
    skein->callback([&] { run_skein_normalize(opt.config, opt.json_out); });

    CLI::App* lf = app.add_subcommand("lambda-f",
                                      "lambda_F of the marked fiber and the functional check");
    lf->add_option("--multiplicities", opt.mults, "root multiplicities k1,k2,...")
        ->required()
        ->delimiter(',');
    lf->add_option("--power", opt.power, "x-power on the F component")->check(CLI::Range(0, 12));
    add_json(lf);
    lf->callback([&] { run_lambda_f(opt.mults, opt.power, opt.json_out); });

    CLI::App* wit = app.add_subcommand("witness",
                                       "dependence witness for the genus-i tube relations");
    wit->add_option("--genus", opt.genus, "tube genus parameter i")->check(CLI::Range(0, 4));
    add_json(wit);
    wit->callback([&] { run_witness(opt.genus, opt.json_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
