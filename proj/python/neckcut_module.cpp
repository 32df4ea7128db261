// Python bindings for the main operations: dual bases, genus terms,
// closed-surface evaluations, genus matrices, root-multiplicity criteria,
// symmetric-function identities, and the sphere-skein normal form.  Values
// cross the boundary as strings in the library's polynomial syntax so the
// module needs no wrapper classes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neckcut/frobenius.hpp"
#include "neckcut/gmatrix.hpp"
#include "neckcut/skein.hpp"
#include "neckcut/symfun.hpp"

namespace py = pybind11;
using namespace neckcut;

namespace {

std::vector<std::pair<std::string, std::string>> dual_basis_strings(int n) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [xi, yi] : FrobSystem::universal(n).dual_basis())
        out.emplace_back(xi.str(), yi.str());
    return out;
}

std::string genus_term_string(int n) {
    return FrobSystem::universal(n).genus_term().str();
}

// eps(mark * g^genus) in the rank-n universal system
std::string surface_eval(int n, unsigned genus, const std::string& mark) {
    FrobSystem sys = FrobSystem::universal(n);
    AElement m = sys.reduce(MultiPoly::parse(sys.extended(), mark));
    return sys.epsilon(m * sys.genus_term().pow(genus)).str();
}

std::vector<std::vector<std::string>> g_matrix_strings(int n) {
    return g_matrix_recursive(n).entry_strings();
}

std::vector<std::vector<std::string>> g2_power_strings(unsigned k) {
    return g2_power(k).entry_strings();
}

// normal form of a sphere configuration such as "d,p,p": the list of
// X-power coefficients followed by the coefficient of the generator e
std::pair<std::vector<std::string>, std::string> normalize_parts(const std::string& config) {
    NormalForm nf = normalize_config(SphereConfig::parse(config));
    std::vector<std::string> qx;
    for (const MultiPoly& c : nf.qx()) qx.push_back(c.str());
    return {qx, nf.ecoeff().str()};
}

std::string normalize_string(const std::string& config) {
    return normalize_config(SphereConfig::parse(config)).str();
}

std::pair<std::string, std::string> tube_params_strings(unsigned i) {
    TubeParams params = tube_params_for_genus(i);
    return {params.t_plain.str(), params.t_dot.str()};
}

// both sides of (4 a2 + a1^2)<ppp> = 4 t_dot <p> and whether they agree
std::tuple<std::string, std::string, bool> witness_strings(unsigned i) {
    TubeParams params = tube_params_for_genus(i);
    DependenceWitness w = dependence_witness(i, params);
    return {w.lhs.str(), w.rhs.str(), w.lhs == w.rhs};
}

}  // namespace

PYBIND11_MODULE(neckcut, m) {
    m.doc() = "Exact dual bases, genus-reduction terms, and sphere-skein "
              "normal forms for the extensions Z[a1..an] -> Z[a1..an][x]/(p(x))";

    m.def("dual_basis", &dual_basis_strings, py::arg("n"),
          "Dual-basis pairs (x_i, y_i) of the rank-n universal system, as strings.");
    m.def("genus_term", &genus_term_string, py::arg("n"),
          "The genus-reduction term g = sum x_i y_i = p'(x) mod p, as a string.");
    m.def("surface_eval", &surface_eval, py::arg("n"), py::arg("genus"), py::arg("mark"),
          "eps(mark * g^genus): the closed-surface evaluation of a genus-g "
          "surface marked with the given polynomial.");
    m.def("g_matrix", &g_matrix_strings, py::arg("n"),
          "Entries of the genus-reduction matrix G_n, row-major strings.");
    m.def("g2_power", &g2_power_strings, py::arg("k"),
          "Entries of (G_2)^k, cross-checked against the closed forms.");
    m.def("check_g_square_zero", &check_g_square_zero, py::arg("multiplicities"),
          "True iff g^2 = 0 when p(x) has the given root multiplicities.");
    m.def("crt_map_check", &crt_map_check, py::arg("multiplicities"),
          "Checks the componentwise reduction onto the product of local systems.");
    m.def("product_identity", &verify_product_identities,
          py::arg("a"), py::arg("b"), py::arg("n"),
          "Checks p_a * e_b against its monomial-basis product identity.");
    m.def("normalize", &normalize_string, py::arg("config"),
          "Normal form of a sphere configuration like 'd,p,p', as a string.");
    m.def("normalize_parts", &normalize_parts, py::arg("config"),
          "Normal form split into (X-power coefficients, e coefficient).");
    m.def("neckcut_functional_check", &neckcut_functional_check,
          py::arg("multiplicities"), py::arg("root"),
          "True iff the functional of the given repeated root kills the "
          "neck-cutting combination.");
    m.def("tube_params", &tube_params_strings, py::arg("i"),
          "(t_plain, t_dot) = (eps(g^2i), eps(x g^2i)) in the rank-2 system.");
    m.def("witness", &witness_strings, py::arg("i"),
          "(lhs, rhs, equal) for (4 a2 + a1^2)<ppp> = 4 t_dot <p> at tube genus i.");
}
