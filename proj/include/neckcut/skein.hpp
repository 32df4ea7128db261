#pragma once
// Normal forms in the rank-2 sphere skein module of S^2 x S^1 with the
// constraint 4 a2 + a1^2 = 0.  Configurations are cyclic words of dotted and
// plain spheres; the six local relations reduce every element to the span of
// the even unmarked configurations X^k and the single dotted sphere e.
// Coefficients live in Q[a1] with a2 eliminated as -a1^2/4.
//
// The module also carries the symbolic lambda_F functionals for irreducible
// manifolds (repeated-root systems) and the linear-dependence witness for the
// genus-i fibered family, which works over Q[a1,a2] without the elimination.

#include "neckcut/frobenius.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace neckcut {

enum class SphereMark : char { dot = 'd', plain = 'p' };

// A cyclic word of sphere marks, stored as its lexicographically minimal
// rotation (dot < plain).  The empty configuration is the unit and prints
// as "1"; otherwise the text form is comma-separated marks, e.g. "d,p,p,d".
class SphereConfig {
public:
    SphereConfig() = default;  // empty configuration

    static SphereConfig canonicalize(const std::vector<SphereMark>& word);
    // word spelled with 'd' and 'p' characters
    static SphereConfig from_word(const std::string& word);
    static SphereConfig parse(const std::string& text);

    const std::string& word() const { return word_; }
    std::size_t size() const { return word_.size(); }
    std::size_t dot_count() const;
    bool empty() const { return word_.empty(); }

    std::string str() const;

    bool operator==(const SphereConfig& o) const { return word_ == o.word_; }
    bool operator!=(const SphereConfig& o) const { return word_ != o.word_; }
    bool operator<(const SphereConfig& o) const {
        return word_.size() != o.word_.size() ? word_.size() < o.word_.size()
                                              : word_ < o.word_;
    }

private:
    std::string word_;  // canonical: no rotation is lexicographically smaller
};

// Formal sum of configurations with coefficients in Q[a1]; no zero terms.
class SkeinElement {
public:
    SkeinElement() = default;

    // the shared coefficient ring Q[a1]
    static VarTablePtr coeff_table();
    static SkeinElement zero() { return SkeinElement(); }
    static SkeinElement unit();
    static SkeinElement single(const SphereConfig& config);
    static SkeinElement single(const SphereConfig& config, const MultiPoly& coeff);
    // "coeff * [config] + ..." with polyring coefficient syntax
    static SkeinElement parse(const std::string& text);

    const std::map<SphereConfig, MultiPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    MultiPoly coefficient(const SphereConfig& config) const;

    void add(const SphereConfig& config, const MultiPoly& coeff);
    SkeinElement operator+(const SkeinElement& o) const;
    SkeinElement operator-(const SkeinElement& o) const;
    SkeinElement scaled(const MultiPoly& c) const;
    SkeinElement scaled(const Rational& c) const;

    bool operator==(const SkeinElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const SkeinElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::map<SphereConfig, MultiPoly> terms_;
};

// The reduced image of an element: a polynomial q(X) where X^k stands for 2k
// parallel unmarked spheres, plus a multiple of the single-dotted-sphere
// generator e.  Coefficients in Q[a1].
class NormalForm {
public:
    NormalForm();  // zero

    static NormalForm zero() { return NormalForm(); }
    static NormalForm x_power(unsigned k);
    static NormalForm e_generator();

    // coefficient of X^k (zero beyond the stored degree)
    MultiPoly x_coefficient(unsigned k) const;
    const std::vector<MultiPoly>& qx() const { return qx_; }
    const MultiPoly& ecoeff() const { return ecoeff_; }
    bool is_zero() const;

    NormalForm operator+(const NormalForm& o) const;
    NormalForm operator-(const NormalForm& o) const;
    NormalForm scaled(const MultiPoly& c) const;
    NormalForm scaled(const Rational& c) const;

    bool operator==(const NormalForm& o) const;
    bool operator!=(const NormalForm& o) const { return !(*this == o); }

    // "q(X) + (c)·e", ascending X powers, e.g. "1 + (1/4*a1^2)·X"
    std::string str() const;

private:
    void trim();
    std::vector<MultiPoly> qx_;  // index k holds the coefficient of X^k
    MultiPoly ecoeff_;
};

// One component of an embedded surface diagram.  Marks are elements of the
// rank-2 universal system; an absent mark means the unit.  Unbounding and
// fibered components carry a cyclic position.
struct SurfaceComponent {
    enum class Kind { unboundingSphere, boundingSphere, boundingTorus, fiberedParallel };

    Kind kind = Kind::unboundingSphere;
    unsigned genus = 0;
    std::optional<AElement> mark;
    int position = 0;

    static SurfaceComponent unbounding_sphere(int position, unsigned genus = 0);
    static SurfaceComponent unbounding_sphere(int position, const AElement& mark,
                                              unsigned genus = 0);
    static SurfaceComponent bounding_sphere();
    static SurfaceComponent bounding_sphere(const AElement& mark);
    static SurfaceComponent bounding_torus(unsigned genus = 1);
    static SurfaceComponent bounding_torus(const AElement& mark, unsigned genus);
    static SurfaceComponent fibered_parallel(int position);
};

struct SurfaceDiagram {
    std::vector<SurfaceComponent> components;
};

// mark = c_plain * 1 + c_dot * x after reduction mod p and elimination of a2.
// The mark must belong to the rank-2 universal system.
std::pair<MultiPoly, MultiPoly> reduce_mark(const AElement& mark);

// Evaluation of a bounding component: a sphere contributes eps(mark); a torus
// of genus h >= 1 contributes eps(mark * g^h).  Values in Q[a1].
MultiPoly evaluate_bounding(const SurfaceComponent& component);

// Applies relation r (1..6) at the given position of the linearized canonical
// word of every term.  Cyclic wraparound is reached by rotating first
// (relation 3, coefficient-free).  Throws PatternMismatch when the left-hand
// pattern is absent.
SkeinElement apply_relation(int r, const SkeinElement& elt, int position);

// The unique standard position reachable by relations 3, 4, and 5: dotted
// spheres gathered as d^(2m) (p d)^t p^u for even configurations and
// d^D p^u for odd ones, determined by the rotation-invariant dot counts.
SphereConfig standard_position(const SphereConfig& config);

// The six-step reduction of a single configuration / formal sum.
NormalForm normalize_config(const SphereConfig& config);
NormalForm normalize_element(const SkeinElement& elt);

// Full pipeline on surface diagrams: evaluate bounding components, remove
// handles from unbounding spheres (mark times g^genus), then reduce the
// configuration of unbounding spheres ordered by position.  Diagrams with
// fiberedParallel components are outside this reduction and are rejected.
NormalForm normalize(const std::vector<std::pair<MultiPoly, SurfaceDiagram>>& input);

// Basis functionals, read off the normal form.
MultiPoly lambda_k(const SkeinElement& elt, unsigned k);
MultiPoly lambda_d(const SkeinElement& elt);

// Independent oracle: builds the free module on every configuration with at
// most maxSpheres + 2 spheres, imposes all instances of relations 1-6, and
// reduces by exact Gaussian elimination over Q(a1).  Inputs must fit in
// maxSpheres spheres.
NormalForm brute_force_normal_form(const SkeinElement& elt, int maxSpheres);

// ------------------------------------------------- tube-parameter relations

// Evaluations of the two tubed closed surfaces that generalize relations 1
// and 2: t_plain for the unmarked tube, t_dot for the marked one.
// Polynomials in Q[a1,a2] (no elimination here).
struct TubeParams {
    MultiPoly t_plain;
    MultiPoly t_dot;
};

// t_plain = eps(g^(2i)), t_dot = eps(x * g^(2i)) in the rank-2 universal
// system, by repeated multiplication.
TubeParams tube_params_for_genus(unsigned i);

// Formal sum over configurations with Q[a1,a2] coefficients, used by the
// dependence witness (which must keep a2 symbolic).
struct TubeSum {
    std::map<SphereConfig, MultiPoly> terms;

    void add(const SphereConfig& config, const MultiPoly& coeff);
    bool operator==(const TubeSum& o) const { return terms == o.terms; }
    bool operator!=(const TubeSum& o) const { return !(*this == o); }
    std::string str() const;
};

struct DependenceWitness {
    TubeSum lhs;  // (4 a2 + a1^2) <ooo>, reduced through the relation chain
    TubeSum rhs;  // 4 t_dot <o>
};

// Reproduces the chain a1^2<ooo> = 2 a1<ood> = 4<odd> = 4 t_dot<o> - 4 a2<ooo>
// with the tube-parameterized relations and returns both sides of
// (4 a2 + a1^2)<ooo> = 4 t_dot <o>.  Throws ParamsInconsistent when params
// disagree with the computed eps values.
DependenceWitness dependence_witness(unsigned i, const TubeParams& params);

// ------------------------------------------------- lambda_F for irreducibles

// Input surface for the lambda_F functional: a disjoint union of at most one
// F-component marked x^k, spheres, compressible tori, and anything else
// (which sends the value to zero).
struct AbstractComponent {
    enum class Kind { markedF, sphere, compressibleTorus, other };

    Kind kind = Kind::other;
    unsigned power = 0;               // x-power on the F component
    std::optional<AElement> mark;     // sphere / torus decoration

    static AbstractComponent marked_f(unsigned power);
    static AbstractComponent sphere(const AElement& mark);
    static AbstractComponent sphere();
    static AbstractComponent compressible_torus(const AElement& mark);
    static AbstractComponent compressible_torus();
    static AbstractComponent other();
};

struct AbstractSurface {
    std::vector<AbstractComponent> components;
};

// lambda_F over a repeated-root system: F marked x^k alone contributes
// (-alpha)^k, spheres contribute eps(mark), compressible tori eps(mark * g),
// anything else kills the value.  rootIndex is 1-based.
MultiPoly lambda_F_eval(const AbstractSurface& s, const FrobSystem& sys, int rootIndex);

// True iff the functional kills the neck-cutting combination:
// n(-alpha)^(n-1) - sum_j a_(n-1-j) (j+1) (-alpha)^j = 0 in Z[alpha_1..alpha_m],
// together with the ring compatibility (-alpha)^n = a1(-alpha)^(n-1)+...+an.
bool neckcut_functional_check(const std::vector<int>& multiplicities, int rootIndex);

}  // namespace neckcut
