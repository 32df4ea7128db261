#include "neckcut/frobenius.hpp"

#include <algorithm>

namespace neckcut {

namespace {

// coefficient vectors over the base ring, index = power of x
using Vec = std::vector<MultiPoly>;

Vec zero_vec(const VarTablePtr& base, int n) {
    return Vec(n, MultiPoly(base));
}

} // namespace

struct FrobSystem::Data {
    int n = 0;
    VarTablePtr base;
    VarTablePtr ext;
    std::vector<MultiPoly> pcoeffs; // a1..an over base
    // x^k mod p for k = 0..2n-2 as coefficient vectors
    std::vector<Vec> xpow;
    std::vector<Vec> dual_x, dual_y;
    std::optional<PolyMatrix> lambda, lambda_inv;
    Vec genus;
    std::optional<std::vector<int>> mults;

    MultiPoly zero_base() const { return MultiPoly(base); }

    // x * (coefficient vector), reduced
    Vec shift(const Vec& u) const {
        Vec r = zero_vec(base, n);
        for (int j = 1; j < n; ++j) r[j] = u[j - 1];
        const MultiPoly& top = u[n - 1];
        if (!top.is_zero())
            for (int j = 0; j < n; ++j) r[j] += top * pcoeffs[n - 1 - j];
        return r;
    }

    Vec x_power_vec(unsigned k) const {
        if (k < xpow.size()) return xpow[k];
        Vec v = xpow.back();
        for (unsigned i = static_cast<unsigned>(xpow.size()) - 1; i < k; ++i) v = shift(v);
        return v;
    }

    Vec mul_vec(const Vec& u, const Vec& v) const {
        // full product in x, then fold with the reduced power table
        std::vector<MultiPoly> conv(2 * n - 1, zero_base());
        for (int i = 0; i < n; ++i) {
            if (u[i].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (v[j].is_zero()) continue;
                conv[i + j] += u[i] * v[j];
            }
        }
        Vec r = zero_vec(base, n);
        for (int k = 0; k < 2 * n - 1; ++k) {
            if (conv[k].is_zero()) continue;
            for (int j = 0; j < n; ++j) r[j] += conv[k] * xpow[k][j];
        }
        return r;
    }

    MultiPoly eps_vec(const Vec& u) const { return u[n - 1]; }
};

// ------------------------------------------------------------- construction

FrobSystem FrobSystem::make(VarTablePtr base, std::vector<MultiPoly> pcoeffs) {
    if (pcoeffs.size() < 2) throw RankTooSmall("rank must be at least 2");
    auto d = std::make_shared<Data>();
    d->n = static_cast<int>(pcoeffs.size());
    d->base = std::move(base);
    for (const auto& c : pcoeffs)
        if (!same_table(c.table(), d->base))
            throw VarTableMismatch("p coefficients must live over the base table");
    d->pcoeffs = std::move(pcoeffs);

    std::vector<std::string> ext_names = d->base->names();
    ext_names.push_back("x");
    d->ext = VarTable::make(std::move(ext_names));

    const int n = d->n;
    // power table x^0 .. x^(2n-2)
    d->xpow.reserve(2 * n - 1);
    for (int k = 0; k < n; ++k) {
        Vec v = zero_vec(d->base, n);
        v[k] = MultiPoly::constant(d->base, Rational(1));
        d->xpow.push_back(std::move(v));
    }
    for (int k = n; k <= 2 * n - 2; ++k) d->xpow.push_back(d->shift(d->xpow.back()));

    // dual basis closed form: x_i = x^(n-i), y_i = x^(i-1) - sum a_t x^(i-1-t)
    for (int i = 1; i <= n; ++i) {
        Vec xi = zero_vec(d->base, n);
        xi[n - i] = MultiPoly::constant(d->base, Rational(1));
        Vec yi = zero_vec(d->base, n);
        yi[i - 1] = MultiPoly::constant(d->base, Rational(1));
        for (int t = 1; t <= i - 1; ++t) yi[i - 1 - t] -= d->pcoeffs[t - 1];
        d->dual_x.push_back(std::move(xi));
        d->dual_y.push_back(std::move(yi));
    }
    // duality check: eps(x_i y_j) = delta_ij
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MultiPoly v = d->eps_vec(d->mul_vec(d->dual_x[i], d->dual_y[j]));
            MultiPoly want = MultiPoly::constant(d->base, Rational(i == j ? 1 : 0));
            if (v != want)
                throw InternalInconsistency("dual basis fails eps(x_i y_j) = delta_ij");
        }

    // form matrix and its closed-form inverse
    d->lambda.emplace(PolyMatrix::zero(d->base, n, n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            d->lambda->at(i - 1, j - 1) = d->eps_vec(d->xpow[i + j - 2]);
    d->lambda_inv.emplace(PolyMatrix::zero(d->base, n, n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i + j <= n) d->lambda_inv->at(i - 1, j - 1) = -d->pcoeffs[n - i - j];
            else if (i + j == n + 1)
                d->lambda_inv->at(i - 1, j - 1) = MultiPoly::constant(d->base, Rational(1));
        }
    if (*d->lambda * *d->lambda_inv != PolyMatrix::identity(d->base, n))
        throw InternalInconsistency("closed-form inverse fails lambda * lambda^-1 = I");

    // genus-reduction term two ways: sum x_i y_i, and p'(x) reduced
    Vec via_dual = zero_vec(d->base, n);
    for (int i = 0; i < n; ++i) {
        Vec t = d->mul_vec(d->dual_x[i], d->dual_y[i]);
        for (int j = 0; j < n; ++j) via_dual[j] += t[j];
    }
    Vec via_deriv = zero_vec(d->base, n);
    via_deriv[n - 1] = MultiPoly::constant(d->base, Rational(n));
    for (int k = 1; k <= n - 1; ++k)
        via_deriv[n - 1 - k] -= d->pcoeffs[k - 1].scaled(Rational(n - k));
    if (via_dual != via_deriv)
        throw InternalInconsistency("genus term disagrees between dual-basis and derivative routes");
    d->genus = std::move(via_dual);

    return FrobSystem(std::move(d));
}

FrobSystem FrobSystem::universal(int n) {
    if (n < 2) throw RankTooSmall("rank must be at least 2");
    VarTablePtr base = VarTable::coefficients(n, false);
    std::vector<MultiPoly> pcoeffs;
    for (int i = 1; i <= n; ++i)
        pcoeffs.push_back(MultiPoly::variable(base, "a" + std::to_string(i)));
    return make(base, std::move(pcoeffs));
}

FrobSystem FrobSystem::numeric(const std::vector<Rational>& pcoeffs) {
    VarTablePtr base = VarTable::make({});
    std::vector<MultiPoly> cs;
    cs.reserve(pcoeffs.size());
    for (const auto& c : pcoeffs) cs.push_back(MultiPoly::constant(base, c));
    return make(base, std::move(cs));
}

// ------------------------------------------------------------------ getters

int FrobSystem::rank() const { return d_->n; }
const VarTablePtr& FrobSystem::base() const { return d_->base; }
const VarTablePtr& FrobSystem::extended() const { return d_->ext; }
const std::vector<MultiPoly>& FrobSystem::pcoeffs() const { return d_->pcoeffs; }
const std::optional<std::vector<int>>& FrobSystem::root_multiplicities() const {
    return d_->mults;
}

MultiPoly FrobSystem::p_of_x() const {
    const int n = d_->n;
    Monomial m(d_->ext->size(), 0);
    m.back() = n;
    MultiPoly p = MultiPoly::monomial(d_->ext, m, Rational(1));
    for (int k = 1; k <= n; ++k) {
        // a_k x^(n-k), coefficient lifted into the extended table
        for (const auto& [mono, c] : d_->pcoeffs[k - 1].terms()) {
            Monomial e = mono;
            e.push_back(n - k);
            p -= MultiPoly::monomial(d_->ext, std::move(e), c);
        }
    }
    return p;
}

bool operator==(const FrobSystem& a, const FrobSystem& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->n == b.d_->n && same_table(a.d_->base, b.d_->base) &&
           a.d_->pcoeffs == b.d_->pcoeffs;
}

// ----------------------------------------------------------------- elements

AElement::AElement(FrobSystem system, std::vector<MultiPoly> coeffs)
    : sys_(std::move(system)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != sys_.rank())
        throw UsageError("coefficient vector length must equal the rank");
    for (const auto& c : coeffs_)
        if (!same_table(c.table(), sys_.base()))
            throw VarTableMismatch("element coefficients must live over the base table");
}

AElement FrobSystem::zero() const { return AElement(*this, zero_vec(d_->base, d_->n)); }

AElement FrobSystem::one() const { return constant(Rational(1)); }

AElement FrobSystem::constant(const Rational& c) const {
    Vec v = zero_vec(d_->base, d_->n);
    v[0] = MultiPoly::constant(d_->base, c);
    return AElement(*this, std::move(v));
}

AElement FrobSystem::element(std::vector<MultiPoly> coeffs) const {
    return AElement(*this, std::move(coeffs));
}

AElement FrobSystem::x_power(unsigned k) const {
    return AElement(*this, d_->x_power_vec(k));
}

AElement FrobSystem::reduce(const MultiPoly& q) const {
    if (same_table(q.table(), d_->base)) {
        Vec v = zero_vec(d_->base, d_->n);
        v[0] = q;
        return AElement(*this, std::move(v));
    }
    if (!same_table(q.table(), d_->ext))
        throw VarTableMismatch("reduce expects a polynomial over the extended table");
    // split off the x exponent, fold through the reduced power table
    Vec r = zero_vec(d_->base, d_->n);
    for (const auto& [mono, c] : q.terms()) {
        Monomial base_mono(mono.begin(), mono.end() - 1);
        unsigned e = mono.back();
        MultiPoly coeff = MultiPoly::monomial(d_->base, std::move(base_mono), c);
        Vec xe = d_->x_power_vec(e);
        for (int j = 0; j < d_->n; ++j) r[j] += coeff * xe[j];
    }
    return AElement(*this, std::move(r));
}

bool AElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const MultiPoly& c) { return c.is_zero(); });
}

namespace {
void require_same_system(const FrobSystem& a, const FrobSystem& b) {
    if (a != b) throw SystemMismatch("elements belong to different systems");
}
} // namespace

AElement AElement::operator-() const {
    Vec v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(-c);
    return AElement(sys_, std::move(v));
}

AElement AElement::operator+(const AElement& o) const {
    require_same_system(sys_, o.sys_);
    Vec v = coeffs_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coeffs_[i];
    return AElement(sys_, std::move(v));
}

AElement AElement::operator-(const AElement& o) const {
    require_same_system(sys_, o.sys_);
    Vec v = coeffs_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.coeffs_[i];
    return AElement(sys_, std::move(v));
}

AElement AElement::operator*(const AElement& o) const {
    require_same_system(sys_, o.sys_);
    return AElement(sys_, sys_.d_->mul_vec(coeffs_, o.coeffs_));
}

AElement AElement::scaled(const MultiPoly& c) const {
    Vec v;
    v.reserve(coeffs_.size());
    for (const auto& k : coeffs_) v.push_back(k * c);
    return AElement(sys_, std::move(v));
}

AElement AElement::scaled(const Rational& c) const {
    Vec v;
    v.reserve(coeffs_.size());
    for (const auto& k : coeffs_) v.push_back(k.scaled(c));
    return AElement(sys_, std::move(v));
}

AElement AElement::pow(unsigned k) const {
    AElement r = sys_.one();
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

bool operator==(const AElement& a, const AElement& b) {
    return a.sys_ == b.sys_ && a.coeffs_ == b.coeffs_;
}

MultiPoly AElement::to_poly() const {
    const VarTablePtr& ext = sys_.extended();
    MultiPoly p(ext);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        for (const auto& [mono, c] : coeffs_[k].terms()) {
            Monomial e = mono;
            e.push_back(static_cast<std::uint32_t>(k));
            p += MultiPoly::monomial(ext, std::move(e), c);
        }
    }
    return p;
}

std::string AElement::str() const { return to_poly().str(); }

// --------------------------------------------------------------------- form

MultiPoly FrobSystem::epsilon(const AElement& u) const {
    require_same_system(*this, u.system());
    return d_->eps_vec(u.coeffs());
}

DualBasis FrobSystem::dual_basis() const {
    DualBasis pairs;
    for (int i = 0; i < d_->n; ++i)
        pairs.emplace_back(AElement(*this, d_->dual_x[i]), AElement(*this, d_->dual_y[i]));
    return pairs;
}

const PolyMatrix& FrobSystem::frobenius_matrix() const { return *d_->lambda; }
const PolyMatrix& FrobSystem::frobenius_matrix_inverse() const { return *d_->lambda_inv; }

AElement FrobSystem::genus_term() const { return AElement(*this, d_->genus); }

AElement FrobSystem::g_power(unsigned i) const {
    AElement g = genus_term();
    AElement r = one();
    for (unsigned k = 0; k < i; ++k) r = r * g;
    return r;
}

MultiPoly FrobSystem::closed_surface_eval(int genus, const AElement& mark) const {
    require_same_system(*this, mark.system());
    if (genus < 0) throw UsageError("genus must be nonnegative");
    return epsilon(mark * g_power(static_cast<unsigned>(genus)));
}

// ------------------------------------------------------------------ tensors

TensorElement::TensorElement(FrobSystem system) : sys_(std::move(system)) {}

void TensorElement::add(int i, int j, const MultiPoly& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(i, j);
    auto [it, fresh] = terms_.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    require_same_system(sys_, o.sys_);
    TensorElement r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    require_same_system(sys_, o.sys_);
    TensorElement r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, -c);
    return r;
}

TensorElement TensorElement::scaled(const MultiPoly& c) const {
    TensorElement r(sys_);
    for (const auto& [k, v] : terms_) r.add(k.first, k.second, v * c);
    return r;
}

TensorElement TensorElement::swapped() const {
    TensorElement r(sys_);
    for (const auto& [k, c] : terms_) r.add(k.second, k.first, c);
    return r;
}

bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.sys_ == b.sys_ && a.terms_ == b.terms_;
}

std::string TensorElement::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string xi = k.first == 0 ? "1" : (k.first == 1 ? "x" : "x^" + std::to_string(k.first));
        std::string xj =
            k.second == 0 ? "1" : (k.second == 1 ? "x" : "x^" + std::to_string(k.second));
        out += "(" + c.str() + ")*" + xi + "(x)" + xj;
    }
    return out;
}

TensorElement FrobSystem::comultiply(const AElement& u) const {
    require_same_system(*this, u.system());
    TensorElement r(*this);
    for (int i = 0; i < d_->n; ++i) {
        Vec w = d_->mul_vec(d_->dual_x[i], u.coeffs());
        for (int a = 0; a < d_->n; ++a) {
            if (w[a].is_zero()) continue;
            for (int b = 0; b < d_->n; ++b) {
                if (d_->dual_y[i][b].is_zero()) continue;
                r.add(a, b, w[a] * d_->dual_y[i][b]);
            }
        }
    }
    return r;
}

TensorElement FrobSystem::canonical_unit() const { return comultiply(one()); }

TensorElement eps_tensor_mul(const TensorElement& s, const TensorElement& t) {
    require_same_system(s.system(), t.system());
    const FrobSystem& sys = s.system();
    TensorElement r(sys);
    for (const auto& [ks, cs] : s.terms()) {
        for (const auto& [kt, ct] : t.terms()) {
            // eps(x^j x^k) is the form matrix entry
            const MultiPoly& lam = sys.d_->eps_vec(sys.d_->xpow[ks.second + kt.first]);
            if (lam.is_zero()) continue;
            r.add(ks.first, kt.second, cs * ct * lam);
        }
    }
    return r;
}

// ------------------------------------------------------- specialized systems

namespace {

// elementary symmetric polynomials of the root multiset, over `base`
std::vector<MultiPoly> root_elementary(const VarTablePtr& base,
                                       const std::vector<int>& mults) {
    // roots with multiplicity: alpha_i repeated k_i times
    std::vector<MultiPoly> roots;
    for (std::size_t i = 0; i < mults.size(); ++i) {
        MultiPoly a = MultiPoly::variable(base, "alpha" + std::to_string(i + 1));
        for (int r = 0; r < mults[i]; ++r) roots.push_back(a);
    }
    std::size_t n = roots.size();
    // e[k] via the product recurrence prod (1 + alpha t)
    std::vector<MultiPoly> e(n + 1, MultiPoly(base));
    e[0] = MultiPoly::constant(base, Rational(1));
    std::size_t used = 0;
    for (const auto& r : roots) {
        ++used;
        for (std::size_t k = std::min(used, n); k >= 1; --k) e[k] += e[k - 1] * r;
    }
    return e;
}

} // namespace

FrobSystem specialize_roots(const std::vector<int>& multiplicities) {
    if (multiplicities.empty()) throw RankTooSmall("need at least one root");
    for (int k : multiplicities)
        if (k < 1) throw UsageError("multiplicities must be positive");
    int n = 0;
    for (int k : multiplicities) n += k;
    if (n < 2) throw RankTooSmall("rank must be at least 2");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < multiplicities.size(); ++i)
        names.push_back("alpha" + std::to_string(i + 1));
    VarTablePtr base = VarTable::make(std::move(names));

    // p(x) = prod (x + alpha_i)^(k_i) = sum e_k x^(n-k), so a_k = -e_k
    std::vector<MultiPoly> e = root_elementary(base, multiplicities);
    std::vector<MultiPoly> pcoeffs;
    for (int k = 1; k <= n; ++k) pcoeffs.push_back(-e[k]);

    FrobSystem sys = FrobSystem::make(base, std::move(pcoeffs));
    // brand the system with its multiplicities
    auto d = std::make_shared<FrobSystem::Data>(*sys.d_);
    d->mults = multiplicities;
    return FrobSystem(std::move(d));
}

bool check_g_square_zero(const std::vector<int>& multiplicities) {
    FrobSystem sys = specialize_roots(multiplicities);
    AElement g = sys.genus_term();
    AElement g2 = g * g;
    AElement g3 = g2 * g;
    AElement g4 = g3 * g;
    bool z2 = g2.is_zero(), z3 = g3.is_zero(), z4 = g4.is_zero();
    if (z2 != z3 || z2 != z4)
        throw InternalInconsistency("g^2, g^3, g^4 do not vanish together");
    return z2;
}

// ------------------------------------------------------------ product system

ProductSystem::ProductSystem(const std::vector<int>& multiplicities)
    : n_(0), mult_(multiplicities), lambda_(PolyMatrix::zero(VarTable::make({}), 0, 0)) {
    if (mult_.empty()) throw RankTooSmall("need at least one factor");
    for (int k : mult_) {
        if (k < 1) throw UsageError("multiplicities must be positive");
        n_ += k;
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < mult_.size(); ++i)
        names.push_back("alpha" + std::to_string(i + 1));
    base_ = VarTable::make(std::move(names));

    lambda_ = PolyMatrix::zero(base_, n_, n_);
    int offset = 0;
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        int k = mult_[i];
        MultiPoly alpha = MultiPoly::variable(base_, "alpha" + std::to_string(i + 1));
        if (k == 1) {
            local_.push_back(std::nullopt);
            lambda_.at(offset, offset) = MultiPoly::constant(base_, Rational(1));
            g_.push_back({MultiPoly::constant(base_, Rational(1))});
        } else {
            // local p(x) = (x + alpha)^k, so b_j = -C(k,j) alpha^j
            std::vector<MultiPoly> pcoeffs;
            for (int j = 1; j <= k; ++j)
                pcoeffs.push_back(alpha.pow(j).scaled(-binomial(k, j)));
            FrobSystem local = FrobSystem::make(base_, std::move(pcoeffs));
            const PolyMatrix& ll = local.frobenius_matrix();
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) lambda_.at(offset + a, offset + b) = ll.at(a, b);
            g_.push_back(local.genus_term().coeffs());
            local_.push_back(std::move(local));
        }
        offset += k;
    }
}

ProductSystem::Element ProductSystem::zero() const {
    Element u;
    for (int k : mult_) u.push_back(Vec(k, MultiPoly(base_)));
    return u;
}

ProductSystem::Element ProductSystem::one() const {
    Element u = zero();
    for (auto& f : u) f[0] = MultiPoly::constant(base_, Rational(1));
    return u;
}

bool ProductSystem::is_zero(const Element& u) const {
    for (const auto& f : u)
        for (const auto& c : f)
            if (!c.is_zero()) return false;
    return true;
}

ProductSystem::Element ProductSystem::add(const Element& u, const Element& v) const {
    Element r = u;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += v[i][j];
    return r;
}

ProductSystem::Element ProductSystem::mul(const Element& u, const Element& v) const {
    Element r = zero();
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        if (mult_[i] == 1) {
            r[i][0] = u[i][0] * v[i][0];
        } else {
            const FrobSystem& loc = *local_[i];
            r[i] = (loc.element(u[i]) * loc.element(v[i])).coeffs();
        }
    }
    return r;
}

MultiPoly ProductSystem::eps_prime(const Element& u) const {
    MultiPoly s(base_);
    for (std::size_t i = 0; i < mult_.size(); ++i) s += u[i][mult_[i] - 1];
    return s;
}

ProductSystem::Element ProductSystem::phi(const AElement& u) const {
    const FrobSystem& sys = u.system();
    if (sys.rank() != n_ || !same_table(sys.base(), base_))
        throw SystemMismatch("element does not come from the matching specialized system");
    Element r = zero();
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        MultiPoly alpha = MultiPoly::variable(base_, "alpha" + std::to_string(i + 1));
        if (mult_[i] == 1) {
            // reduce mod (x + alpha): evaluate at x = -alpha
            MultiPoly v(base_);
            for (int k = 0; k < n_; ++k) v += u.coeff(k) * (-alpha).pow(k);
            r[i][0] = v;
        } else {
            const FrobSystem& loc = *local_[i];
            AElement acc = loc.zero();
            for (int k = 0; k < n_; ++k)
                acc = acc + loc.x_power(k).scaled(u.coeff(k));
            r[i] = acc.coeffs();
        }
    }
    return r;
}

std::string ProductSystem::str(const Element& u) const {
    std::string out = "(";
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) out += ", ";
        std::string part;
        for (std::size_t k = 0; k < u[i].size(); ++k) {
            if (u[i][k].is_zero()) continue;
            if (!part.empty()) part += " + ";
            std::string xs = k == 0 ? "" : (k == 1 ? "*x" : "*x^" + std::to_string(k));
            part += "(" + u[i][k].str() + ")" + xs;
        }
        out += part.empty() ? "0" : part;
    }
    return out + ")";
}

bool crt_map_check(const std::vector<int>& multiplicities) {
    FrobSystem sys = specialize_roots(multiplicities);
    ProductSystem prod(multiplicities);
    const int n = sys.rank();

    // defining table: eps~(x^k) = delta_(k,n-1)
    for (int k = 0; k < n; ++k) {
        Rational want(k == n - 1 ? 1 : 0);
        if (sys.epsilon(sys.x_power(k)) != MultiPoly::constant(sys.base(), want)) return false;
    }

    // power basis maps to a basis: det of the coordinate matrix is nonzero
    std::vector<ProductSystem::Element> u;
    for (int k = 0; k < 2 * n - 1; ++k) u.push_back(prod.phi(sys.x_power(k)));
    PolyMatrix m = PolyMatrix::zero(prod.base(), n, n);
    for (int k = 0; k < n; ++k) {
        int row = 0;
        for (const auto& f : u[k])
            for (const auto& c : f) m.at(row++, k) = c;
    }
    if (poly_det(m).is_zero()) return false;

    // ring map on basis products
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            ProductSystem::Element lhs = prod.mul(u[j], u[k]);
            const ProductSystem::Element& rhs = u[j + k];
            if (lhs != rhs) return false;
        }
    return true;
}

// ----------------------------------------------- numeric inversion and twist

namespace {

Rational const_of(const MultiPoly& p) { return p.constant_value(); }

void require_numeric(const FrobSystem& sys, const char* what) {
    if (sys.base()->size() != 0)
        throw UsageError(std::string(what) + " needs a numeric system (empty base table)");
}

} // namespace

AElement a_invert(const AElement& u) {
    const FrobSystem& sys = u.system();
    require_numeric(sys, "a_invert");
    const int n = sys.rank();
    // columns: u * x^j in the power basis
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int j = 0; j < n; ++j) {
        AElement col = u * sys.x_power(j);
        for (int i = 0; i < n; ++i) m[i][j] = const_of(col.coeff(i));
    }
    std::vector<Rational> b(n, Rational(0));
    b[0] = Rational(1);
    auto v = solve_square(m, b);
    if (!v) throw NotInvertible("element has no inverse: " + u.str());
    std::vector<MultiPoly> coeffs;
    for (int i = 0; i < n; ++i) coeffs.push_back(MultiPoly::constant(sys.base(), (*v)[i]));
    AElement inv = sys.element(std::move(coeffs));
    if (inv * u != sys.one()) throw InternalInconsistency("inverse check failed");
    return inv;
}

TwistedSystem twist_system(const FrobSystem& sys, const AElement& d) {
    require_numeric(sys, "twist_system");
    require_same_system(sys, d.system());
    AElement dinv = a_invert(d);
    TwistedSystem out;
    for (int k = 0; k < sys.rank(); ++k)
        out.form_values.push_back(const_of(sys.epsilon(d * sys.x_power(k))));
    AElement via_dual = sys.zero();
    for (auto& [xi, yi] : sys.dual_basis()) {
        AElement yt = dinv * yi;
        // twisted duality: eps_d(x_i yt_j) = eps(x_i y_j) = delta_ij
        out.dual.emplace_back(xi, yt);
        via_dual = via_dual + xi * yt;
    }
    AElement via_scale = dinv * sys.genus_term();
    if (via_dual != via_scale)
        throw InternalInconsistency("twisted genus term disagrees between routes");
    for (int k = 0; k < sys.rank(); ++k)
        out.genus.push_back(const_of(via_scale.coeff(k)));
    return out;
}

bool pushforward_genus_check(const std::vector<Rational>& roots) {
    const int n = static_cast<int>(roots.size());
    if (n < 2) throw RankTooSmall("need at least two roots");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (roots[i] == roots[j]) throw RootsNotDistinct("repeated root " + roots[i].str());

    // p(x) = prod (x + r_i); a_k = -e_k(roots)
    std::vector<Rational> e(n + 1, Rational(0));
    e[0] = Rational(1);
    int used = 0;
    for (const auto& r : roots) {
        ++used;
        for (int k = std::min(used, n); k >= 1; --k) e[k] += e[k - 1] * r;
    }
    std::vector<Rational> pcoeffs;
    for (int k = 1; k <= n; ++k) pcoeffs.push_back(-e[k]);
    FrobSystem sys = FrobSystem::numeric(pcoeffs);

    // evaluation isomorphism: phi(u)_i = u(-r_i)
    auto phi = [&](const AElement& u) {
        std::vector<Rational> v(n, Rational(0));
        for (int i = 0; i < n; ++i) {
            Rational p(0);
            for (int k = 0; k < n; ++k) p += const_of(u.coeff(k)) * (-roots[i]).pow(k);
            v[i] = p;
        }
        return v;
    };

    // pushed-forward form on Q^n: eps^(v) = leading coefficient of the
    // interpolating polynomial through (-r_i, v_i)
    auto eps_hat = [&](const std::vector<Rational>& v) {
        Rational lead(0);
        for (int i = 0; i < n; ++i) {
            Rational denom(1);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (roots[j] - roots[i]);
            lead += v[i] / denom;
        }
        return lead;
    };

    // Gram matrix on the idempotent basis, inverted exactly
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Rational> prod(n, Rational(0));
            if (i == j) prod[i] = Rational(1);
            gram[i][j] = eps_hat(prod);
        }
    auto ginv = invert_square(gram);
    if (!ginv) throw InternalInconsistency("pushed-forward Gram matrix is singular");

    // native genus term on Q^n: sum_i e_i * y_i with y_i = sum_j ginv[j][i] e_j;
    // the componentwise product collapses e_i * y_i to ginv[i][i] e_i
    std::vector<Rational> g_hat(n, Rational(0));
    for (int i = 0; i < n; ++i) g_hat[i] = (*ginv)[i][i];

    return phi(sys.genus_term()) == g_hat;
}

} // namespace neckcut
