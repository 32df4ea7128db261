#include "neckcut/skein.hpp"

#include "neckcut/linalg.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace neckcut {

namespace {

VarTablePtr a1_table() { return VarTable::make({"a1"}); }

MultiPoly a1_poly() { return MultiPoly::variable(a1_table(), "a1"); }

// a1^2/4, the eliminated value of -a2
MultiPoly quarter_a1_sq() { return MultiPoly::parse(a1_table(), "1/4*a1^2"); }

MultiPoly half_a1() { return MultiPoly::parse(a1_table(), "1/2*a1"); }

// rank-2 universal system shared by the mark-handling paths
FrobSystem universal2() { return FrobSystem::universal(2); }

void require_universal2(const AElement& mark) {
    const FrobSystem& sys = mark.system();
    if (sys.rank() != 2 || sys.base()->names() != std::vector<std::string>({"a1", "a2"})) {
        throw UsageError("marks must come from the rank-2 universal system");
    }
}

void require_a1_coeff(const MultiPoly& c) {
    if (c.table()->names() != std::vector<std::string>({"a1"})) {
        throw UsageError("skein coefficients live in Q[a1]");
    }
}

// substitute a2 = -a1^2/4 into a polynomial over the rank-2 base ring
MultiPoly eliminate_a2(const MultiPoly& p) {
    std::unordered_map<std::string, MultiPoly> bindings = {
        {"a2", MultiPoly::parse(a1_table(), "-1/4*a1^2")},
    };
    return p.subst(bindings);
}

std::string minimal_rotation(const std::string& word) {
    if (word.size() <= 1) return word;
    std::string best = word;
    std::string cur = word;
    for (std::size_t i = 1; i < word.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

}  // namespace

// --------------------------------------------------------------- SphereConfig

SphereConfig SphereConfig::canonicalize(const std::vector<SphereMark>& word) {
    std::string raw;
    raw.reserve(word.size());
    for (SphereMark m : word) raw.push_back(static_cast<char>(m));
    return from_word(raw);
}

SphereConfig SphereConfig::from_word(const std::string& word) {
    for (char c : word) {
        if (c != 'd' && c != 'p') {
            throw UsageError(std::string("sphere words use 'd' and 'p', got '") + c + "'");
        }
    }
    SphereConfig out;
    out.word_ = minimal_rotation(word);
    return out;
}

SphereConfig SphereConfig::parse(const std::string& text) {
    std::string body = text;
    auto trim = [](std::string s) {
        auto a = s.find_first_not_of(" \t");
        auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    body = trim(body);
    if (body.empty() || body == "1") return SphereConfig();
    std::string raw;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = body.find(',', start);
        std::string token = trim(body.substr(start, comma - start));
        if (token == "d") {
            raw.push_back('d');
        } else if (token == "p") {
            raw.push_back('p');
        } else {
            throw ParseError("bad sphere mark '" + token + "' in configuration: " + text);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return from_word(raw);
}

std::size_t SphereConfig::dot_count() const {
    return static_cast<std::size_t>(std::count(word_.begin(), word_.end(), 'd'));
}

std::string SphereConfig::str() const {
    if (word_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i) out += ',';
        out += word_[i];
    }
    return out;
}

// --------------------------------------------------------------- SkeinElement

VarTablePtr SkeinElement::coeff_table() { return a1_table(); }

SkeinElement SkeinElement::unit() { return single(SphereConfig()); }

SkeinElement SkeinElement::single(const SphereConfig& config) {
    return single(config, MultiPoly::constant(a1_table(), Rational(1)));
}

SkeinElement SkeinElement::single(const SphereConfig& config, const MultiPoly& coeff) {
    SkeinElement out;
    out.add(config, coeff);
    return out;
}

MultiPoly SkeinElement::coefficient(const SphereConfig& config) const {
    auto it = terms_.find(config);
    return it == terms_.end() ? MultiPoly(a1_table()) : it->second;
}

void SkeinElement::add(const SphereConfig& config, const MultiPoly& coeff) {
    require_a1_coeff(coeff);
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(config, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SkeinElement SkeinElement::operator+(const SkeinElement& o) const {
    SkeinElement out = *this;
    for (const auto& [cfg, c] : o.terms_) out.add(cfg, c);
    return out;
}

SkeinElement SkeinElement::operator-(const SkeinElement& o) const {
    return *this + o.scaled(Rational(-1));
}

SkeinElement SkeinElement::scaled(const MultiPoly& c) const {
    require_a1_coeff(c);
    SkeinElement out;
    for (const auto& [cfg, v] : terms_) out.add(cfg, v * c);
    return out;
}

SkeinElement SkeinElement::scaled(const Rational& c) const {
    SkeinElement out;
    for (const auto& [cfg, v] : terms_) out.add(cfg, v.scaled(c));
    return out;
}

std::string SkeinElement::str() const {
    if (terms_.empty()) return "0";
    MultiPoly one = MultiPoly::constant(a1_table(), Rational(1));
    std::string out;
    for (const auto& [cfg, c] : terms_) {
        if (!out.empty()) out += " + ";
        if (c == one) {
            out += "[" + cfg.str() + "]";
        } else {
            std::string cs = c.str();
            if (c.term_count() > 1) cs = "(" + cs + ")";
            out += cs + " * [" + cfg.str() + "]";
        }
    }
    return out;
}

SkeinElement SkeinElement::parse(const std::string& text) {
    SkeinElement out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty skein element text");
    bool first = true;
    while (i < text.size()) {
        Rational sign(1);
        skip_ws();
        if (!first) {
            if (text[i] == '+') {
                ++i;
            } else if (text[i] == '-') {
                sign = Rational(-1);
                ++i;
            } else {
                throw ParseError("expected '+' or '-' between skein terms near: " + text.substr(i));
            }
            skip_ws();
        } else if (text[i] == '-') {
            sign = Rational(-1);
            ++i;
            skip_ws();
        }
        first = false;
        std::size_t bracket = text.find('[', i);
        if (bracket == std::string::npos) {
            throw ParseError("skein terms need a [config] part: " + text);
        }
        std::string coeff_text = text.substr(i, bracket - i);
        // trim and drop the '*' joining coefficient and configuration
        auto b = coeff_text.find_last_not_of(" \t");
        coeff_text = b == std::string::npos ? std::string() : coeff_text.substr(0, b + 1);
        if (!coeff_text.empty()) {
            if (coeff_text.back() != '*') {
                throw ParseError("expected '*' before '[' in skein term: " + text);
            }
            coeff_text.pop_back();
            b = coeff_text.find_last_not_of(" \t");
            coeff_text = b == std::string::npos ? std::string() : coeff_text.substr(0, b + 1);
        }
        if (!coeff_text.empty() && coeff_text.front() == '(' && coeff_text.back() == ')') {
            coeff_text = coeff_text.substr(1, coeff_text.size() - 2);
        }
        MultiPoly coeff = coeff_text.empty()
                              ? MultiPoly::constant(a1_table(), Rational(1))
                              : MultiPoly::parse(a1_table(), coeff_text);
        std::size_t close = text.find(']', bracket);
        if (close == std::string::npos) throw ParseError("unterminated [config] in: " + text);
        SphereConfig cfg = SphereConfig::parse(text.substr(bracket + 1, close - bracket - 1));
        out.add(cfg, coeff.scaled(sign));
        i = close + 1;
        skip_ws();
    }
    return out;
}

// ----------------------------------------------------------------- NormalForm

NormalForm::NormalForm() : ecoeff_(a1_table()) {}

NormalForm NormalForm::x_power(unsigned k) {
    NormalForm out;
    out.qx_.resize(k + 1, MultiPoly(a1_table()));
    out.qx_[k] = MultiPoly::constant(a1_table(), Rational(1));
    return out;
}

NormalForm NormalForm::e_generator() {
    NormalForm out;
    out.ecoeff_ = MultiPoly::constant(a1_table(), Rational(1));
    return out;
}

MultiPoly NormalForm::x_coefficient(unsigned k) const {
    return k < qx_.size() ? qx_[k] : MultiPoly(a1_table());
}

bool NormalForm::is_zero() const { return qx_.empty() && ecoeff_.is_zero(); }

void NormalForm::trim() {
    while (!qx_.empty() && qx_.back().is_zero()) qx_.pop_back();
}

NormalForm NormalForm::operator+(const NormalForm& o) const {
    NormalForm out = *this;
    if (out.qx_.size() < o.qx_.size()) out.qx_.resize(o.qx_.size(), MultiPoly(a1_table()));
    for (std::size_t k = 0; k < o.qx_.size(); ++k) out.qx_[k] += o.qx_[k];
    out.ecoeff_ += o.ecoeff_;
    out.trim();
    return out;
}

NormalForm NormalForm::operator-(const NormalForm& o) const {
    return *this + o.scaled(Rational(-1));
}

NormalForm NormalForm::scaled(const MultiPoly& c) const {
    require_a1_coeff(c);
    NormalForm out = *this;
    for (auto& q : out.qx_) q *= c;
    out.ecoeff_ *= c;
    out.trim();
    return out;
}

NormalForm NormalForm::scaled(const Rational& c) const {
    NormalForm out = *this;
    for (auto& q : out.qx_) q = q.scaled(c);
    out.ecoeff_ = out.ecoeff_.scaled(c);
    out.trim();
    return out;
}

bool NormalForm::operator==(const NormalForm& o) const {
    return qx_ == o.qx_ && ecoeff_ == o.ecoeff_;
}

std::string NormalForm::str() const {
    MultiPoly one = MultiPoly::constant(a1_table(), Rational(1));
    std::vector<std::string> pieces;
    for (std::size_t k = 0; k < qx_.size(); ++k) {
        const MultiPoly& c = qx_[k];
        if (c.is_zero()) continue;
        if (k == 0) {
            pieces.push_back(c.is_constant() ? c.str() : "(" + c.str() + ")");
            continue;
        }
        std::string base = k == 1 ? "X" : "X^" + std::to_string(k);
        pieces.push_back(c == one ? base : "(" + c.str() + ")·" + base);
    }
    if (!ecoeff_.is_zero()) {
        pieces.push_back(ecoeff_ == one ? "e" : "(" + ecoeff_.str() + ")·e");
    }
    if (pieces.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) out += " + ";
        out += pieces[i];
    }
    return out;
}

// ----------------------------------------------------------- SurfaceComponent

SurfaceComponent SurfaceComponent::unbounding_sphere(int position, unsigned genus) {
    SurfaceComponent c;
    c.kind = Kind::unboundingSphere;
    c.genus = genus;
    c.position = position;
    return c;
}

SurfaceComponent SurfaceComponent::unbounding_sphere(int position, const AElement& mark,
                                                     unsigned genus) {
    SurfaceComponent c = unbounding_sphere(position, genus);
    c.mark = mark;
    return c;
}

SurfaceComponent SurfaceComponent::bounding_sphere() {
    SurfaceComponent c;
    c.kind = Kind::boundingSphere;
    return c;
}

SurfaceComponent SurfaceComponent::bounding_sphere(const AElement& mark) {
    SurfaceComponent c = bounding_sphere();
    c.mark = mark;
    return c;
}

SurfaceComponent SurfaceComponent::bounding_torus(unsigned genus) {
    SurfaceComponent c;
    c.kind = Kind::boundingTorus;
    c.genus = genus;
    return c;
}

SurfaceComponent SurfaceComponent::bounding_torus(const AElement& mark, unsigned genus) {
    SurfaceComponent c = bounding_torus(genus);
    c.mark = mark;
    return c;
}

SurfaceComponent SurfaceComponent::fibered_parallel(int position) {
    SurfaceComponent c;
    c.kind = Kind::fiberedParallel;
    c.position = position;
    return c;
}

// ------------------------------------------------------------- mark handling

std::pair<MultiPoly, MultiPoly> reduce_mark(const AElement& mark) {
    require_universal2(mark);
    return {eliminate_a2(mark.coeff(0)), eliminate_a2(mark.coeff(1))};
}

MultiPoly evaluate_bounding(const SurfaceComponent& component) {
    if (component.kind != SurfaceComponent::Kind::boundingSphere &&
        component.kind != SurfaceComponent::Kind::boundingTorus) {
        throw UsageError("evaluate_bounding takes bounding spheres and tori");
    }
    AElement mark = component.mark ? *component.mark : universal2().one();
    require_universal2(mark);
    unsigned h = component.genus;
    if (component.kind == SurfaceComponent::Kind::boundingTorus && h == 0) {
        h = 1;  // a torus record's intrinsic genus
    }
    return eliminate_a2(mark.system().closed_surface_eval(static_cast<int>(h), mark));
}

// ------------------------------------------------------------ apply_relation

namespace {

[[noreturn]] void pattern_mismatch(int r, const SphereConfig& cfg, int pos) {
    throw PatternMismatch("relation " + std::to_string(r) + " does not match [" + cfg.str() +
                          "] at position " + std::to_string(pos));
}

}  // namespace

SkeinElement apply_relation(int r, const SkeinElement& elt, int position) {
    if (r < 1 || r > 6) throw UsageError("relations are numbered 1..6");
    if (position < 0) throw UsageError("relation position must be non-negative");
    const std::size_t pos = static_cast<std::size_t>(position);
    SkeinElement out;
    for (const auto& [cfg, c] : elt.terms()) {
        const std::string& w = cfg.word();
        const std::size_t L = w.size();
        switch (r) {
            case 1: {
                if (pos + 1 >= L || w[pos] != 'd' || w[pos + 1] != 'd') pattern_mismatch(r, cfg, position);
                std::string del = w.substr(0, pos) + w.substr(pos + 2);
                std::string plained = w;
                plained[pos] = plained[pos + 1] = 'p';
                out.add(SphereConfig::from_word(del), c);
                out.add(SphereConfig::from_word(plained), c * quarter_a1_sq());
                break;
            }
            case 2: {
                if (pos + 1 >= L || w[pos] != 'd' || w[pos + 1] != 'p') pattern_mismatch(r, cfg, position);
                std::string swapped = w;
                swapped[pos] = 'p';
                swapped[pos + 1] = 'd';
                std::string plained = w;
                plained[pos] = 'p';
                out.add(SphereConfig::from_word(swapped), -c);
                out.add(SphereConfig::from_word(plained), c * a1_poly());
                break;
            }
            case 3: {
                // rotation: the canonical representative is unchanged
                if (L > 0 && pos >= L) pattern_mismatch(r, cfg, position);
                out.add(cfg, c);
                break;
            }
            case 4: {
                if (pos + 2 >= L || w.substr(pos, 3) != "ddp") pattern_mismatch(r, cfg, position);
                std::string moved = w;
                moved[pos] = 'p';
                moved[pos + 1] = moved[pos + 2] = 'd';
                out.add(SphereConfig::from_word(moved), c);
                break;
            }
            case 5: {
                if (pos + 2 >= L || w.substr(pos, 3) != "dpp") pattern_mismatch(r, cfg, position);
                std::string moved = w;
                moved[pos] = moved[pos + 1] = 'p';
                moved[pos + 2] = 'd';
                out.add(SphereConfig::from_word(moved), c);
                break;
            }
            case 6: {
                if (L < 2 || cfg.dot_count() != 1 || pos >= L || w[pos] != 'd') {
                    pattern_mismatch(r, cfg, position);
                }
                out.add(SphereConfig::from_word(std::string(L, 'p')), c * half_a1());
                break;
            }
        }
    }
    return out;
}

// -------------------------------------------------------------- normalization

SphereConfig standard_position(const SphereConfig& config) {
    const std::string& w = config.word();
    const std::size_t L = w.size();
    if (L == 0) return config;
    std::size_t dots = config.dot_count();
    if (L % 2 == 1) {
        return SphereConfig::from_word(std::string(dots, 'd') + std::string(L - dots, 'p'));
    }
    // the two rotation parity classes; relations 4 and 5 move dots by two
    // spheres, so the unordered pair of class counts is a complete invariant
    std::size_t even_dots = 0, odd_dots = 0;
    for (std::size_t i = 0; i < L; ++i) {
        if (w[i] == 'd') (i % 2 == 0 ? even_dots : odd_dots) += 1;
    }
    std::size_t m = std::min(even_dots, odd_dots);
    std::size_t t = std::max(even_dots, odd_dots) - m;
    std::string word(2 * m, 'd');
    for (std::size_t k = 0; k < t; ++k) word += "pd";
    word += std::string(L - 2 * m - 2 * t, 'p');
    return SphereConfig::from_word(word);
}

namespace {

// One invocation's rewriting state: memoized on canonical words, private to
// the call (no global caches).
class ReduceEngine {
public:
    NormalForm run(const std::string& raw) {
        std::string key = minimal_rotation(raw);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;

        const std::size_t L = key.size();
        const std::size_t dots =
            static_cast<std::size_t>(std::count(key.begin(), key.end(), 'd'));
        NormalForm out;
        if (dots == 0) {
            // odd unmarked configurations vanish; 2k spheres become X^k
            out = (L % 2 == 0) ? NormalForm::x_power(static_cast<unsigned>(L / 2))
                               : NormalForm::zero();
        } else if (L == 1) {
            out = NormalForm::e_generator();  // the single dotted sphere is e
        } else if (dots == 1) {
            // relation 6
            out = run(std::string(L, 'p')).scaled(half_a1());
        } else {
            // standard position, then anchor a dot at the last position and
            // gather the remaining dots rightward
            std::string std_word = standard_position(SphereConfig::from_word(key)).word();
            std::string rot = std_word.substr(1) + std_word[0];
            out = anchored(rot);
        }
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    // rot has a dot at its last position and at least two dots in total.
    // Moves the leftmost dot rightward with relation 2 until it meets the
    // next dot, then annihilates with relation 1.  The frame never rotates,
    // so the leftmost-dot position strictly increases and the chain stops.
    NormalForm anchored(const std::string& rot) {
        std::size_t i = rot.find('d');
        std::size_t j = rot.find('d', i + 1);
        if (j == i + 1) {
            // relation 1: dd = (delete both) + a1^2/4 (pp)
            std::string del = rot.substr(0, i) + rot.substr(i + 2);
            std::string plained = rot;
            plained[i] = plained[i + 1] = 'p';
            return run(del) + run(plained).scaled(quarter_a1_sq());
        }
        // relation 2: dp = -pd + a1 pp
        std::string swapped = rot;
        swapped[i] = 'p';
        swapped[i + 1] = 'd';
        std::string plained = rot;
        plained[i] = 'p';
        return run(plained).scaled(a1_poly()) - anchored(swapped);
    }

    std::map<std::string, NormalForm> memo_;
};

}  // namespace

NormalForm normalize_config(const SphereConfig& config) {
    ReduceEngine engine;
    return engine.run(config.word());
}

NormalForm normalize_element(const SkeinElement& elt) {
    ReduceEngine engine;
    NormalForm total;
    for (const auto& [cfg, c] : elt.terms()) total = total + engine.run(cfg.word()).scaled(c);
    return total;
}

NormalForm normalize(const std::vector<std::pair<MultiPoly, SurfaceDiagram>>& input) {
    ReduceEngine engine;
    NormalForm total;
    for (const auto& [coeff, diagram] : input) {
        require_a1_coeff(coeff);
        MultiPoly scalar = coeff;
        std::vector<std::pair<int, std::pair<MultiPoly, MultiPoly>>> spheres;
        for (const SurfaceComponent& comp : diagram.components) {
            switch (comp.kind) {
                case SurfaceComponent::Kind::fiberedParallel:
                    throw UsageError(
                        "fibered components are outside the sphere reduction; "
                        "see the dependence witness");
                case SurfaceComponent::Kind::boundingSphere:
                case SurfaceComponent::Kind::boundingTorus:
                    scalar *= evaluate_bounding(comp);
                    break;
                case SurfaceComponent::Kind::unboundingSphere: {
                    AElement mark = comp.mark ? *comp.mark : universal2().one();
                    require_universal2(mark);
                    // handle removal: each handle contributes one factor of g
                    AElement effective = mark * mark.system().g_power(comp.genus);
                    spheres.emplace_back(comp.position, reduce_mark(effective));
                    break;
                }
            }
        }
        if (scalar.is_zero()) continue;
        std::stable_sort(spheres.begin(), spheres.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        // expand each sphere's mark c_plain + c_dot x into plain/dot branches
        std::vector<std::pair<MultiPoly, std::string>> partial = {{scalar, ""}};
        for (const auto& [pos, coeffs] : spheres) {
            (void)pos;
            std::vector<std::pair<MultiPoly, std::string>> next;
            for (const auto& [c, word] : partial) {
                if (!coeffs.first.is_zero()) next.emplace_back(c * coeffs.first, word + "p");
                if (!coeffs.second.is_zero()) next.emplace_back(c * coeffs.second, word + "d");
            }
            partial = std::move(next);
        }
        for (const auto& [c, word] : partial) total = total + engine.run(word).scaled(c);
    }
    return total;
}

MultiPoly lambda_k(const SkeinElement& elt, unsigned k) {
    return normalize_element(elt).x_coefficient(k);
}

MultiPoly lambda_d(const SkeinElement& elt) { return normalize_element(elt).ecoeff(); }

// ------------------------------------------------------------- brute oracle

namespace {

// dense univariate polynomial over Q, for the fraction field Q(a1)
struct UniPoly {
    std::vector<Rational> c;  // c[i] * a1^i, trimmed

    static UniPoly from_int(int v) {
        UniPoly p;
        if (v != 0) p.c.push_back(Rational(v));
        return p;
    }
    static UniPoly from_mp(const MultiPoly& p) {
        UniPoly out;
        for (const auto& [mono, coeff] : p.terms()) {
            std::size_t deg = mono.empty() ? 0 : mono[0];
            if (out.c.size() <= deg) out.c.resize(deg + 1, Rational(0));
            out.c[deg] = out.c[deg] + coeff;
        }
        out.trim();
        return out;
    }
    MultiPoly to_mp() const {
        MultiPoly out(a1_table());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_zero())
                out += MultiPoly::monomial(a1_table(), {static_cast<std::uint32_t>(i)}, c[i]);
        }
        return out;
    }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    Rational lead() const { return c.back(); }

    UniPoly operator+(const UniPoly& o) const {
        UniPoly r = *this;
        if (r.c.size() < o.c.size()) r.c.resize(o.c.size(), Rational(0));
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        r.trim();
        return r;
    }
    UniPoly operator-(const UniPoly& o) const { return *this + o.scaled(Rational(-1)); }
    UniPoly scaled(const Rational& s) const {
        UniPoly r;
        if (s.is_zero()) return r;
        r.c = c;
        for (auto& v : r.c) v = v * s;
        return r;
    }
    UniPoly operator*(const UniPoly& o) const {
        UniPoly r;
        if (is_zero() || o.is_zero()) return r;
        r.c.assign(c.size() + o.c.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        r.trim();
        return r;
    }

    // polynomial remainder, for the Euclidean gcd
    static UniPoly rem(UniPoly a, const UniPoly& b) {
        while (!a.is_zero() && a.deg() >= b.deg()) {
            Rational f = a.lead() / b.lead();
            int shift = a.deg() - b.deg();
            for (std::size_t i = 0; i < b.c.size(); ++i) {
                a.c[i + shift] = a.c[i + shift] - f * b.c[i];
            }
            a.trim();
        }
        return a;
    }
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = rem(a, b);
            a = b;
            b = r;
        }
        if (!a.is_zero()) a = a.scaled(a.lead().inverse());  // monic
        return a;
    }
    static std::pair<UniPoly, UniPoly> divmod(UniPoly a, const UniPoly& b) {
        UniPoly q;
        q.c.assign(a.deg() >= b.deg() ? a.deg() - b.deg() + 1 : 0, Rational(0));
        while (!a.is_zero() && a.deg() >= b.deg()) {
            Rational f = a.lead() / b.lead();
            int shift = a.deg() - b.deg();
            q.c[shift] = f;
            for (std::size_t i = 0; i < b.c.size(); ++i) {
                a.c[i + shift] = a.c[i + shift] - f * b.c[i];
            }
            a.trim();
        }
        q.trim();
        return {q, a};
    }

    bool operator==(const UniPoly& o) const { return c == o.c; }
};

// rational function over Q(a1), normalized with a monic denominator
struct RatFunc {
    UniPoly num, den;

    RatFunc() : den(UniPoly::from_int(1)) {}
    explicit RatFunc(int v) : num(UniPoly::from_int(v)), den(UniPoly::from_int(1)) {}
    RatFunc(UniPoly n, UniPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    void normalize() {
        if (den.is_zero()) throw InternalInconsistency("rational function with zero denominator");
        if (num.is_zero()) {
            den = UniPoly::from_int(1);
            return;
        }
        UniPoly g = UniPoly::gcd(num, den);
        if (g.deg() > 0) {
            num = UniPoly::divmod(num, g).first;
            den = UniPoly::divmod(den, g).first;
        }
        Rational scale = den.lead().inverse();
        num = num.scaled(scale);
        den = den.scaled(scale);
    }

    bool is_zero() const { return num.is_zero(); }
    RatFunc operator+(const RatFunc& o) const { return RatFunc(num * o.den + o.num * den, den * o.den); }
    RatFunc operator-(const RatFunc& o) const { return RatFunc(num * o.den - o.num * den, den * o.den); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw NotInvertible("division by the zero rational function");
        return RatFunc(num * o.den, den * o.num);
    }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

RatFunc ratfunc_from_mp(const MultiPoly& p) {
    return RatFunc(UniPoly::from_mp(p), UniPoly::from_int(1));
}

std::vector<std::string> all_rotations(const std::string& word) {
    std::vector<std::string> out;
    std::string cur = word;
    for (std::size_t i = 0; i < std::max<std::size_t>(word.size(), 1); ++i) {
        if (std::find(out.begin(), out.end(), cur) == out.end()) out.push_back(cur);
        if (!cur.empty()) std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    }
    return out;
}

// The eliminated relation system on configurations with at most cap spheres.
// Deterministic in cap, so it is built once and shared between calls.
struct OracleData {
    std::vector<std::string> columns;
    std::map<std::string, std::size_t> index;
    std::size_t first_gen = 0;  // columns from here on are residual generators
    std::vector<std::vector<RatFunc>> rows;  // reduced row echelon form
    std::vector<int> pivots;
};

OracleData build_oracle(int cap) {
    OracleData data;

    // every canonical configuration with at most cap spheres
    std::set<std::string> canon;
    for (int s = 0; s <= cap; ++s) {
        for (unsigned mask = 0; mask < (1u << s); ++mask) {
            std::string w(static_cast<std::size_t>(s), 'p');
            for (int b = 0; b < s; ++b)
                if (mask & (1u << b)) w[static_cast<std::size_t>(b)] = 'd';
            canon.insert(minimal_rotation(w));
        }
    }
    // column order: everything else first, then the residual generators
    // X^0, X^1, ..., e so that elimination pivots away from them
    std::vector<std::string> generators;
    for (int s = 0; s <= cap; s += 2) generators.push_back(std::string(s, 'p'));
    generators.push_back("d");
    for (const std::string& w : canon) {
        if (std::find(generators.begin(), generators.end(), w) == generators.end())
            data.columns.push_back(w);
    }
    data.first_gen = data.columns.size();
    for (const std::string& g : generators) data.columns.push_back(g);
    for (std::size_t i = 0; i < data.columns.size(); ++i) data.index[data.columns[i]] = i;

    const RatFunc a1 = ratfunc_from_mp(a1_poly());
    const RatFunc quarter_sq = ratfunc_from_mp(quarter_a1_sq());
    const RatFunc half = ratfunc_from_mp(half_a1());

    auto new_row = [&]() { return std::vector<RatFunc>(data.columns.size(), RatFunc(0)); };
    auto bump = [&](std::vector<RatFunc>& row, const std::string& w, const RatFunc& v) {
        std::size_t col = data.index.at(minimal_rotation(w));
        row[col] = row[col] + v;
    };

    for (const std::string& base : canon) {
        for (const std::string& rot : all_rotations(base)) {
            const std::size_t L = rot.size();
            const std::size_t dots =
                static_cast<std::size_t>(std::count(rot.begin(), rot.end(), 'd'));
            for (std::size_t pos = 0; pos < L; ++pos) {
                if (pos + 1 < L && rot[pos] == 'd' && rot[pos + 1] == 'd') {
                    auto row = new_row();
                    bump(row, rot, RatFunc(1));
                    bump(row, rot.substr(0, pos) + rot.substr(pos + 2), RatFunc(-1));
                    std::string plained = rot;
                    plained[pos] = plained[pos + 1] = 'p';
                    bump(row, plained, RatFunc(0) - quarter_sq);
                    data.rows.push_back(std::move(row));
                }
                if (pos + 1 < L && rot[pos] == 'd' && rot[pos + 1] == 'p') {
                    auto row = new_row();
                    bump(row, rot, RatFunc(1));
                    std::string swapped = rot;
                    swapped[pos] = 'p';
                    swapped[pos + 1] = 'd';
                    bump(row, swapped, RatFunc(1));
                    std::string plained = rot;
                    plained[pos] = 'p';
                    bump(row, plained, RatFunc(0) - a1);
                    data.rows.push_back(std::move(row));
                }
                if (pos + 2 < L && rot.compare(pos, 3, "ddp") == 0) {
                    auto row = new_row();
                    bump(row, rot, RatFunc(1));
                    std::string moved = rot;
                    moved[pos] = 'p';
                    moved[pos + 1] = moved[pos + 2] = 'd';
                    bump(row, moved, RatFunc(-1));
                    data.rows.push_back(std::move(row));
                }
                if (pos + 2 < L && rot.compare(pos, 3, "dpp") == 0) {
                    auto row = new_row();
                    bump(row, rot, RatFunc(1));
                    std::string moved = rot;
                    moved[pos] = moved[pos + 1] = 'p';
                    moved[pos + 2] = 'd';
                    bump(row, moved, RatFunc(-1));
                    data.rows.push_back(std::move(row));
                }
                if (dots == 1 && L >= 2 && rot[pos] == 'd') {
                    auto row = new_row();
                    bump(row, rot, RatFunc(1));
                    bump(row, std::string(L, 'p'), RatFunc(0) - half);
                    data.rows.push_back(std::move(row));
                }
            }
        }
    }

    data.pivots = rref(data.rows);
    for (int pc : data.pivots) {
        if (static_cast<std::size_t>(pc) >= data.first_gen) {
            throw InternalInconsistency("oracle eliminated a residual generator");
        }
    }
    return data;
}

const OracleData& oracle_data(int cap) {
    static std::mutex mu;
    static std::map<int, OracleData> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto hit = cache.find(cap);
    if (hit == cache.end()) hit = cache.emplace(cap, build_oracle(cap)).first;
    return hit->second;
}

}  // namespace

NormalForm brute_force_normal_form(const SkeinElement& elt, int maxSpheres) {
    if (maxSpheres < 0 || maxSpheres > 8) {
        throw SizeBound("the oracle handles 0..8 spheres, got " + std::to_string(maxSpheres));
    }
    for (const auto& [cfg, c] : elt.terms()) {
        (void)c;
        if (cfg.size() > static_cast<std::size_t>(maxSpheres)) {
            throw SizeBound("configuration [" + cfg.str() + "] exceeds the declared bound " +
                            std::to_string(maxSpheres));
        }
    }
    const int cap = maxSpheres + 2;
    const OracleData& od = oracle_data(cap);

    std::vector<RatFunc> v(od.columns.size(), RatFunc(0));
    for (const auto& [cfg, c] : elt.terms()) {
        std::size_t col = od.index.at(cfg.word());
        v[col] = v[col] + ratfunc_from_mp(c);
    }
    for (std::size_t r = 0; r < od.rows.size(); ++r) {
        std::size_t pc = static_cast<std::size_t>(od.pivots[r]);
        if (v[pc].is_zero()) continue;
        RatFunc f = v[pc];
        for (std::size_t j = 0; j < od.columns.size(); ++j) v[j] = v[j] - f * od.rows[r][j];
    }
    for (std::size_t j = 0; j < od.first_gen; ++j) {
        if (!v[j].is_zero()) {
            throw InternalInconsistency("oracle residue escaped the generator span at [" +
                                        SphereConfig::from_word(od.columns[j]).str() + "]");
        }
    }

    auto as_poly = [&](const RatFunc& f) {
        if (f.den.deg() != 0) {
            throw InternalInconsistency("oracle produced a non-polynomial coefficient");
        }
        return f.num.scaled(f.den.c[0].inverse()).to_mp();
    };
    NormalForm out;
    for (std::size_t k = 0; 2 * k <= static_cast<std::size_t>(cap); ++k) {
        std::string gen(2 * k, 'p');
        MultiPoly coeff = as_poly(v[od.index.at(gen)]);
        if (!coeff.is_zero())
            out = out + NormalForm::x_power(static_cast<unsigned>(k)).scaled(coeff);
    }
    MultiPoly ec = as_poly(v[od.index.at("d")]);
    if (!ec.is_zero()) out = out + NormalForm::e_generator().scaled(ec);
    return out;
}

// ------------------------------------------------------ tube-parameter chain

TubeParams tube_params_for_genus(unsigned i) {
    FrobSystem sys = universal2();
    AElement g2i = sys.g_power(2 * i);
    return {sys.epsilon(g2i), sys.epsilon(sys.x_power(1) * g2i)};
}

void TubeSum::add(const SphereConfig& config, const MultiPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms.emplace(config, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms.erase(it);
    }
}

std::string TubeSum::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [cfg, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string cs = c.str();
        if (c.term_count() > 1) cs = "(" + cs + ")";
        out += cs + " * [" + cfg.str() + "]";
    }
    return out;
}

namespace {

// exact division by a1 over the rank-2 base ring
MultiPoly divide_by_a1(const MultiPoly& p) {
    MultiPoly out(p.table());
    std::size_t a1_index = p.table()->index_of("a1").value();
    for (const auto& [mono, c] : p.terms()) {
        if (mono[a1_index] == 0) {
            throw InternalInconsistency("tube chain coefficient is not divisible by a1");
        }
        Monomial m = mono;
        m[a1_index] -= 1;
        out += MultiPoly::monomial(p.table(), std::move(m), c);
    }
    return out;
}

// a1 (p p at pos) = (d p) + (p d) - t_plain (both deleted)
TubeSum rewrite_plain_pair(const TubeSum& in, std::size_t pos, const MultiPoly& t_plain) {
    TubeSum out;
    for (const auto& [cfg, c] : in.terms) {
        const std::string& w = cfg.word();
        if (pos + 1 >= w.size() || w[pos] != 'p' || w[pos + 1] != 'p') {
            throw InternalInconsistency("tube chain expected a plain pair in [" + cfg.str() + "]");
        }
        MultiPoly base = divide_by_a1(c);
        std::string left = w, right = w;
        left[pos] = 'd';
        right[pos + 1] = 'd';
        out.add(SphereConfig::from_word(left), base);
        out.add(SphereConfig::from_word(right), base);
        out.add(SphereConfig::from_word(w.substr(0, pos) + w.substr(pos + 2)),
                -(base * t_plain));
    }
    return out;
}

// (d d at pos) = t_dot (both deleted) - a2 (both plained)
TubeSum rewrite_dot_pair(const TubeSum& in, std::size_t pos, const MultiPoly& t_dot,
                         const MultiPoly& a2) {
    TubeSum out;
    for (const auto& [cfg, c] : in.terms) {
        const std::string& w = cfg.word();
        if (pos + 1 >= w.size() || w[pos] != 'd' || w[pos + 1] != 'd') {
            out.add(cfg, c);  // untouched carry term
            continue;
        }
        out.add(SphereConfig::from_word(w.substr(0, pos) + w.substr(pos + 2)), c * t_dot);
        std::string plained = w;
        plained[pos] = plained[pos + 1] = 'p';
        out.add(SphereConfig::from_word(plained), -(c * a2));
    }
    return out;
}

}  // namespace

DependenceWitness dependence_witness(unsigned i, const TubeParams& params) {
    FrobSystem sys = universal2();
    const VarTablePtr& base = sys.base();
    TubeParams expected = tube_params_for_genus(i);
    if (!same_table(params.t_plain.table(), base) || !same_table(params.t_dot.table(), base) ||
        params.t_plain != expected.t_plain || params.t_dot != expected.t_dot) {
        throw ParamsInconsistent("tube parameters disagree with eps(g^2i) and eps(x g^2i)");
    }
    MultiPoly a1 = MultiPoly::variable(base, "a1");
    MultiPoly a2 = MultiPoly::variable(base, "a2");

    SphereConfig ooo = SphereConfig::from_word("ppp");
    SphereConfig o = SphereConfig::from_word("p");

    // a1^2 <ooo> -> 2 a1 <ood> -> 4 <odd> -> 4 t_dot <o> - 4 a2 <ooo>
    TubeSum chain;
    chain.add(ooo, a1 * a1);
    chain = rewrite_plain_pair(chain, 1, params.t_plain);
    chain = rewrite_plain_pair(chain, 1, params.t_plain);
    chain = rewrite_dot_pair(chain, 0, params.t_dot, a2);

    TubeSum lhs = chain;
    lhs.add(ooo, a2.scaled(Rational(4)));
    TubeSum rhs;
    rhs.add(o, params.t_dot.scaled(Rational(4)));
    return {lhs, rhs};
}

// --------------------------------------------------------- lambda_F handling

AbstractComponent AbstractComponent::marked_f(unsigned power) {
    AbstractComponent c;
    c.kind = Kind::markedF;
    c.power = power;
    return c;
}

AbstractComponent AbstractComponent::sphere(const AElement& mark) {
    AbstractComponent c;
    c.kind = Kind::sphere;
    c.mark = mark;
    return c;
}

AbstractComponent AbstractComponent::sphere() {
    AbstractComponent c;
    c.kind = Kind::sphere;
    return c;
}

AbstractComponent AbstractComponent::compressible_torus(const AElement& mark) {
    AbstractComponent c;
    c.kind = Kind::compressibleTorus;
    c.mark = mark;
    return c;
}

AbstractComponent AbstractComponent::compressible_torus() {
    AbstractComponent c;
    c.kind = Kind::compressibleTorus;
    return c;
}

AbstractComponent AbstractComponent::other() { return AbstractComponent(); }

namespace {

void require_repeated_roots(const FrobSystem& sys) {
    const auto& mults = sys.root_multiplicities();
    if (!mults) {
        throw UsageError("lambda_F needs a system built by specialize_roots");
    }
    for (int m : *mults) {
        if (m < 2) {
            throw RootNotRepeated("root multiplicity " + std::to_string(m) +
                                  " violates the repeated-root hypothesis");
        }
    }
}

MultiPoly neg_alpha(const FrobSystem& sys, int rootIndex) {
    const auto& mults = sys.root_multiplicities();
    if (rootIndex < 1 || rootIndex > static_cast<int>(mults->size())) {
        throw UsageError("root index " + std::to_string(rootIndex) + " outside 1.." +
                         std::to_string(mults->size()));
    }
    return -MultiPoly::variable(sys.base(), "alpha" + std::to_string(rootIndex));
}

}  // namespace

MultiPoly lambda_F_eval(const AbstractSurface& s, const FrobSystem& sys, int rootIndex) {
    require_repeated_roots(sys);
    MultiPoly neg = neg_alpha(sys, rootIndex);

    int f_count = 0;
    unsigned f_power = 0;
    bool dead = false;
    MultiPoly prod = MultiPoly::constant(sys.base(), Rational(1));
    for (const AbstractComponent& comp : s.components) {
        switch (comp.kind) {
            case AbstractComponent::Kind::markedF:
                ++f_count;
                f_power = comp.power;
                break;
            case AbstractComponent::Kind::sphere: {
                AElement mark = comp.mark ? *comp.mark : sys.one();
                if (mark.system() != sys) throw SystemMismatch("sphere mark from another system");
                prod *= sys.epsilon(mark);
                break;
            }
            case AbstractComponent::Kind::compressibleTorus: {
                AElement mark = comp.mark ? *comp.mark : sys.one();
                if (mark.system() != sys) throw SystemMismatch("torus mark from another system");
                prod *= sys.epsilon(mark * sys.genus_term());
                break;
            }
            case AbstractComponent::Kind::other:
                dead = true;
                break;
        }
    }
    if (dead || f_count > 1) return MultiPoly(sys.base());
    if (f_count == 1) return neg.pow(f_power) * prod;
    return prod;
}

bool neckcut_functional_check(const std::vector<int>& multiplicities, int rootIndex) {
    for (int m : multiplicities) {
        if (m < 2) {
            throw RootNotRepeated("root multiplicity " + std::to_string(m) +
                                  " violates the repeated-root hypothesis");
        }
    }
    FrobSystem sys = specialize_roots(multiplicities);
    MultiPoly neg = neg_alpha(sys, rootIndex);
    const int n = sys.rank();
    const std::vector<MultiPoly>& a = sys.pcoeffs();  // a[k-1] holds a_k

    // n(-alpha)^(n-1) - sum_{j=0}^{n-2} a_{n-1-j} (j+1) (-alpha)^j
    MultiPoly derivative_at_root = neg.pow(static_cast<unsigned>(n - 1)).scaled(Rational(n));
    for (int j = 0; j <= n - 2; ++j) {
        derivative_at_root -= a[static_cast<std::size_t>(n - 2 - j)]
                                  .scaled(Rational(j + 1)) *
                              neg.pow(static_cast<unsigned>(j));
    }

    // ring compatibility: (-alpha)^n = a1 (-alpha)^(n-1) + ... + an
    MultiPoly lhs = neg.pow(static_cast<unsigned>(n));
    MultiPoly rhs(sys.base());
    for (int k = 1; k <= n; ++k) {
        rhs += a[static_cast<std::size_t>(k - 1)] * neg.pow(static_cast<unsigned>(n - k));
    }
    return derivative_at_root.is_zero() && lhs == rhs;
}

}  // namespace neckcut
