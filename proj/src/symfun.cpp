#include "neckcut/symfun.hpp"

#include <algorithm>
#include <sstream>

namespace neckcut {

namespace {

bool weakly_decreasing(const std::vector<unsigned>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i - 1] < v[i]) return false;
    }
    return true;
}

}  // namespace

Partition::Partition(std::vector<unsigned> parts, unsigned nvars)
    : parts_(std::move(parts)), nvars_(nvars) {}

Partition Partition::make(std::vector<unsigned> parts, unsigned nvars) {
    std::sort(parts.begin(), parts.end(), std::greater<unsigned>());
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    if (parts.size() > nvars) {
        throw TooManyParts("partition with " + std::to_string(parts.size()) +
                           " parts does not fit in " + std::to_string(nvars) +
                           " variables");
    }
    return Partition(std::move(parts), nvars);
}

Partition Partition::parse(const std::string& text, unsigned nvars) {
    std::string body = text;
    // strip surrounding whitespace, then the optional parentheses
    auto first = body.find_first_not_of(" \t");
    auto last = body.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty partition text");
    body = body.substr(first, last - first + 1);
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw ParseError("unbalanced parenthesis in partition: " + text);
        body = body.substr(1, body.size() - 2);
    }
    std::vector<unsigned> parts;
    std::istringstream in(body);
    std::string token;
    while (in >> token) {
        unsigned part = 0;
        unsigned mult = 1;
        auto caret = token.find('^');
        try {
            if (caret == std::string::npos) {
                part = static_cast<unsigned>(std::stoul(token));
            } else {
                part = static_cast<unsigned>(std::stoul(token.substr(0, caret)));
                mult = static_cast<unsigned>(std::stoul(token.substr(caret + 1)));
            }
        } catch (const std::exception&) {
            throw ParseError("bad partition token '" + token + "' in: " + text);
        }
        if (part == 0) throw ParseError("partition parts must be positive: " + text);
        for (unsigned i = 0; i < mult; ++i) parts.push_back(part);
    }
    return make(std::move(parts), nvars);
}

unsigned Partition::weight() const {
    unsigned w = 0;
    for (unsigned p : parts_) w += p;
    return w;
}

std::vector<unsigned> Partition::padded() const {
    std::vector<unsigned> v = parts_;
    v.resize(nvars_, 0);
    return v;
}

std::string Partition::str() const {
    std::string out = "(";
    std::size_t i = 0;
    while (i < parts_.size()) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        if (i > 0) out += ' ';
        out += std::to_string(parts_[i]) + "^" + std::to_string(j - i);
        i = j;
    }
    out += ')';
    return out;
}

bool Partition::operator==(const Partition& other) const {
    return nvars_ == other.nvars_ && parts_ == other.parts_;
}

bool Partition::operator<(const Partition& other) const {
    if (nvars_ != other.nvars_) return nvars_ < other.nvars_;
    return padded() < other.padded();
}

SymPoly SymPoly::zero(unsigned nvars) { return SymPoly(nvars); }

SymPoly SymPoly::one(unsigned nvars) {
    return monomial(Partition::make({}, nvars));
}

SymPoly SymPoly::monomial(const Partition& lambda, const Rational& coeff) {
    SymPoly s(lambda.nvars());
    s.add_term(lambda, coeff);
    return s;
}

SymPoly SymPoly::e(unsigned k, unsigned nvars) {
    if (k > nvars) return zero(nvars);
    return monomial(Partition::make(std::vector<unsigned>(k, 1), nvars));
}

SymPoly SymPoly::p(unsigned k, unsigned nvars) {
    if (k == 0) return one(nvars).scaled(Rational(static_cast<long>(nvars)));
    return monomial(Partition::make({k}, nvars));
}

Rational SymPoly::coefficient(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SymPoly::add_term(const Partition& lambda, const Rational& coeff) {
    if (lambda.nvars() != nvars_) {
        throw NvarsMismatch("partition over " + std::to_string(lambda.nvars()) +
                            " variables added to a " + std::to_string(nvars_) +
                            "-variable symmetric polynomial");
    }
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(lambda, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymPoly SymPoly::operator+(const SymPoly& other) const {
    if (nvars_ != other.nvars_) throw NvarsMismatch("adding symmetric polynomials over different variable counts");
    SymPoly out = *this;
    for (const auto& [lam, c] : other.terms_) out.add_term(lam, c);
    return out;
}

SymPoly SymPoly::operator-(const SymPoly& other) const {
    return *this + other.scaled(Rational(-1));
}

SymPoly SymPoly::scaled(const Rational& c) const {
    SymPoly out(nvars_);
    if (c.is_zero()) return out;
    for (const auto& [lam, v] : terms_) out.terms_.emplace(lam, v * c);
    return out;
}

bool SymPoly::operator==(const SymPoly& other) const {
    return nvars_ == other.nvars_ && terms_ == other.terms_;
}

std::string SymPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool leading = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        Rational mag = c.is_negative() ? -c : c;
        if (leading) {
            if (c.is_negative()) out += "-";
        } else {
            out += c.is_negative() ? " - " : " + ";
        }
        std::string body = "m_" + it->first.str();
        if (it->first.parts().empty()) body = "1";
        if (mag == Rational(1) && !it->first.parts().empty()) {
            out += body;
        } else if (it->first.parts().empty()) {
            out += mag.str();
        } else {
            out += mag.str() + "*" + body;
        }
        leading = false;
    }
    return out;
}

namespace {

VarTablePtr numbered_table(const char* prefix, unsigned nvars) {
    std::vector<std::string> names;
    names.reserve(nvars);
    for (unsigned i = 1; i <= nvars; ++i) names.push_back(prefix + std::to_string(i));
    return VarTable::make(std::move(names));
}

}  // namespace

VarTablePtr alpha_table(unsigned nvars) { return numbered_table("alpha", nvars); }

VarTablePtr elem_table(unsigned nvars) { return numbered_table("e", nvars); }

MultiPoly monomial_expand(const Partition& lambda) {
    VarTablePtr table = alpha_table(lambda.nvars());
    MultiPoly out(table);
    std::vector<unsigned> exps = lambda.padded();
    std::sort(exps.begin(), exps.end());
    // next_permutation over the ascending start enumerates each distinct
    // arrangement of the multiset exactly once
    do {
        Monomial m(exps.begin(), exps.end());
        out += MultiPoly::monomial(table, std::move(m), Rational(1));
    } while (std::next_permutation(exps.begin(), exps.end()));
    return out;
}

MultiPoly expand(const SymPoly& s) {
    MultiPoly out(alpha_table(s.nvars()));
    for (const auto& [lam, c] : s.terms()) out += monomial_expand(lam).scaled(c);
    return out;
}

namespace {

// Greedy m-basis extraction without the symmetry precondition check; callers
// guarantee symmetric input.
SymPoly collect_monomial_basis(MultiPoly p) {
    const unsigned nvars = static_cast<unsigned>(p.table()->size());
    SymPoly out = SymPoly::zero(nvars);
    while (!p.is_zero()) {
        auto lead = p.terms().begin();
        for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
            if (lead->first < it->first) lead = it;
        }
        std::vector<unsigned> exps(lead->first.begin(), lead->first.end());
        if (!weakly_decreasing(exps)) {
            throw InternalInconsistency(
                "lex-leading exponent vector of a symmetric polynomial is not a partition");
        }
        Rational c = lead->second;
        Partition lam = Partition::make(std::move(exps), nvars);
        out.add_term(lam, c);
        p -= monomial_expand(lam).scaled(c);
    }
    return out;
}

}  // namespace

SymPoly to_monomial_basis(const MultiPoly& p) {
    const VarTablePtr& table = p.table();
    const unsigned nvars = static_cast<unsigned>(table->size());
    for (unsigned i = 0; i + 1 < nvars; ++i) {
        const std::string& a = table->name(i);
        const std::string& b = table->name(i + 1);
        std::unordered_map<std::string, MultiPoly> swap_ab = {
            {a, MultiPoly::variable(table, b)},
            {b, MultiPoly::variable(table, a)},
        };
        if (p.subst(swap_ab) != p) {
            throw NotSymmetric("polynomial changes under the transposition " + a +
                               " <-> " + b);
        }
    }
    return collect_monomial_basis(p);
}

SymPoly sym_mul(const SymPoly& s, const SymPoly& t) {
    if (s.nvars() != t.nvars()) {
        throw NvarsMismatch("product of symmetric polynomials over " +
                            std::to_string(s.nvars()) + " and " +
                            std::to_string(t.nvars()) + " variables");
    }
    return collect_monomial_basis(expand(s) * expand(t));
}

ElemPoly to_elementary_basis(const SymPoly& s) {
    const unsigned nvars = s.nvars();
    VarTablePtr etable = elem_table(nvars);
    MultiPoly expression(etable);
    SymPoly work = s;
    while (!work.is_zero()) {
        // leading term under the padded-lex order: last key in the map
        const auto& [lam, c] = *work.terms().rbegin();
        std::vector<unsigned> padded = lam.padded();
        // e_1^(l1-l2) e_2^(l2-l3) ... e_n^(ln) has leading monomial alpha^lam
        Monomial emono(nvars, 0);
        SymPoly product = SymPoly::one(nvars);
        for (unsigned i = 0; i < nvars; ++i) {
            unsigned next = (i + 1 < nvars) ? padded[i + 1] : 0;
            unsigned d = padded[i] - next;
            emono[i] = d;
            for (unsigned k = 0; k < d; ++k) product = sym_mul(product, SymPoly::e(i + 1, nvars));
        }
        expression += MultiPoly::monomial(etable, std::move(emono), c);
        work = work - product.scaled(c);
    }

    // round-trip check: substituting the expansions of e_k must recover s
    std::unordered_map<std::string, MultiPoly> bindings;
    for (unsigned k = 1; k <= nvars; ++k) {
        bindings.emplace("e" + std::to_string(k),
                         monomial_expand(Partition::make(std::vector<unsigned>(k, 1), nvars)));
    }
    MultiPoly recovered = nvars == 0 ? expression : expression.subst(bindings);
    if (recovered != expand(s)) {
        throw InternalInconsistency("elementary-basis decomposition failed its round trip");
    }
    return ElemPoly{expression};
}

bool verify_product_identities(unsigned a, unsigned b, unsigned n) {
    if (a < 1) throw UsageError("the power-sum index must be positive");
    if (b < 1 || b > n) {
        throw BOutOfRange("e-index " + std::to_string(b) + " outside 1.." + std::to_string(n));
    }
    SymPoly lhs = sym_mul(SymPoly::p(a, n), SymPoly::e(b, n));
    SymPoly rhs = SymPoly::zero(n);
    auto hook = [n](unsigned head, unsigned ones) {
        std::vector<unsigned> parts(ones, 1);
        parts.push_back(head);
        return Partition::make(std::move(parts), n);
    };
    if (b == n) {
        rhs = SymPoly::monomial(hook(a + 1, n - 1));
    } else if (a == 1) {
        rhs = SymPoly::monomial(hook(2, b - 1)) +
              SymPoly::e(b + 1, n).scaled(Rational(static_cast<long>(b) + 1));
    } else {
        rhs = SymPoly::monomial(hook(a + 1, b - 1)) + SymPoly::monomial(hook(a, b));
    }
    return lhs == rhs;
}

namespace {

void partitions_rec(unsigned remaining, unsigned max_part, unsigned slots,
                    std::vector<unsigned>& acc, unsigned nvars,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition::make(acc, nvars));
        return;
    }
    if (slots == 0) return;
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
        acc.push_back(part);
        partitions_rec(remaining - part, part, slots - 1, acc, nvars, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> all_partitions(unsigned weight, unsigned nvars) {
    std::vector<Partition> out;
    std::vector<unsigned> acc;
    partitions_rec(weight, weight == 0 ? 1 : weight, nvars, acc, nvars, out);
    return out;
}

}  // namespace neckcut
