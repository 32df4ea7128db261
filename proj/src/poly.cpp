#include "neckcut/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace neckcut {

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

// ----------------------------------------------------------------- VarTable

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw UsageError("empty variable name");
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw UsageError("duplicate variable name '" + names_[i] + "'");
        if (names_[i] == "x") {
            if (i + 1 != names_.size())
                throw UsageError("quotient variable x must be last in the table");
            has_x_ = true;
        }
    }
}

VarTablePtr VarTable::make(std::vector<std::string> names) {
    return VarTablePtr(new VarTable(std::move(names)));
}

VarTablePtr VarTable::coefficients(int n, bool with_x) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    if (with_x) names.push_back("x");
    return make(std::move(names));
}

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

// ---------------------------------------------------------------- TermOrder

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
    long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    if (x_major && !a.empty() && a.back() != b.back()) return a.back() < b.back();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(VarTablePtr table)
    : table_(std::move(table)), terms_(TermOrder{table_ && table_->has_trailing_x()}) {
    if (!table_) throw UsageError("null variable table");
}

MultiPoly MultiPoly::constant(VarTablePtr table, const Rational& c) {
    MultiPoly p(std::move(table));
    if (!c.is_zero()) p.terms_.emplace(Monomial(p.table_->size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(VarTablePtr table, std::string_view name) {
    MultiPoly p(std::move(table));
    auto idx = p.table_->index_of(name);
    if (!idx) throw UnknownVariable(std::string(name));
    Monomial m(p.table_->size(), 0);
    m[*idx] = 1;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(VarTablePtr table, Monomial m, const Rational& c) {
    MultiPoly p(std::move(table));
    if (m.size() != p.table_->size())
        throw UsageError("exponent vector length does not match table");
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Monomial& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw UsageError("polynomial is not constant: " + str());
    return terms_.begin()->second;
}

bool MultiPoly::is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.is_integer(); });
}

int MultiPoly::total_degree() const {
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (auto e : m) d += static_cast<int>(e);
        deg = std::max(deg, d);
    }
    return deg;
}

int MultiPoly::degree_in(std::size_t var) const {
    int deg = 0;
    for (const auto& [m, c] : terms_)
        deg = std::max(deg, static_cast<int>(m.at(var)));
    return deg;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::insert_term(Monomial m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(std::move(m), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::require_same_table(const MultiPoly& o) const {
    if (!same_table(table_, o.table_))
        throw VarTableMismatch("operands live over different variable tables");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(table_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_same_table(o);
    for (const auto& [m, c] : o.terms_) insert_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_same_table(o);
    for (const auto& [m, c] : o.terms_) insert_term(m, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_same_table(b);
    MultiPoly r(a.table_);
    Monomial m(a.table_->size(), 0);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.insert_term(m, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r(table_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly r = constant(table_, Rational(1));
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
}

MultiPoly MultiPoly::derivative(std::string_view var) const {
    auto idx = table_->index_of(var);
    if (!idx) throw UnknownVariable(std::string(var));
    MultiPoly r(table_);
    for (const auto& [m, c] : terms_) {
        if (m[*idx] == 0) continue;
        Monomial d = m;
        d[*idx] -= 1;
        r.insert_term(std::move(d), c * Rational(static_cast<long>(m[*idx])));
    }
    return r;
}

MultiPoly MultiPoly::subst(const std::unordered_map<std::string, MultiPoly>& bindings) const {
    if (bindings.empty()) return *this;
    VarTablePtr target = bindings.begin()->second.table();
    for (const auto& [name, value] : bindings) {
        if (!table_->index_of(name))
            throw UnknownVariable(name + " is not in the source table");
        if (!same_table(target, value.table()))
            throw VarTableMismatch("substitution values live over different tables");
    }
    // replacement for every source variable: bound value, or the same-named
    // variable of the target table
    std::vector<MultiPoly> repl;
    repl.reserve(table_->size());
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto it = bindings.find(table_->name(i));
        if (it != bindings.end()) {
            repl.push_back(it->second);
        } else if (target->index_of(table_->name(i))) {
            repl.push_back(MultiPoly::variable(target, table_->name(i)));
        } else {
            throw UnboundVariable(table_->name(i) + " has no binding and no target variable");
        }
    }
    MultiPoly result(target);
    for (const auto& [m, c] : terms_) {
        MultiPoly term = MultiPoly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term *= repl[i].pow(m[i]);
        result += term;
    }
    return result;
}

Rational MultiPoly::eval(const std::unordered_map<std::string, Rational>& values) const {
    for (const auto& [name, v] : values)
        if (!table_->index_of(name))
            throw UnknownVariable(name + " is not in the table");
    std::vector<Rational> point;
    point.reserve(table_->size());
    for (std::size_t i = 0; i < table_->size(); ++i) {
        auto it = values.find(table_->name(i));
        if (it == values.end())
            throw UnboundVariable(table_->name(i) + " has no value");
        point.push_back(it->second);
    }
    Rational result(0);
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term *= point[i].pow(m[i]);
        result += term;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!same_table(a.table_, b.table_)) return false;
    return a.terms_ == b.terms_;
}

// ----------------------------------------------------------------- printing

namespace {

std::string monomial_str(const VarTable& table, const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += table.name(i);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

} // namespace

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // map iterates ascending; print largest term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        std::string mono = monomial_str(*table_, it->first);
        if (out.empty()) {
            if (c.is_negative()) out += "-";
        } else {
            out += c.is_negative() ? " - " : " + ";
        }
        Rational a = c.abs();
        if (mono.empty()) {
            out += a.str();
        } else if (a == Rational(1)) {
            out += mono;
        } else {
            out += a.str() + "*" + mono;
        }
    }
    return out;
}

// ------------------------------------------------------------------- parser

namespace {

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    // digits [ '/' digits ]
    Rational number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected number at position " + std::to_string(pos));
        std::size_t num_end = pos;
        if (pos < text.size() && text[pos] == '/') {
            std::size_t den_start = ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == den_start) throw ParseError("expected denominator digits");
        }
        (void)num_end;
        return Rational::parse(text.substr(start, pos - start));
    }
    unsigned integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer exponent");
        unsigned v = 0;
        for (std::size_t i = start; i < pos; ++i) v = v * 10 + (text[i] - '0');
        return v;
    }
    bool at_name() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    bool at_number() { return std::isdigit(static_cast<unsigned char>(peek())); }
    // longest known variable prefix of the alphanumeric run at the cursor
    std::size_t variable(const VarTable& table) {
        skip_ws();
        std::size_t start = pos, end = pos;
        while (end < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
            ++end;
        for (std::size_t stop = end; stop > start; --stop) {
            auto idx = table.index_of(text.substr(start, stop - start));
            if (idx) {
                pos = stop;
                return *idx;
            }
        }
        throw ParseError("unknown variable '" + std::string(text.substr(start, end - start)) + "'");
    }
};

} // namespace

MultiPoly MultiPoly::parse(VarTablePtr table, std::string_view text) {
    MultiPoly result(table);
    Lexer lex{text};
    bool first = true;
    while (true) {
        if (lex.done()) {
            if (first) throw ParseError("empty polynomial text");
            break;
        }
        Rational sign(1);
        if (lex.accept('-')) sign = Rational(-1);
        else if (lex.accept('+')) { /* explicit plus */ }
        else if (!first) throw ParseError("expected '+' or '-' between terms");

        // term := factor { ['*'] factor }
        Rational coeff = sign;
        Monomial mono(table->size(), 0);
        bool have_factor = false;
        while (true) {
            if (lex.at_number()) {
                coeff *= lex.number();
            } else if (lex.at_name()) {
                std::size_t idx = lex.variable(*table);
                unsigned e = 1;
                if (lex.accept('^')) e = lex.integer();
                mono[idx] += e;
            } else {
                break;
            }
            have_factor = true;
            if (lex.accept('*')) {
                if (!lex.at_number() && !lex.at_name())
                    throw ParseError("dangling '*'");
                continue;
            }
            if (lex.at_number() || lex.at_name()) continue; // implicit product
            break;
        }
        if (!have_factor) throw ParseError("expected a term");
        result.insert_term(std::move(mono), coeff);
        first = false;
    }
    return result;
}

} // namespace neckcut
