#pragma once

#include <random>

#include "neckcut/poly.hpp"

namespace neckcut::testing {

inline Rational rand_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    return Rational(num(rng), den(rng));
}

inline MultiPoly rand_poly(std::mt19937& rng, const VarTablePtr& table,
                           int max_terms = 6, unsigned max_deg = 4) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    MultiPoly p(table);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        Monomial m(table->size(), 0);
        if (!m.empty()) {
            // spread a random total degree over the variables
            unsigned total = deg(rng);
            std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
            for (unsigned d = 0; d < total; ++d) m[pick(rng)] += 1;
        }
        p += MultiPoly::monomial(table, std::move(m), rand_rational(rng));
    }
    return p;
}

} // namespace neckcut::testing
