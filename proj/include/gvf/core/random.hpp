#pragma once

#include "gvf/places/field_fpt.hpp"
#include "gvf/places/field_q.hpp"
#include "gvf/places/field_quad.hpp"
#include "gvf/places/field_qz.hpp"
#include "gvf/tropical/term.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

namespace gvf {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Nonzero rational +-n/d with 1 <= n, d <= bound.
inline Rational random_rational(Rng& rng, long bound = 30) {
    Rational r = make_rational(uniform(rng, 1, bound), uniform(rng, 1, bound));
    return uniform(rng, 0, 1) ? -r : r;
}

inline FpPoly random_fp_poly(std::uint64_t p, Rng& rng, int max_deg, bool monic) {
    while (true) {
        std::vector<std::uint64_t> cs(static_cast<std::size_t>(uniform(rng, 0, max_deg)) + 1);
        for (auto& x : cs) x = static_cast<std::uint64_t>(uniform(rng, 0, static_cast<long>(p) - 1));
        if (monic) cs.back() = 1;
        FpPoly f(p, cs);
        if (!f.is_zero()) return f;
    }
}

inline FpRatio random_fp_ratio(std::uint64_t p, Rng& rng, int max_deg = 3) {
    return FpRatio(random_fp_poly(p, rng, max_deg, false), random_fp_poly(p, rng, max_deg, true));
}

inline QuadElem random_quad(long d, Rng& rng, long bound = 9) {
    while (true) {
        QuadElem x(d, make_rational(uniform(rng, -bound, bound), uniform(rng, 1, 4)),
                   make_rational(uniform(rng, -bound, bound), uniform(rng, 1, 4)));
        if (!x.is_zero()) return x;
    }
}

inline QPoly random_qpoly(Rng& rng, int max_deg, long bound) {
    while (true) {
        std::vector<Rational> cs(static_cast<std::size_t>(uniform(rng, 0, max_deg)) + 1);
        for (auto& c : cs) c = uniform(rng, -bound, bound);
        QPoly f(cs);
        if (!f.is_zero()) return f;
    }
}

inline QzRatio random_qz(Rng& rng, int max_deg = 5, long bound = 20) {
    return QzRatio(random_qpoly(rng, max_deg, bound), random_qpoly(rng, max_deg, bound));
}

// Random Q-tropical term in x1..xn, every variable used at least once.
inline TropicalPoly random_term(Rng& rng, int n, int depth = 3) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t next = 0;
    auto leaf = [&]() {
        int k = next < order.size() ? order[next++] : static_cast<int>(uniform(rng, 1, n));
        return Term::variable(k);
    };
    std::function<Term(int)> build = [&](int d) -> Term {
        if (d == 0 || uniform(rng, 0, 3) == 0) return leaf();
        switch (uniform(rng, 0, 3)) {
            case 0: return Term::scale(make_rational(uniform(rng, -3, 3), uniform(rng, 1, 3)), build(d - 1));
            case 1: return Term::sum({build(d - 1), build(d - 1)});
            case 2: return Term::max({build(d - 1), build(d - 1)});
            default: return Term::min({build(d - 1), build(d - 1)});
        }
    };
    Term t = build(depth);
    std::vector<Term> rest;
    while (next < order.size()) rest.push_back(leaf());
    if (!rest.empty()) {
        rest.insert(rest.begin(), t);
        t = Term::max(std::move(rest));
    }
    return {t, n};
}

}  // namespace gvf
