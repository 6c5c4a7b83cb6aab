#pragma once

#include "gvf/core/gvf.hpp"
#include "gvf/core/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gvf {

struct BatteryReport {
    explicit BatteryReport(std::string n = "") : name(std::move(n)) {}
    std::string name;
    std::size_t cases = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

template <class V>
bool ext_le(const Extended<V>& a, const Extended<V>& b) {
    if (a.is_minus_inf() || b.is_plus_inf()) return true;
    if (b.is_minus_inf() || a.is_plus_inf()) return false;
    return !(b.value < a.value);
}

namespace detail {

template <class E>
std::string tuple_str(const std::vector<E>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
    return s + ")";
}

inline void expect(BatteryReport& rep, bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok && rep.failures.size() < 20) rep.failures.push_back(what);
}

// log2(n) * e, exactly when e is a rational multiple of log 2 (or zero), and
// otherwise ceil(log2 n) * e.
inline LogReal log2_times(long n, const LogReal& e) {
    if (!e.alg() && (e.terms().empty() || (e.terms().size() == 1 && e.terms().begin()->first == 2)))
        return e.terms().empty() ? LogReal{} : LogReal::log_abs(Rational(n)) * e.terms().begin()->second;
    return e * Rational(static_cast<long>(std::ceil(std::log2(static_cast<double>(n)))));
}
inline Rational log2_times(long n, const Rational& e) {
    if (e == 0) return 0;
    return e * Rational(static_cast<long>(std::ceil(std::log2(static_cast<double>(n)))));
}

template <class E>
std::vector<E> segre(const std::vector<E>& x, const std::vector<E>& y) {
    std::vector<E> out;
    for (auto& a : x)
        for (auto& b : y) out.push_back(a * b);
    return out;
}

}  // namespace detail

template <class Field, class Gen>
BatteryReport product_formula_battery(const DiscreteGVF<Field>& G, Gen gen, std::size_t N, Rng& rng) {
    BatteryReport rep("product formula");
    for (std::size_t k = 0; k < N; ++k, ++rep.cases) {
        auto a = gen(rng);
        auto s = G.product_formula_sum(a);
        detail::expect(rep, vsign(s) == 0, "sum of valuations of " + to_string(a) + " is " + vstr(s));
    }
    return rep;
}

// Height axioms, invariances under duplication, zero coordinates and signs,
// and the generalized triangle inequality with n <= 8 summands.
template <class Field, class Gen>
BatteryReport height_axiom_battery(const DiscreteGVF<Field>& G, Gen gen, std::size_t N, Rng& rng) {
    using E = typename Field::Element;
    using V = typename Field::Value;
    using X = Extended<V>;
    const Field& F = G.field();
    BatteryReport rep("height axioms");
    E zero = F.from_int(0);
    auto tuple = [&](long lo, long hi) {
        std::vector<E> t(static_cast<std::size_t>(uniform(rng, lo, hi)));
        for (auto& x : t) x = uniform(rng, 0, 5) == 0 ? zero : gen(rng);
        return t;
    };
    auto nonzero_tuple = [&](long lo, long hi) {
        auto t = tuple(lo, hi);
        t[0] = gen(rng);
        return t;
    };
    X e = G.height({F.from_int(2), F.one()});
    auto sh = [](const X& x) { return x.to_string(); };

    detail::expect(rep, G.height({F.one(), F.one()}) == X(V{}), "h(1,1) != 0");
    for (std::size_t k = 0; k < N; ++k, ++rep.cases) {
        auto x = tuple(1, 4);
        bool all_zero = std::all_of(x.begin(), x.end(), [&](const E& a) { return F.is_zero(a); });
        X hx = G.height(x);
        std::string xs = detail::tuple_str(x);
        detail::expect(rep, hx.is_minus_inf() == all_zero, "height of zero fails at " + xs);

        auto px = x;
        std::shuffle(px.begin(), px.end(), rng);
        detail::expect(rep, G.height(px) == hx, "permutation changes h" + xs);

        auto y = tuple(1, 3);
        X hy = G.height(y);
        X hs = G.height(detail::segre(x, y));
        bool additive = (hx.is_minus_inf() || hy.is_minus_inf()) ? hs.is_minus_inf()
                                                                   : hs == X(V(hx.value + hy.value));
        detail::expect(rep, additive, "Segre additivity fails for " + xs + " and " + detail::tuple_str(y));

        auto xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        X hxy = G.height(xy);
        detail::expect(rep, ext_le(hx, hxy), "monotonicity fails for " + xs + " inside " + detail::tuple_str(xy));

        std::vector<E> x2(x.size()), sum(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) x2[i] = gen(rng);
        for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + x2[i];
        auto cat = x;
        cat.insert(cat.end(), x2.begin(), x2.end());
        X hc = G.height(cat);
        X bound = hc.finite() ? X(V(hc.value + e.value)) : hc;
        detail::expect(rep, ext_le(G.height(sum), bound),
                          "triangle inequality fails for " + xs + " + " + detail::tuple_str(x2));

        auto xi = nonzero_tuple(1, 3);
        X hxi = G.height(xi);
        E c = xi[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(xi.size()) - 1))];
        auto dup = xi, zer = xi, sgn = xi;
        dup.push_back(c);
        zer.push_back(zero);
        sgn.back() = -sgn.back();
        std::string xis = detail::tuple_str(xi);
        detail::expect(rep, G.height(dup) == hxi, "duplication changes h" + xis + " (" + sh(G.height(dup)) + ")");
        detail::expect(rep, G.height(zer) == hxi, "a zero coordinate changes h" + xis);
        detail::expect(rep, G.height(sgn) == hxi, "a sign change alters h" + xis);

        long n = uniform(rng, 2, 8);
        std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 3));
        std::vector<E> total(m, zero), parts;
        for (long i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                E z = gen(rng);
                total[j] = total[j] + z;
                parts.push_back(z);
            }
        X hp = G.height(parts);
        X gbound = X(V(hp.value + detail::log2_times(n, e.value)));
        detail::expect(rep, ext_le(G.height(total), gbound),
                          "generalized triangle inequality fails with n = " + std::to_string(n) + " on " +
                              detail::tuple_str(parts));
    }
    return rep;
}

// ht(xy) <= ht(x) + ht(y) and ht(x + y) <= ht(x) + ht(y) + h(2, 1).
template <class Field, class Gen>
BatteryReport gauge_battery(const DiscreteGVF<Field>& G, Gen gen, std::size_t N, Rng& rng) {
    using V = typename Field::Value;
    const Field& F = G.field();
    BatteryReport rep("gauge inequalities");
    V e = G.height({F.from_int(2), F.one()}).value;
    for (std::size_t k = 0; k < N; ++k, ++rep.cases) {
        auto x = gen(rng), y = gen(rng);
        V hx = G.ht(x), hy = G.ht(y);
        std::string xs = "(" + to_string(x) + ", " + to_string(y) + ")";
        detail::expect(rep, !(hx + hy < G.ht(x * y)), "ht(xy) bound fails at " + xs);
        detail::expect(rep, !(hx + hy + e < G.ht(x + y)), "ht(x+y) bound fails at " + xs);
    }
    return rep;
}

// Heights, local terms, the positive functional and the lattice valuation
// computed along independent paths must agree.
template <class Field, class Gen>
BatteryReport conversion_battery(const DiscreteGVF<Field>& G, Gen gen, std::size_t N, Rng& rng) {
    using E = typename Field::Element;
    using V = typename Field::Value;
    const Field& F = G.field();
    BatteryReport rep("structure conversions");
    for (std::size_t k = 0; k < N; ++k, ++rep.cases) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        std::vector<E> a(static_cast<std::size_t>(n));
        for (auto& x : a) x = gen(rng);
        std::string as = detail::tuple_str(a);

        auto h = G.height(a);
        detail::expect(rep, h == G.height_via_lattice(a), "lattice valuation height differs at " + as);

        std::vector<LatticeDivisor<E>> ds;
        for (auto& x : a) ds.push_back(div(F, x));
        auto alpha = -LatticeDivisor<E>::meet(ds);
        detail::expect(rep, G.functional(alpha) == h.value, "functional of -meet div differs from h at " + as);
        detail::expect(rep, G.functional_via_heights(alpha) == h.value, "height path for -meet div differs at " + as);

        auto t = random_term(rng, n);
        V lt = G.local_term(t, a);
        auto beta = divisor_from_term(F, t, a);
        V fb = G.functional(beta);
        detail::expect(rep, lt == fb, "local term " + t.to_string() + " differs from the functional at " + as);
        detail::expect(rep, G.functional_via_heights(beta) == fb,
                          "height path differs from the functional for " + t.to_string() + " at " + as);
    }
    return rep;
}

// Radon-Nikodym densities on shared atoms and mass balance mu_a = mu_(1/a).
template <class Field, class Gen>
BatteryReport measure_battery(const DiscreteGVF<Field>& G, Gen gen, std::size_t N, Rng& rng) {
    using E = typename Field::Element;
    const Field& F = G.field();
    BatteryReport rep("local measures");
    auto is_nonunit = [&](const E& x) {
        for (auto& v : G.places({x}))
            if (vsign(G.value(v, x)) > 0) return true;
        return false;
    };
    auto nonunit = [&]() {
        while (true) {
            E x = gen(rng);
            if (is_nonunit(x)) return x;
        }
    };
    for (std::size_t k = 0; k < N; ++k, ++rep.cases) {
        E a = nonunit(), b = nonunit();
        std::string s = "(" + to_string(a) + ", " + to_string(b) + ")";
        auto beta = div(F, a).positive_part();
        auto rn = G.rn_check(a, b, beta);
        detail::expect(rep, rn.ok, "RN relation fails at " + s);
        detail::expect(rep, rn.functional_checked, "functional not checked at " + s);
        if (is_nonunit(a * b)) {
            auto rn2 = G.rn_check(a, a * b, div(F, b).negative_part());
            detail::expect(rep, rn2.ok, "RN relation fails at " + s + " with ab");
        }
        E inv = F.one() / a;
        detail::expect(rep, G.local_measure(a).total() == G.local_measure(inv).total(),
                          "mass balance fails at " + to_string(a));
    }
    return rep;
}

// Random renormalizations leave heights and local terms unchanged.
template <class Field, class Gen>
BatteryReport renorm_battery(const DiscreteGVF<Field>& G, Gen gen, std::size_t N, Rng& rng) {
    using E = typename Field::Element;
    BatteryReport rep("renormalization");
    for (std::size_t k = 0; k < N; ++k, ++rep.cases) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        std::vector<E> a(static_cast<std::size_t>(n));
        for (auto& x : a) x = gen(rng);
        std::set<Place> sel;
        for (auto& v : G.places(a))
            if (uniform(rng, 0, 1)) sel.insert(v);
        Rational c = make_rational(uniform(rng, 1, 15), 3);
        auto H = G.renormalize(sel, c);
        auto t = random_term(rng, n);
        std::string as = detail::tuple_str(a) + " with c = " + to_string(c);
        detail::expect(rep, H.height(a) == G.height(a), "height changes under renormalization at " + as);
        detail::expect(rep, H.local_term(t, a) == G.local_term(t, a),
                          "local term " + t.to_string() + " changes under renormalization at " + as);
        detail::expect(rep, H.ht(a[0]) == G.ht(a[0]), "ht changes under renormalization at " + as);
    }
    return rep;
}

}  // namespace gvf
