#pragma once

#include "gvf/arith/logreal.hpp"
#include "gvf/arith/mahler.hpp"
#include "gvf/arith/qz.hpp"
#include "gvf/places/place.hpp"

#include <climits>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gvf {

// Q(z): Gauss norms at the primes, orders at closed points weighted by the
// Mahler measure of the point, and the circle average at the archimedean end.
struct QzField {
    using Element = QzRatio;
    using Value = Interval;

    double tol = 1e-9;

    std::string name() const { return "Q(z)"; }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    Element one() const { return QzRatio::constant(1); }
    Element from_int(long n) const { return QzRatio::constant(n); }
    Element power(const Element& a, long e) const { return a.pow(e); }
    Element z() const { return QzRatio(QPoly::x()); }

    // min_i ord_p(c_i) for a nonzero polynomial.
    static long gauss_order(const QPoly& f, const Integer& p) {
        long m = LONG_MAX;
        for (auto& c : f.coeffs())
            if (c != 0) m = std::min(m, ord_p(c, p));
        return m;
    }

    static LogReal gauss_value(const Element& a, const Integer& p) {
        return LogReal::log_prime(p, gauss_order(a.num(), p) - gauss_order(a.den(), p));
    }

    static ZPoly integral(const QPoly& f) { return split_content(f).second; }

    std::vector<Integer> gauss_primes(const Element& a) const {
        std::set<Integer, IntegerLess> ps;
        for (const QPoly* f : {&a.num(), &a.den()})
            for (auto& c : f->coeffs()) {
                if (c == 0) continue;
                for (auto& [p, k] : factor_rational(c)) ps.insert(p);
            }
        std::vector<Integer> out;
        for (auto& p : ps)
            if (gauss_order(a.num(), p) != gauss_order(a.den(), p)) out.push_back(p);
        return out;
    }

    std::vector<ZPoly> point_polys(const Element& a) const {
        std::vector<ZPoly> out;
        for (const QPoly* f : {&a.num(), &a.den()})
            if (f->degree() > 0)
                for (auto& [g, m] : factor_zpoly(integral(*f)).factors) out.push_back(g);
        return out;
    }

    static long order_at_infinity(const Element& a) { return a.den().degree() - a.num().degree(); }

    std::vector<Place> arch_places() const { return {QzArch{}}; }

    // Places where the local order of a is nonzero, plus the archimedean place.
    std::vector<Place> candidate_places(const Element& a) const {
        if (a.is_zero()) throw DomainError("places of zero");
        std::vector<Place> out;
        for (auto& p : gauss_primes(a)) out.push_back(QzGauss{p});
        for (auto& g : point_polys(a)) out.push_back(QzPoint{g, false});
        if (order_at_infinity(a) != 0) out.push_back(QzPoint{ZPoly(), true});
        out.push_back(QzArch{});
        return out;
    }

    Interval point_height(const QzPoint& x) const {
        if (x.infinity) return Interval::point(0);
        auto it = height_cache_.find(x.minpoly);
        if (it != height_cache_.end()) return it->second;
        Interval h = mahler_measure(x.minpoly, tol);
        height_cache_.emplace(x.minpoly, h);
        return h;
    }

    static long order_at(const QzPoint& x, const Element& a) {
        if (x.infinity) return order_at_infinity(a);
        return ord_poly(a.num(), x.minpoly) - ord_poly(a.den(), x.minpoly);
    }

    Value eval(const Place& v, const Element& a) const {
        if (a.is_zero()) throw DomainError("valuation of zero");
        if (auto* g = std::get_if<QzGauss>(&v)) return gauss_value(a, g->p).to_interval();
        if (auto* x = std::get_if<QzPoint>(&v)) return point_height(*x) * Rational(order_at(*x, a));
        if (std::holds_alternative<QzArch>(v)) return mahler_measure(a.den(), tol) - mahler_measure(a.num(), tol);
        throw DomainError("place " + gvf::to_string(v) + " is not a place of Q(z)");
    }

private:
    mutable std::map<ZPoly, Interval> height_cache_;
};

}  // namespace gvf
