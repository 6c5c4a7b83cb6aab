#pragma once

#include "gvf/arith/integer.hpp"
#include "gvf/arith/interval.hpp"
#include "gvf/arith/poly.hpp"

#include <cmath>
#include <algorithm>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

namespace gvf {

using cplx = std::complex<long double>;

struct RootDisk {
    cplx center;
    long double radius;
};

namespace detail {

constexpr long double kUnit = std::numeric_limits<long double>::epsilon();

inline std::vector<cplx> to_complex(const ZPoly& f) {
    std::vector<cplx> c;
    for (auto& a : f.coeffs()) c.emplace_back(static_cast<long double>(a.get_d()), 0.0L);
    return c;
}

// Horner value at z and a bound on its rounding error (coefficients included).
inline std::pair<cplx, long double> eval_with_error(const std::vector<cplx>& c, const ZPoly& f, cplx z) {
    cplx r = 0;
    long double mag = 0, az = std::abs(z);
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * z + c[i];
        mag = mag * az + std::abs(c[i]);
    }
    long double n = static_cast<long double>(c.size() + 2);
    // Coefficients above 2^64 lose relative precision in the conversion too.
    long double conv = 0;
    for (auto& a : f.coeffs())
        if (!a.fits_slong_p()) conv = 1e-15L;
    return {r, mag * (16 * n * kUnit + conv)};
}

}  // namespace detail

// Certified inclusion disks for the roots of a squarefree integer polynomial.
// Overlapping disks are returned as they are; callers group them.
inline std::vector<RootDisk> root_disks(const ZPoly& f, int max_iter = 2000) {
    int n = f.degree();
    if (n < 1) return {};
    auto c = detail::to_complex(f);
    cplx lc = c.back();
    long double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / lc));
    bound += 1;
    std::vector<cplx> z(n);
    cplx seed(0.4L, 0.9L);
    for (int i = 0; i < n; ++i) z[i] = std::pow(seed, i) * bound * 0.5L + cplx(0.01L * i, 0);
    int settled = 0;
    for (int it = 0; it < max_iter && settled < 4; ++it) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            cplx den = lc;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            cplx num = detail::eval_with_error(c, f, z[i]).first;
            if (den == cplx(0)) den = cplx(detail::kUnit, detail::kUnit);
            cplx w = num / den;
            z[i] -= w;
            change = std::max(change, std::abs(w) / (1 + std::abs(z[i])));
        }
        if (change < 64 * detail::kUnit) ++settled;
    }
    std::vector<RootDisk> out(n);
    for (int i = 0; i < n; ++i) {
        auto [val, err] = detail::eval_with_error(c, f, z[i]);
        long double den = std::abs(lc);
        for (int j = 0; j < n; ++j)
            if (j != i) den *= std::abs(z[i] - z[j]);
        long double r = den > 0 ? n * (std::abs(val) + err) / den : std::numeric_limits<long double>::infinity();
        out[i] = {z[i], r * (1 + 1e-12L) + 4 * detail::kUnit * std::abs(z[i])};
    }
    return out;
}

namespace detail {

// Sum of log max(1,|root|) over the roots of a squarefree polynomial.
inline Interval sum_log_plus(const ZPoly& f) {
    auto disks = root_disks(f);
    std::size_t n = disks.size();
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return comp[i] == i ? i : comp[i] = find(comp[i]);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(disks[i].center - disks[j].center) <= disks[i].radius + disks[j].radius)
                comp[find(i)] = find(j);
    Interval total = Interval::point(0);
    for (std::size_t r = 0; r < n; ++r) {
        if (find(r) != r) continue;
        long double lo = std::numeric_limits<long double>::infinity(), hi = 0;
        long double k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (find(i) != r) continue;
            long double m = std::abs(disks[i].center);
            lo = std::min(lo, std::max(0.0L, m - disks[i].radius));
            hi = std::max(hi, m + disks[i].radius);
            k += 1;
        }
        long double llo = std::log(std::max(1.0L, lo)), lhi = std::log(std::max(1.0L, hi));
        long double slack = 8 * kUnit * (std::abs(lhi) + 1);
        total += Interval(Interval::down(static_cast<double>(k * llo - slack)),
                          Interval::up(static_cast<double>(k * lhi + slack)));
    }
    return total;
}

}  // namespace detail

// Logarithmic Mahler measure of a nonzero integer polynomial as a certified interval.
inline Interval mahler_measure(const ZPoly& f, double tol = 1e-9) {
    if (f.is_zero()) throw DomainError("Mahler measure of zero");
    Interval m = Interval::log_abs(Rational(f.lead()));
    for (auto& [part, mult] : squarefree_decomposition(primitive_part(f)))
        m += detail::sum_log_plus(part) * Rational(mult);
    if (m.width() > tol) throw DomainError("could not certify Mahler measure within tolerance");
    return m;
}

inline Interval mahler_measure(const QPoly& f, double tol = 1e-9) {
    auto [c, p] = split_content(f);
    return Interval::log_abs(c) + mahler_measure(p, tol);
}

namespace detail {

struct CirclePoly {
    ZPoly exact;
    std::vector<cplx> c;
    long double s = 0, l1 = 0, l2 = 0;
};

struct Piece {
    long double a, b;
    long double lo, hi;  // enclosure of the integral over [a,b] (not divided by 2pi)
    bool operator<(const Piece& o) const { return hi - lo < o.hi - o.lo; }
};

inline std::vector<Integer> autocorrelation(const ZPoly& f) {
    const auto& c = f.coeffs();
    std::size_t lo = 0;
    while (lo < c.size() && c[lo] == 0) ++lo;
    std::vector<Integer> out;
    for (std::size_t k = 0; lo + k < c.size(); ++k) {
        Integer t = 0;
        for (std::size_t j = lo; j + k < c.size(); ++j) t += c[j] * c[j + k];
        out.push_back(t);
    }
    return out;
}

inline Piece enclose(const std::vector<CirclePoly>& ps, long double a, long double b) {
    long double c = (a + b) / 2, h = (b - a) / 2;
    cplx z(std::cos(c), std::sin(c));
    std::size_t best = 0;
    std::vector<long double> val(ps.size()), lo(ps.size()), hi(ps.size()), err(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto [v, e] = eval_with_error(ps[i].c, ps[i].exact, z);
        e += ps[i].l1 * 8 * kUnit * (1 + std::abs(c));  // error in the point itself
        val[i] = std::abs(v);
        err[i] = e;
        lo[i] = val[i] - e - h * ps[i].l1;
        hi[i] = val[i] + e + h * ps[i].l1;
        if (val[i] > val[best]) best = i;
    }
    long double mlo = *std::max_element(lo.begin(), lo.end());
    long double mhi = *std::max_element(hi.begin(), hi.end());
    const long double inf = std::numeric_limits<long double>::infinity();
    if (mlo <= 0) return {a, b, -inf, 2 * h * std::log(mhi)};
    long double rel = 8 * kUnit;
    Piece out{a, b, 2 * h * std::log(mlo) - rel * 2 * h * (1 + std::abs(std::log(mlo))),
              2 * h * std::log(mhi) + rel * 2 * h * (1 + std::abs(std::log(mhi)))};
    bool dominant = lo[best] > 0;
    for (std::size_t j = 0; j < ps.size() && dominant; ++j)
        if (j != best && hi[j] >= lo[best]) dominant = false;
    if (dominant) {
        const auto& p = ps[best];
        long double m = lo[best];
        long double k2 = (p.l1 + p.l2) / m + (p.l1 / m) * (p.l1 / m);
        long double quad = (2 * h) * (2 * h) * (2 * h) / 24 * k2;
        long double glo = std::log(std::max(val[best] - err[best], m)), ghi = std::log(val[best] + err[best]);
        long double slack = rel * 2 * h * (1 + std::abs(ghi));
        out.lo = std::max(out.lo, 2 * h * glo - quad - slack);
        out.hi = std::min(out.hi, 2 * h * ghi + quad + slack);
    }
    return out;
}

}  // namespace detail

// (1/2pi) * integral over the unit circle of log max_i |P_i|, for integer
// polynomials without a common zero on the circle.  A lone polynomial may vanish there.
inline Interval circle_log_max(const std::vector<ZPoly>& polys, double tol = 1e-9, std::size_t max_pieces = 4000000) {
    std::vector<detail::CirclePoly> ps;
    for (auto& f : polys) {
        if (f.is_zero()) continue;
        detail::CirclePoly cp{f, detail::to_complex(f)};
        for (std::size_t k = 0; k < cp.c.size(); ++k) {
            long double a = std::abs(cp.c[k]);
            cp.s += a;
            cp.l1 += k * a;
            cp.l2 += k * (k > 0 ? k - 1 : 0) * a;
        }
        ps.push_back(std::move(cp));
    }
    if (ps.empty()) throw DomainError("circle integral of an all-zero tuple");
    // |P| = |Q| on the whole circle iff P(z)P(1/z) = Q(z)Q(1/z); keep one of each class.
    std::vector<std::vector<Integer>> seen;
    std::vector<detail::CirclePoly> kept;
    for (auto& cp : ps) {
        auto a = detail::autocorrelation(cp.exact);
        if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
        seen.push_back(std::move(a));
        kept.push_back(std::move(cp));
    }
    ps = std::move(kept);
    if (ps.size() == 1) return mahler_measure(ps[0].exact, tol);

    const long double two_pi = 2 * std::acos(-1.0L);
    std::priority_queue<detail::Piece> queue;
    long double total_lo = 0, total_hi = 0;  // over pieces with a finite lower bound
    std::size_t unbounded = 0;
    auto add = [&](const detail::Piece& p, long double sgn) {
        if (std::isinf(p.lo))
            unbounded += sgn > 0 ? 1 : -1;
        else
            total_lo += sgn * p.lo;
        total_hi += sgn * p.hi;
    };
    const int initial = 64;
    for (int i = 0; i < initial; ++i) {
        auto p = detail::enclose(ps, two_pi * i / initial, two_pi * (i + 1) / initial);
        add(p, 1);
        queue.push(p);
    }
    long double target = static_cast<long double>(tol) * two_pi * 0.5L;
    while (unbounded > 0 || !(total_hi - total_lo <= target)) {
        if (queue.size() >= max_pieces) throw DomainError("circle integral did not reach the requested tolerance");
        auto p = queue.top();
        queue.pop();
        long double mid = (p.a + p.b) / 2;
        auto l = detail::enclose(ps, p.a, mid), r = detail::enclose(ps, mid, p.b);
        add(p, -1);
        add(l, 1);
        add(r, 1);
        queue.push(l);
        queue.push(r);
    }
    // Final certified sum with outward rounding.
    long double lo = 0, hi = 0, absum = 0;
    while (!queue.empty()) {
        lo += queue.top().lo;
        hi += queue.top().hi;
        absum += std::abs(queue.top().lo) + std::abs(queue.top().hi);
        queue.pop();
    }
    long double slack = absum * 4 * detail::kUnit * 64;
    Interval sum(Interval::down(static_cast<double>(lo - slack)), Interval::up(static_cast<double>(hi + slack)));
    Interval tp(Interval::down(static_cast<double>(two_pi)), Interval::up(static_cast<double>(two_pi)));
    double qlo = sum.lo / (sum.lo >= 0 ? tp.hi : tp.lo), qhi = sum.hi / (sum.hi >= 0 ? tp.lo : tp.hi);
    return {Interval::down(qlo), Interval::up(qhi)};
}

}  // namespace gvf
