#pragma once

#include "gvf/arith/integer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace gvf {

// Closed interval of reals with outward-rounded double endpoints.
struct Interval {
    double lo = 0, hi = 0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw DomainError("empty interval");
    }
    static Interval point(double x) { return {x, x}; }
    static Interval widened(double x, double err) {
        return {down(x - std::abs(err)), up(x + std::abs(err))};
    }
    static Interval of(const Rational& q) {
        double x = q.get_d();
        return {down(x), up(x)};
    }
    // log|q| for a nonzero rational.
    static Interval log_abs(const Rational& q) {
        if (q == 0) throw DomainError("log of zero");
        long en, ed;
        double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
        double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
        double v = std::log(std::abs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
        return widened(v, 4e-16 * (std::abs(v) + 1));
    }

    static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
    static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

    double width() const { return hi - lo; }
    double mid() const { return lo + (hi - lo) / 2; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }

    Interval operator+(const Interval& o) const { return {down(lo + o.lo), up(hi + o.hi)}; }
    Interval operator-(const Interval& o) const { return {down(lo - o.hi), up(hi - o.lo)}; }
    Interval operator-() const { return {-hi, -lo}; }
    Interval operator*(const Interval& o) const {
        double c[4] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
        return {down(*std::min_element(c, c + 4)), up(*std::max_element(c, c + 4))};
    }
    Interval operator*(const Rational& q) const { return *this * Interval::of(q); }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }

    std::string to_string() const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo, hi);
        return buf;
    }
};

inline Interval max(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }
inline Interval min(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }
inline Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace gvf
