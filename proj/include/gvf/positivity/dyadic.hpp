#pragma once

#include "gvf/arith/integer.hpp"

#include <cmath>
#include <map>

namespace gvf {

// Finite sum  sum_k c_k 2^(k/w)  with rational c_k and a fixed denominator w.
// Since X^w - 2 is irreducible over Q, the sum vanishes iff every class
// k mod w carries a zero total coefficient; otherwise its sign is found by
// bisecting a rational enclosure of 2^(1/w).
class DyadicSum {
public:
    explicit DyadicSum(long w = 1) : w_(w) {
        if (w < 1) throw DomainError("dyadic denominator must be positive");
    }

    long denominator() const { return w_; }

    // Adds c * 2^e for a rational exponent e whose denominator divides w.
    void add(const Rational& c, const Rational& e) {
        Rational k = e * w_;
        if (k.get_den() != 1) throw DomainError("exponent denominator does not divide the common denominator");
        add_units(c, k.get_num().get_si());
    }
    // Adds c * 2^(k/w).
    void add_units(const Rational& c, long k) {
        if (c == 0) return;
        long q = k >= 0 ? k / w_ : -((-k + w_ - 1) / w_);
        long r = k - q * w_;
        Rational v = c;
        if (q >= 0) v *= Rational(ipow(Integer(2), static_cast<unsigned long>(q)));
        else v /= Rational(ipow(Integer(2), static_cast<unsigned long>(-q)));
        Rational& slot = g_[r];
        slot += v;
        if (slot == 0) g_.erase(r);
    }
    DyadicSum operator-(const DyadicSum& o) const {
        DyadicSum r = *this;
        for (auto& [k, c] : o.g_) r.add_units(-c, k);
        return r;
    }

    double approx() const {
        double s = 0;
        for (auto& [r, c] : g_) s += c.get_d() * std::exp2(static_cast<double>(r) / static_cast<double>(w_));
        return s;
    }

    int sign() const {
        if (g_.empty()) return 0;
        if (w_ == 1) {
            Rational s = 0;
            for (auto& [r, c] : g_) s += c;
            return sgn(s);
        }
        Rational lo = 1, hi = 2;
        while (true) {
            Rational plo = 0, phi = 0, nlo = 0, nhi = 0;
            for (auto& [r, c] : g_) {
                Rational a = rpow(lo, r), b = rpow(hi, r);
                if (c > 0) {
                    plo += c * a;
                    phi += c * b;
                } else {
                    nlo -= c * a;
                    nhi -= c * b;
                }
            }
            Rational low = plo - nhi, high = phi - nlo;
            if (low > 0) return 1;
            if (high < 0) return -1;
            Rational mid = (lo + hi) / 2;
            if (rpow(mid, w_) < 2) lo = mid;
            else hi = mid;
        }
    }

private:
    long w_;
    std::map<long, Rational> g_;
};

}  // namespace gvf
