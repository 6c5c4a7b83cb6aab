#pragma once

#include "gvf/arith/integer.hpp"

#include <cmath>
#include <string>
#include <tuple>

namespace gvf {

// a + b*sqrt(d) in Q(sqrt(d)), d squarefree and != 0, 1.
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(long d, Rational a, Rational b = 0) : d_(d), a_(std::move(a)), b_(std::move(b)) {}

    long d() const { return d_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadElem operator+(const QuadElem& o) const { check(o); return {d_, a_ + o.a_, b_ + o.b_}; }
    QuadElem operator-(const QuadElem& o) const { check(o); return {d_, a_ - o.a_, b_ - o.b_}; }
    QuadElem operator-() const { return {d_, -a_, -b_}; }
    QuadElem operator*(const QuadElem& o) const {
        check(o);
        return {d_, a_ * o.a_ + d_ * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
    }
    QuadElem operator*(const Rational& q) const { return {d_, a_ * q, b_ * q}; }
    QuadElem conj() const { return {d_, a_, -b_}; }
    Rational norm() const { return a_ * a_ - d_ * b_ * b_; }
    Rational trace() const { return 2 * a_; }
    QuadElem inverse() const {
        if (is_zero()) throw DomainError("inverse of zero in Q(sqrt(d))");
        Rational n = norm();
        return {d_, a_ / n, -b_ / n};
    }
    QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }
    QuadElem pow(Integer e) const {
        if (e < 0) return inverse().pow(-e);
        QuadElem r(d_, 1), base = *this;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const QuadElem& o) const { return d_ == o.d_ && a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    bool operator<(const QuadElem& o) const { return std::tie(d_, a_, b_) < std::tie(o.d_, o.a_, o.b_); }

    std::string to_string() const {
        std::string root = "sqrt(" + std::to_string(d_) + ")";
        if (b_ == 0) return gvf::to_string(a_);
        std::string bs;
        Rational ab = abs(b_);
        bs = (ab == 1 ? "" : gvf::to_string(ab) + "*") + root;
        if (a_ == 0) return (b_ < 0 ? "-" : "") + bs;
        return gvf::to_string(a_) + (b_ < 0 ? "-" : "+") + bs;
    }

private:
    void check(const QuadElem& o) const {
        if (d_ != o.d_) throw DomainError("mixing elements of different quadratic fields");
    }

    long d_ = -1;
    Rational a_, b_;
};

// Sign of x under the real embedding sqrt(d) -> embedding*sqrt(|d|) for d > 0
// (embedding 1 or 2, the second one uses -sqrt(d)).  For d < 0 there is no
// real sign; the result is the sign of |x|^2, i.e. 0 or 1.
inline int quad_sign(const QuadElem& x, int embedding = 1) {
    if (x.d() < 0) return x.is_zero() ? 0 : 1;
    int sa = sgn(x.a());
    int sb = sgn(x.b()) * (embedding == 2 ? -1 : 1);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational lhs = x.a() * x.a(), rhs = x.d() * x.b() * x.b();
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

inline double quad_approx(const QuadElem& x, int embedding = 1) {
    if (x.d() < 0) throw DomainError("no real embedding for d < 0");
    double s = std::sqrt(static_cast<double>(x.d())) * (embedding == 2 ? -1 : 1);
    return x.a().get_d() + x.b().get_d() * s;
}

inline std::string to_string(const QuadElem& x) { return x.to_string(); }

}  // namespace gvf
