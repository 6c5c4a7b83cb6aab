#pragma once

#include "gvf/arith/poly.hpp"

#include <string>
#include <tuple>

namespace gvf {

// Element of Q(z): num/den with gcd 1 and den monic.
class QzRatio {
public:
    QzRatio() : num_(), den_(QPoly::constant(1)) {}
    explicit QzRatio(QPoly num) : num_(std::move(num)), den_(QPoly::constant(1)) {}
    QzRatio(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    static QzRatio constant(const Rational& q) { return QzRatio(QPoly::constant(q)); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    QzRatio operator+(const QzRatio& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    QzRatio operator-(const QzRatio& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    QzRatio operator-() const { return {-num_, den_}; }
    QzRatio operator*(const QzRatio& o) const { return {num_ * o.num_, den_ * o.den_}; }
    QzRatio operator/(const QzRatio& o) const {
        if (o.is_zero()) throw DomainError("division by zero in Q(z)");
        return {num_ * o.den_, den_ * o.num_};
    }
    QzRatio inverse() const { return QzRatio::constant(1) / *this; }
    QzRatio pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QzRatio r = constant(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const QzRatio& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QzRatio& o) const { return !(*this == o); }
    bool operator<(const QzRatio& o) const {
        if (num_ != o.num_) return num_ < o.num_;
        return den_ < o.den_;
    }

    std::string to_string() const {
        auto wrap = [](const QPoly& f) {
            std::string s = f.to_string('z');
            return s.find_first_of(" /") != std::string::npos || (s[0] == '-' && f.degree() > 0) ? "(" + s + ")" : s;
        };
        if (den_.is_one()) return num_.to_string('z');
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DomainError("zero denominator in Q(z)");
        if (num_.is_zero()) {
            den_ = QPoly::constant(1);
            return;
        }
        QPoly g = poly_gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        Rational l = den_.lead();
        num_ = num_ * (1 / l);
        den_ = den_ * (1 / l);
    }

    QPoly num_, den_;
};

inline std::string to_string(const QzRatio& x) { return x.to_string(); }

}  // namespace gvf
