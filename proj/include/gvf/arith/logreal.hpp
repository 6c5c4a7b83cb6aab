#pragma once

#include "gvf/arith/integer.hpp"
#include "gvf/arith/interval.hpp"
#include "gvf/arith/quad.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace gvf {

// Exact real of the form  sum_p q_p log p  +  (1/N) log|gamma|,
// gamma in a real quadratic field under its first embedding.
class LogReal {
public:
    struct Alg {
        QuadElem gamma;
        Integer order;  // N > 0
    };
    using Terms = std::map<Integer, Rational, IntegerLess>;

    LogReal() = default;

    static LogReal log_prime(const Integer& p, const Rational& q = 1) {
        LogReal r;
        if (q != 0) r.terms_[p] = q;
        return r;
    }
    // log|q| for a nonzero rational q.
    static LogReal log_abs(const Rational& q) {
        LogReal r;
        for (auto& [p, k] : factor_rational(q)) {
            if (k != 0) r.terms_[p] = k;
        }
        return r;
    }
    // (1/N) log|gamma| with gamma in a real quadratic field, first embedding.
    static LogReal log_abs(const QuadElem& gamma, const Integer& order = 1) {
        if (gamma.is_zero()) throw DomainError("log of zero");
        if (order <= 0) throw DomainError("LogReal order must be positive");
        LogReal r;
        if (gamma.is_rational()) return log_abs(gamma.a()) * Rational(1, 1) * make_rational(1, order);
        if (gamma.d() < 0) throw DomainError("algebraic logarithm needs a real quadratic field");
        r.alg_ = Alg{gamma, order};
        r.normalize();
        return r;
    }

    const Terms& terms() const { return terms_; }
    const std::optional<Alg>& alg() const { return alg_; }
    bool is_structurally_zero() const { return terms_.empty() && !alg_; }

    LogReal operator+(const LogReal& o) const {
        LogReal r = *this;
        for (auto& [p, q] : o.terms_) r.add_term(p, q);
        if (o.alg_) {
            if (!r.alg_) {
                r.alg_ = o.alg_;
            } else {
                if (r.alg_->gamma.d() != o.alg_->gamma.d())
                    throw DomainError("mixing logarithms from different quadratic fields");
                Integer l = lcm(r.alg_->order, o.alg_->order);
                QuadElem g = r.alg_->gamma.pow(l / r.alg_->order) * o.alg_->gamma.pow(l / o.alg_->order);
                r.alg_ = Alg{g, l};
            }
            r.normalize();
        }
        return r;
    }
    LogReal operator-() const { return *this * Rational(-1); }
    LogReal operator-(const LogReal& o) const { return *this + (-o); }
    LogReal operator*(const Rational& q) const {
        LogReal r;
        if (q == 0) return r;
        for (auto& [p, c] : terms_) r.terms_[p] = c * q;
        if (alg_) {
            r.alg_ = Alg{alg_->gamma.pow(q.get_num()), alg_->order * q.get_den()};
            r.normalize();
        }
        return r;
    }
    LogReal& operator+=(const LogReal& o) { return *this = *this + o; }

    friend int compare(const LogReal& a, const LogReal& b) { return (a - b).sign(); }

    int sign() const {
        Integer l = 1;
        for (auto& [p, q] : terms_) l = lcm(l, q.get_den());
        if (!alg_) {
            Integer pos = 1, neg = 1;
            for (auto& [p, q] : terms_) {
                Integer k = q.get_num() * (l / q.get_den());
                if (k > 0) pos *= ipow(p, k.get_ui());
                else neg *= ipow(p, Integer(-k).get_ui());
            }
            return cmp(pos, neg) > 0 ? 1 : (pos == neg ? 0 : -1);
        }
        l = lcm(l, alg_->order);
        Rational rho = 1;
        for (auto& [p, q] : terms_) {
            Integer k = q.get_num() * (l / q.get_den());
            rho *= k > 0 ? Rational(ipow(p, k.get_ui())) : make_rational(1, ipow(p, Integer(-k).get_ui()));
        }
        QuadElem eta = alg_->gamma.pow(l / alg_->order) * rho;
        QuadElem one(eta.d(), 1);
        int s1 = quad_sign(eta - one), s2 = quad_sign(eta + one);
        if (s1 == 0 || s2 == 0) return 0;
        return (s1 > 0 || s2 < 0) ? 1 : -1;
    }

    bool operator==(const LogReal& o) const { return compare(*this, o) == 0; }
    bool operator!=(const LogReal& o) const { return compare(*this, o) != 0; }
    bool operator<(const LogReal& o) const { return compare(*this, o) < 0; }
    bool operator<=(const LogReal& o) const { return compare(*this, o) <= 0; }
    bool operator>(const LogReal& o) const { return compare(*this, o) > 0; }
    bool operator>=(const LogReal& o) const { return compare(*this, o) >= 0; }

    double approx() const {
        double s = 0;
        for (auto& [p, q] : terms_) s += q.get_d() * std::log(p.get_d());
        if (alg_) s += std::log(std::abs(quad_approx(alg_->gamma))) / alg_->order.get_d();
        return s;
    }

    Interval to_interval() const {
        Interval s = Interval::point(0);
        for (auto& [p, q] : terms_) s += Interval::log_abs(Rational(p)) * q;
        if (alg_) {
            double v = std::log(std::abs(quad_approx(alg_->gamma))) / alg_->order.get_d();
            s += Interval::widened(v, 1e-14 * (std::abs(v) + 1));
        }
        return s;
    }

    std::string to_string() const {
        std::string s;
        auto append = [&](const Rational& q, const std::string& sym) {
            if (s.empty()) s += q < 0 ? "-" : "";
            else s += q < 0 ? " - " : " + ";
            Rational a = abs(q);
            if (a != 1) s += gvf::to_string(a) + "*";
            s += sym;
        };
        for (auto& [p, q] : terms_) append(q, "log(" + p.get_str() + ")");
        if (alg_) append(make_rational(1, alg_->order), "log|" + alg_->gamma.to_string() + "|");
        return s.empty() ? "0" : s;
    }

private:
    void add_term(const Integer& p, const Rational& q) {
        Rational v = terms_[p] + q;
        if (v == 0) terms_.erase(p);
        else terms_[p] = v;
    }

    // Fold rational content of gamma into the prime part; keep gamma primitive
    // integral with a positive leading coordinate.
    void normalize() {
        if (!alg_) return;
        QuadElem g = alg_->gamma;
        Integer n = alg_->order;
        if (n < 0) {
            g = g.inverse();
            n = -n;
        }
        if (g.is_rational()) {
            *this = *this + log_abs(g.a()) * make_rational(1, n);
            alg_.reset();
            return;
        }
        Integer num = gcd(g.a().get_num(), g.b().get_num());
        Integer den = lcm(g.a().get_den(), g.b().get_den());
        Rational c = make_rational(num, den);
        g = g * (1 / c);
        if (g.a() < 0 || (g.a() == 0 && g.b() < 0)) g = -g;
        for (auto& [p, k] : factor_rational(c)) add_term(p, make_rational(k, n));
        alg_ = Alg{g, n};
    }

    Terms terms_;
    std::optional<Alg> alg_;
};

inline LogReal max(const LogReal& a, const LogReal& b) { return a < b ? b : a; }
inline LogReal min(const LogReal& a, const LogReal& b) { return b < a ? b : a; }

}  // namespace gvf
