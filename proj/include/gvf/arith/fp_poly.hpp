#pragma once

#include "gvf/arith/integer.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gvf {

// Dense univariate polynomial over F_p, p prime below 2^31.
class FpPoly {
public:
    using coeff = std::uint64_t;

    FpPoly() = default;
    explicit FpPoly(coeff p) : p_(p) {}
    FpPoly(coeff p, std::vector<coeff> c) : p_(p), c_(std::move(c)) {
        for (auto& x : c_) x %= p_;
        trim();
    }
    static FpPoly constant(coeff p, long long v) {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return FpPoly(p, {static_cast<coeff>(r)});
    }
    static FpPoly x(coeff p) { return FpPoly(p, {0, 1}); }
    static FpPoly monomial(coeff p, std::size_t k, coeff a = 1) {
        std::vector<coeff> c(k + 1, 0);
        c[k] = a;
        return FpPoly(p, std::move(c));
    }

    coeff prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    coeff lead() const { return c_.empty() ? 0 : c_.back(); }
    coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<coeff>& coeffs() const { return c_; }

    coeff add(coeff a, coeff b) const { return (a + b) % p_; }
    coeff sub(coeff a, coeff b) const { return (a + p_ - b) % p_; }
    coeff mul(coeff a, coeff b) const { return a * b % p_; }
    coeff inv(coeff a) const {
        if (a % p_ == 0) throw DomainError("inverse of zero in F_p");
        return detail::powmod64(a, p_ - 2, p_);
    }

    FpPoly operator+(const FpPoly& o) const {
        check(o);
        std::vector<coeff> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = add((*this)[i], o[i]);
        return FpPoly(p_, std::move(r));
    }
    FpPoly operator-() const {
        std::vector<coeff> r(c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (p_ - c_[i]) % p_;
        return FpPoly(p_, std::move(r));
    }
    FpPoly operator-(const FpPoly& o) const { return *this + (-o); }
    FpPoly operator*(const FpPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return FpPoly(p_);
        std::vector<coeff> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p_;
        }
        return FpPoly(p_, std::move(r));
    }
    FpPoly scaled(coeff a) const {
        std::vector<coeff> r(c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = mul(c_[i], a % p_);
        return FpPoly(p_, std::move(r));
    }

    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
        check(d);
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        if (degree() < d.degree()) return {FpPoly(p_), *this};
        std::vector<coeff> r = c_, q(c_.size() - d.c_.size() + 1, 0);
        coeff li = inv(d.lead());
        for (int i = degree() - d.degree(); i >= 0; --i) {
            coeff t = mul(r[i + d.degree()], li);
            q[i] = t;
            if (!t) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) r[i + j] = sub(r[i + j], mul(t, d.c_[j]));
        }
        return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
    }
    FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }
    FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }

    FpPoly monic() const { return is_zero() ? *this : scaled(inv(lead())); }

    FpPoly derivative() const {
        std::vector<coeff> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(mul(c_[i], i % p_));
        return FpPoly(p_, std::move(r));
    }

    coeff eval(coeff x) const {
        coeff r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = add(mul(r, x), *it);
        return r;
    }

    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }
    bool operator<(const FpPoly& o) const {
        return std::tie(p_, c_) < std::tie(o.p_, o.c_);
    }

    std::string to_string(char var = 't') const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            coeff a = c_[i];
            if (!a) continue;
            if (!s.empty()) s += " + ";
            if (i == 0) {
                s += std::to_string(a);
                continue;
            }
            if (a != 1) s += std::to_string(a) + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const FpPoly& o) const {
        if (p_ != o.p_) throw DomainError("mixing polynomials over different primes");
    }

    coeff p_ = 2;
    std::vector<coeff> c_;
};

inline FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<FpPoly, FpPoly, FpPoly> poly_xgcd(const FpPoly& a, const FpPoly& b) {
    auto p = a.prime();
    FpPoly r0 = a, r1 = b, s0 = FpPoly::constant(p, 1), s1(p), t0(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    auto li = r0.inv(r0.lead());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

inline FpPoly powmod(FpPoly base, Integer e, const FpPoly& m) {
    FpPoly r = FpPoly::constant(m.prime(), 1) % m;
    base = base % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

namespace detail {

inline std::vector<std::pair<FpPoly, long>> squarefree_fp(const FpPoly& f_in) {
    std::vector<std::pair<FpPoly, long>> out;
    FpPoly f = f_in.monic();
    if (f.degree() <= 0) return out;
    auto p = f.prime();
    FpPoly c = poly_gcd(f, f.derivative());
    FpPoly w = f / c;
    long i = 1;
    while (w.degree() > 0) {
        FpPoly y = poly_gcd(w, c);
        FpPoly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) {
        std::vector<FpPoly::coeff> root;
        for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) root.push_back(c[k]);
        for (auto& [g, m] : squarefree_fp(FpPoly(p, root))) out.emplace_back(g, m * static_cast<long>(p));
    }
    return out;
}

inline std::vector<std::pair<FpPoly, int>> distinct_degree_fp(FpPoly f) {
    std::vector<std::pair<FpPoly, int>> out;
    auto p = f.prime();
    FpPoly xp = FpPoly::x(p), h = xp % f;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = powmod(h, Integer(static_cast<unsigned long>(p)), f);
        FpPoly g = poly_gcd(h - xp, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
    return out;
}

inline void equal_degree_fp(const FpPoly& g, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    auto p = g.prime();
    Integer pd = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
    while (true) {
        std::vector<FpPoly::coeff> rc(static_cast<std::size_t>(g.degree()));
        for (auto& x : rc) x = rng() % p;
        FpPoly a(p, rc);
        if (a.degree() <= 0) continue;
        FpPoly b(p);
        if (p == 2) {
            FpPoly t = a % g;
            b = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % g;
                b = b + t;
            }
        } else {
            b = powmod(a, (pd - 1) / 2, g) - FpPoly::constant(p, 1);
        }
        FpPoly h = poly_gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_fp(h, d, rng, out);
            equal_degree_fp(g / h, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Monic irreducible factors with multiplicities, sorted; the leading coefficient is dropped.
inline std::vector<std::pair<FpPoly, long>> factor_fp_poly(const FpPoly& f, unsigned long seed = 0x5eed) {
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<FpPoly, long>> out;
    for (auto& [sq, mult] : detail::squarefree_fp(f)) {
        for (auto& [g, d] : detail::distinct_degree_fp(sq)) {
            std::vector<FpPoly> parts;
            detail::equal_degree_fp(g, d, rng, parts);
            for (auto& q : parts) out.emplace_back(q, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.first.degree(), a.first) < std::make_pair(b.first.degree(), b.first);
    });
    return out;
}

inline bool is_irreducible(const FpPoly& f) {
    if (f.degree() <= 0) return false;
    auto fs = factor_fp_poly(f);
    return fs.size() == 1 && fs[0].second == 1;
}

// Multiplicity of the monic irreducible pi in the nonzero polynomial f.
inline long ord_poly(FpPoly f, const FpPoly& pi) {
    if (f.is_zero()) throw DomainError("valuation of zero");
    long k = 0;
    while (true) {
        auto [q, r] = f.divmod(pi);
        if (!r.is_zero()) return k;
        f = std::move(q);
        ++k;
    }
}

// Element of F_p(t), stored as num/den with gcd 1 and den monic.
class FpRatio {
public:
    FpRatio() = default;
    explicit FpRatio(FpPoly num) : num_(std::move(num)), den_(FpPoly::constant(num_.prime(), 1)) {}
    FpRatio(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    static FpRatio constant(FpPoly::coeff p, long long v) { return FpRatio(FpPoly::constant(p, v)); }

    FpPoly::coeff prime() const { return num_.prime(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    FpRatio operator+(const FpRatio& o) const { return FpRatio(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    FpRatio operator-(const FpRatio& o) const { return FpRatio(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    FpRatio operator-() const { return FpRatio(-num_, den_); }
    FpRatio operator*(const FpRatio& o) const { return FpRatio(num_ * o.num_, den_ * o.den_); }
    FpRatio operator/(const FpRatio& o) const {
        if (o.is_zero()) throw DomainError("division by zero in F_p(t)");
        return FpRatio(num_ * o.den_, den_ * o.num_);
    }
    FpRatio inverse() const { return FpRatio::constant(prime(), 1) / *this; }
    FpRatio pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FpRatio r = FpRatio::constant(prime(), 1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    bool operator==(const FpRatio& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FpRatio& o) const { return !(*this == o); }
    bool operator<(const FpRatio& o) const { return std::tie(num_, den_) < std::tie(o.num_, o.den_); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        auto wrap = [](const FpPoly& f) {
            std::string s = f.to_string();
            return f.coeffs().size() > 1 && s.find(' ') != std::string::npos ? "(" + s + ")" : s;
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw DomainError("zero denominator in F_p(t)");
        if (num_.prime() != den_.prime()) throw DomainError("mixing F_p(t) over different primes");
        if (num_.is_zero()) {
            den_ = FpPoly::constant(num_.prime(), 1);
            return;
        }
        FpPoly g = poly_gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        auto li = den_.inv(den_.lead());
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }

    FpPoly num_, den_;
};

inline std::string to_string(const FpRatio& x) { return x.to_string(); }

}  // namespace gvf
