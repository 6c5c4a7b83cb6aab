#pragma once

#include "gvf/arith/fp_poly.hpp"
#include "gvf/arith/integer.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gvf {

// Dense univariate polynomial with Integer or Rational coefficients.
template <class C>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<C> c) : c_(std::move(c)) { trim(); }
    static Poly constant(const C& a) { return Poly(std::vector<C>{a}); }
    static Poly x() { return Poly(std::vector<C>{C(0), C(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    const C& lead() const { return c_.back(); }
    C operator[](std::size_t i) const { return i < c_.size() ? c_[i] : C(0); }
    const std::vector<C>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const {
        std::vector<C> r(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<C> r(c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<C> r(c_.size() + o.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const C& a) const {
        std::vector<C> r(c_);
        for (auto& x : r) x *= a;
        return Poly(std::move(r));
    }
    Poly pow(unsigned e) const {
        Poly r = constant(C(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    Poly derivative() const {
        std::vector<C> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * C(static_cast<long>(i)));
        return Poly(std::move(r));
    }
    // Division with remainder; only meaningful over a field.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        if (degree() < d.degree()) return {Poly(), *this};
        std::vector<C> r = c_, q(c_.size() - d.c_.size() + 1, C(0));
        for (int i = degree() - d.degree(); i >= 0; --i) {
            C t = r[i + d.degree()] / d.lead();
            q[i] = t;
            if (t == 0) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) r[i + j] -= t * d.c_[j];
        }
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly monic() const { return is_zero() ? *this : *this * (C(1) / lead()); }

    C eval(const C& x) const {
        C r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }
    bool operator<(const Poly& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        for (std::size_t i = c_.size(); i-- > 0;) {
            int c = cmp(c_[i], o.c_[i]);
            if (c) return c < 0;
        }
        return false;
    }

    std::string to_string(char var = 'z') const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const C& a = c_[i];
            if (a == 0) continue;
            C m = abs(a);
            if (s.empty()) s += a < 0 ? "-" : "";
            else s += a < 0 ? " - " : " + ";
            if (i == 0) {
                s += gvf::to_string(m);
                continue;
            }
            if (m != 1) s += gvf::to_string(m) + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<C> c_;
};

using ZPoly = Poly<Integer>;
using QPoly = Poly<Rational>;

inline QPoly to_q(const ZPoly& f) {
    std::vector<Rational> c;
    for (auto& a : f.coeffs()) c.emplace_back(a);
    return QPoly(std::move(c));
}

inline Integer content(const ZPoly& f) {
    Integer g = 0;
    for (auto& a : f.coeffs()) g = gcd(g, a);
    return g;
}

// Primitive integer polynomial with positive leading coefficient.
inline ZPoly primitive_part(const ZPoly& f) {
    if (f.is_zero()) return f;
    Integer g = content(f);
    if (f.lead() < 0) g = -g;
    std::vector<Integer> c;
    for (auto& a : f.coeffs()) c.push_back(a / g);
    return ZPoly(std::move(c));
}

// Writes a nonzero rational polynomial as scale * P with P primitive, lc(P) > 0.
inline std::pair<Rational, ZPoly> split_content(const QPoly& f) {
    if (f.is_zero()) throw DomainError("content of zero polynomial");
    Integer den = 1;
    for (auto& a : f.coeffs()) den = lcm(den, a.get_den());
    std::vector<Integer> c;
    for (auto& a : f.coeffs()) c.push_back(a.get_num() * (den / a.get_den()));
    ZPoly z(std::move(c));
    ZPoly p = primitive_part(z);
    return {make_rational(z.lead(), den) / Rational(p.lead()), p};
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline ZPoly poly_gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    return split_content(poly_gcd(to_q(a), to_q(b))).second;
}

// Exact quotient over Z if g divides f there.
inline std::optional<ZPoly> exact_divide(const ZPoly& f, const ZPoly& g) {
    auto [q, r] = to_q(f).divmod(to_q(g));
    if (!r.is_zero()) return std::nullopt;
    std::vector<Integer> c;
    for (auto& a : q.coeffs()) {
        if (a.get_den() != 1) return std::nullopt;
        c.push_back(a.get_num());
    }
    return ZPoly(std::move(c));
}

// Yun's decomposition of a primitive polynomial into coprime squarefree parts.
inline std::vector<std::pair<ZPoly, long>> squarefree_decomposition(const ZPoly& f) {
    std::vector<std::pair<ZPoly, long>> out;
    if (f.degree() <= 0) return out;
    QPoly fq = to_q(f);
    QPoly a = poly_gcd(fq, fq.derivative());
    QPoly b = fq / a, c = fq.derivative() / a;
    QPoly d = c - b.derivative();
    long i = 1;
    while (b.degree() > 0) {
        QPoly ai = poly_gcd(b, d);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        if (ai.degree() > 0) out.emplace_back(split_content(ai).second, i);
        ++i;
    }
    return out;
}

namespace detail {

inline FpPoly reduce_mod(const ZPoly& f, FpPoly::coeff p) {
    std::vector<FpPoly::coeff> c;
    Integer pp(static_cast<unsigned long>(p));
    for (auto& a : f.coeffs()) c.push_back(mod(a, pp).get_ui());
    return FpPoly(p, std::move(c));
}

inline ZPoly lift_poly(const FpPoly& f) {
    std::vector<Integer> c;
    for (auto a : f.coeffs()) c.emplace_back(static_cast<unsigned long>(a));
    return ZPoly(std::move(c));
}

inline ZPoly reduce_coeffs(const ZPoly& f, const Integer& m, bool symmetric) {
    std::vector<Integer> c;
    for (auto& a : f.coeffs()) {
        Integer r = mod(a, m);
        if (symmetric && 2 * r > m) r -= m;
        c.push_back(r);
    }
    return ZPoly(std::move(c));
}

// Lifts f = g*h (mod p), g monic, to f = G*H (mod p^k).
inline std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& f, const FpPoly& g0, const FpPoly& h0, unsigned long k) {
    auto p = g0.prime();
    auto [one, s, t] = poly_xgcd(g0, h0);
    if (!one.is_one()) throw DomainError("Hensel lift needs coprime factors");
    Integer pp(static_cast<unsigned long>(p)), pj = pp;
    ZPoly g = lift_poly(g0), h = lift_poly(h0);
    for (unsigned long j = 1; j < k; ++j) {
        ZPoly diff = f - g * h;
        std::vector<Integer> ec;
        for (auto& a : diff.coeffs()) ec.push_back(a / pj);
        FpPoly e = reduce_mod(ZPoly(std::move(ec)), p);
        auto [q, r] = (e * t).divmod(g0);
        FpPoly dh = e * s + q * h0;
        g = g + lift_poly(r) * pj;
        h = h + lift_poly(dh) * pj;
        pj *= pp;
        g = reduce_coeffs(g, pj, false);
        h = reduce_coeffs(h, pj, false);
    }
    return {g, h};
}

// Factors a primitive squarefree polynomial of degree >= 1 with lc > 0.
inline std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    if (f.degree() <= 1) return {f};
    FpPoly::coeff p = 3;
    for (;; p += 2) {
        if (!is_prime(Integer(static_cast<unsigned long>(p)))) continue;
        if (mpz_divisible_ui_p(f.lead().get_mpz_t(), p)) continue;
        FpPoly fp = reduce_mod(f, p);
        if (poly_gcd(fp, fp.derivative()).degree() == 0) break;
    }
    auto modp = factor_fp_poly(reduce_mod(f, p));
    if (modp.size() == 1) return {f};

    Integer norm2 = 0;
    for (auto& a : f.coeffs()) norm2 += a * a;
    Integer bound = (sqrt(norm2) + 1) * ipow(Integer(2), static_cast<unsigned long>(f.degree())) * f.lead() * 2;
    Integer pp(static_cast<unsigned long>(p)), pk = pp;
    unsigned long k = 1;
    while (pk <= bound) {
        pk *= pp;
        ++k;
    }

    std::vector<ZPoly> lifted;
    ZPoly rest = f;
    for (std::size_t i = 0; i + 1 < modp.size(); ++i) {
        FpPoly g0 = modp[i].first;
        FpPoly h0 = reduce_mod(rest, p) / g0;
        auto [g, h] = hensel_lift(rest, g0, h0, k);
        lifted.push_back(g);
        rest = h;
    }
    // The last factor is lc * (monic), normalize to monic mod p^k.
    {
        Integer lc = mod(rest.lead(), pk), inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
        lifted.push_back(reduce_coeffs(rest * inv, pk, false));
    }

    std::vector<ZPoly> found;
    ZPoly F = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly g = ZPoly::constant(F.lead());
            for (auto i : idx) g = reduce_coeffs(g * lifted[i], pk, true);
            g = primitive_part(g);
            if (auto q = exact_divide(F, g)) {
                found.push_back(g);
                F = *q;
                for (std::size_t j = s; j-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
                hit = true;
                break;
            }
            std::size_t j = s;
            while (j > 0 && idx[j - 1] == lifted.size() - s + j - 1) --j;
            if (j == 0) break;
            ++idx[j - 1];
            for (std::size_t m = j; m < s; ++m) idx[m] = idx[m - 1] + 1;
        }
        if (!hit) ++s;
    }
    if (F.degree() > 0) found.push_back(primitive_part(F));
    return found;
}

}  // namespace detail

struct ZFactorization {
    Integer unit;  // signed content
    std::vector<std::pair<ZPoly, long>> factors;  // primitive, lc > 0, irreducible over Q
};

inline ZFactorization factor_zpoly(const ZPoly& f) {
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    ZFactorization out;
    out.unit = content(f) * (f.lead() < 0 ? -1 : 1);
    ZPoly pf = primitive_part(f);
    for (auto& [part, mult] : squarefree_decomposition(pf))
        for (auto& g : detail::zassenhaus(part)) out.factors.emplace_back(g, mult);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Multiplicity of the irreducible primitive g in the nonzero polynomial f.
inline long ord_poly(const QPoly& f, const ZPoly& g) {
    if (f.is_zero()) throw DomainError("valuation of zero");
    QPoly q = f, gq = to_q(g);
    long k = 0;
    while (true) {
        auto [a, r] = q.divmod(gq);
        if (!r.is_zero()) return k;
        q = std::move(a);
        ++k;
    }
}

}  // namespace gvf
