#pragma once

#include "gvf/arith/logreal.hpp"
#include "gvf/arith/quad.hpp"
#include "gvf/places/place.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <string>
#include <vector>

namespace gvf {

// Q(sqrt(d)).  Finite places are normalized as (f/2) w(a) log p with w the
// ideal valuation; archimedean ones as -(1/2) log|sigma(a)| (d > 0) or
// -(1/2) log N(a) (d < 0).  The sum over places above p then restricts to
// the p-adic valuation of Q.
struct QuadField {
    using Element = QuadElem;
    using Value = LogReal;

    explicit QuadField(long disc) : d(disc) {
        if (d == 0 || d == 1 || !is_squarefree(Integer(d)))
            throw DomainError("d must be a squarefree integer other than 0 and 1");
    }

    long d;

    std::string name() const { return "Q(sqrt(" + std::to_string(d) + "))"; }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    Element one() const { return QuadElem(d, 1); }
    Element from_int(long n) const { return QuadElem(d, n); }
    Element power(const Element& a, long e) const { return a.pow(e); }
    Element embed(const Rational& q) const { return QuadElem(d, q); }
    Element sqrt_d() const { return QuadElem(d, 0, 1); }

    bool one_mod_four() const { return ((d % 4) + 4) % 4 == 1; }

    // Coordinates (A, B) of a in the integral basis 1, omega.
    std::pair<Rational, Rational> omega_coords(const Element& a) const {
        if (one_mod_four()) return {a.a() - a.b(), 2 * a.b()};
        return {a.a(), a.b()};
    }

    std::vector<Place> arch_places() const {
        if (d > 0) return {QuadArch{d, 1}, QuadArch{d, 2}};
        return {QuadArch{d, 1}};
    }

    std::vector<QuadFinite> places_above(const Integer& p) const {
        if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
        Integer disc = one_mod_four() ? Integer(d) : Integer(4 * d);
        // omega^2 - c1 omega - c0 = 0 with (c1, c0) = (0, d) or (1, (d-1)/4).
        Integer c1 = one_mod_four() ? 1 : 0;
        Integer c0 = one_mod_four() ? Integer((d - 1) / 4) : Integer(d);
        auto roots_mod_p = [&]() {
            std::vector<Integer> rs;
            if (p == 2) {
                for (int x = 0; x < 2; ++x)
                    if (mod(Integer(x * x) - c1 * x - c0, p) == 0) rs.emplace_back(x);
                return rs;
            }
            Integer dd = mod(c1 * c1 + 4 * c0, p);
            Integer s = sqrt_mod(dd, p);
            Integer inv2;
            mpz_invert(inv2.get_mpz_t(), Integer(2).get_mpz_t(), p.get_mpz_t());
            rs.push_back(mod((c1 + s) * inv2, p));
            rs.push_back(mod((c1 - s) * inv2, p));
            std::sort(rs.begin(), rs.end());
            rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
            return rs;
        };
        if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) {
            auto rs = roots_mod_p();
            return {QuadFinite{d, p, SplitType::Ramified, 2, 1, rs.empty() ? Integer(0) : rs[0], 0}};
        }
        bool split;
        if (p == 2) split = ((d % 8) + 8) % 8 == 1;
        else split = legendre(Integer(d), p) == 1;
        if (!split) return {QuadFinite{d, p, SplitType::Inert, 1, 2, 0, 0}};
        auto rs = roots_mod_p();
        return {QuadFinite{d, p, SplitType::Split, 1, 1, rs[0], 1}, QuadFinite{d, p, SplitType::Split, 1, 1, rs[1], 2}};
    }

    // Ideal valuation w_P(a) at a finite place.
    long ideal_valuation(const QuadFinite& P, const Element& a) const {
        if (a.is_zero()) throw DomainError("valuation of zero");
        if (P.type != SplitType::Split) return ord_p(a.norm(), P.p) / P.f;
        auto [A, B] = omega_coords(a);
        Integer den = lcm(A.get_den(), B.get_den());
        Integer ia = A.get_num() * (den / A.get_den()), ib = B.get_num() * (den / B.get_den());
        long k = std::min(ia == 0 ? LONG_MAX : ord_p(ia, P.p), ib == 0 ? LONG_MAX : ord_p(ib, P.p));
        Integer pk = ipow(P.p, static_cast<unsigned long>(k));
        ia /= pk;
        ib /= pk;
        long base = k - ord_p(den, P.p);
        if (mod(ia + ib * P.root, P.p) != 0) return base;
        QuadElem alpha = one_mod_four() ? QuadElem(d, Rational(ia) + Rational(ib, 2), Rational(ib, 2))
                                        : QuadElem(d, Rational(ia), Rational(ib));
        return ord_p(alpha.norm(), P.p) + base;
    }

    std::vector<Place> candidate_places(const Element& a) const {
        if (a.is_zero()) throw DomainError("places of zero");
        check(a);
        std::set<Integer, IntegerLess> primes;
        for (auto& [p, k] : factor_rational(a.norm())) primes.insert(p);
        auto [A, B] = omega_coords(a);
        for (auto& [p, k] : factor_integer(lcm(A.get_den(), B.get_den()))) primes.insert(p);
        std::vector<Place> out;
        for (auto& p : primes)
            for (auto& P : places_above(p)) out.push_back(P);
        for (auto& v : arch_places()) out.push_back(v);
        return out;
    }

    Value eval(const Place& v, const Element& a) const {
        if (a.is_zero()) throw DomainError("valuation of zero");
        check(a);
        if (auto* P = std::get_if<QuadFinite>(&v)) {
            if (P->d != d) throw DomainError("place of a different quadratic field");
            return LogReal::log_prime(P->p, Rational(P->f * ideal_valuation(*P, a), 2));
        }
        if (auto* A = std::get_if<QuadArch>(&v)) {
            if (A->d != d) throw DomainError("place of a different quadratic field");
            if (d < 0) return LogReal::log_abs(a.norm()) * Rational(-1, 2);
            const QuadElem& s = A->embedding == 1 ? a : a.conj();
            return LogReal::log_abs(s.inverse(), 2);
        }
        throw DomainError("place " + gvf::to_string(v) + " is not a place of " + name());
    }

    // The nontrivial automorphism acting on places: v -> v o sigma^{-1}.
    Place galois_act(const Place& v) const {
        if (auto* P = std::get_if<QuadFinite>(&v)) {
            if (P->type != SplitType::Split) return v;
            for (auto& Q : places_above(P->p))
                if (Q.index != P->index) return Q;
        }
        if (auto* A = std::get_if<QuadArch>(&v)) {
            if (d > 0) return QuadArch{d, 3 - A->embedding};
            return v;
        }
        throw DomainError("place " + gvf::to_string(v) + " is not a place of " + name());
    }

private:
    void check(const Element& a) const {
        if (a.d() != d) throw DomainError("element of Q(sqrt(" + std::to_string(a.d()) + ")) used in " + name());
    }
};

}  // namespace gvf
