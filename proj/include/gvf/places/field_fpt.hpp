#pragma once

#include "gvf/arith/fp_poly.hpp"
#include "gvf/places/place.hpp"

#include <string>
#include <vector>

namespace gvf {

// F_p(t) with valuations measured in degree units: v_pi(f) = ord_pi(f) deg pi,
// v_deg(f) = -deg f.
struct FptField {
    using Element = FpRatio;
    using Value = Rational;

    explicit FptField(std::uint64_t prime) : p(prime) {
        if (!is_prime(Integer(static_cast<unsigned long>(p))) || p >= (1ull << 31))
            throw DomainError("F_p(t) needs a prime p below 2^31");
    }

    std::uint64_t p;

    std::string name() const { return "F_" + std::to_string(p) + "(t)"; }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    Element one() const { return FpRatio::constant(p, 1); }
    Element from_int(long n) const { return FpRatio::constant(p, n); }
    Element power(const Element& a, long e) const { return a.pow(e); }
    Element t() const { return FpRatio(FpPoly::x(p)); }

    std::vector<Place> arch_places() const { return {FpDegree{}}; }

    std::vector<Place> candidate_places(const Element& a) const {
        if (a.is_zero()) throw DomainError("places of zero");
        check(a);
        std::vector<Place> out;
        for (auto& [g, m] : factor_fp_poly(a.num())) out.push_back(FpFinite{g});
        for (auto& [g, m] : factor_fp_poly(a.den())) out.push_back(FpFinite{g});
        out.push_back(FpDegree{});
        return out;
    }

    Value eval(const Place& v, const Element& a) const {
        if (a.is_zero()) throw DomainError("valuation of zero");
        check(a);
        if (auto* f = std::get_if<FpFinite>(&v)) {
            if (f->pi.prime() != p) throw DomainError("place over a different prime");
            return Rational((ord_poly(a.num(), f->pi) - ord_poly(a.den(), f->pi)) * f->pi.degree());
        }
        if (std::holds_alternative<FpDegree>(v)) return Rational(a.den().degree() - a.num().degree());
        throw DomainError("place " + gvf::to_string(v) + " is not a place of " + name());
    }

private:
    void check(const Element& a) const {
        if (a.prime() != p) throw DomainError("element of F_" + std::to_string(a.prime()) + "(t) used in " + name());
    }
};

}  // namespace gvf
