#pragma once

#include "gvf/arith/logreal.hpp"
#include "gvf/places/place.hpp"

#include <string>
#include <vector>

namespace gvf {

// The rationals: p-adic places v_p(a) = ord_p(a) log p and v_inf(a) = -log|a|.
struct QField {
    using Element = Rational;
    using Value = LogReal;

    std::string name() const { return "Q"; }
    bool is_zero(const Element& a) const { return a == 0; }
    Element one() const { return 1; }
    Element from_int(long n) const { return Rational(n); }
    Element power(const Element& a, long e) const { return rpow(a, e); }

    std::vector<Place> arch_places() const { return {QArch{}}; }

    // Places where a can have a nonzero valuation.
    std::vector<Place> candidate_places(const Element& a) const {
        if (a == 0) throw DomainError("places of zero");
        std::vector<Place> out;
        for (auto& [p, k] : factor_rational(a)) out.push_back(QFinite{p});
        out.push_back(QArch{});
        return out;
    }

    Value eval(const Place& v, const Element& a) const {
        if (a == 0) throw DomainError("valuation of zero");
        if (auto* f = std::get_if<QFinite>(&v)) return LogReal::log_prime(f->p, ord_p(a, f->p));
        if (std::holds_alternative<QArch>(v)) return LogReal::log_abs(1 / a);
        throw DomainError("place " + gvf::to_string(v) + " is not a place of Q");
    }
};

}  // namespace gvf
