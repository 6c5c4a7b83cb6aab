#pragma once

#include "gvf/tropical/divisor.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gvf {

template <class V>
struct PositivityVerdict {
    bool positive = true;
    bool zero = true;  // ev vanishes at every checked place
    std::optional<std::pair<Place, V>> witness;
    std::vector<Place> checked;
};

// Sign of ev at one normalized representative of every place where some x/y
// of the presentation is non-unit, plus the archimedean or degree places.
// Elsewhere ev is 0, and scaling a valuation scales ev.
template <class Field>
PositivityVerdict<typename Field::Value> is_positive(const Field& F, const LatticeDivisor<typename Field::Element>& alpha) {
    PositivityVerdict<typename Field::Value> out;
    for (auto& v : relevant_places(F, alpha)) {
        out.checked.push_back(v);
        auto x = ev_value(F, v, alpha);
        int s = vsign(x);
        if (s != 0) out.zero = false;
        if (s < 0 && out.positive) {
            out.positive = false;
            out.witness.emplace(v, x);
        }
    }
    return out;
}

// -meet_i div(a_i).
template <class Field>
LatticeDivisor<typename Field::Element> neg_meet(const Field& F, const std::vector<typename Field::Element>& a) {
    std::vector<LatticeDivisor<typename Field::Element>> ds;
    for (auto& x : a) ds.push_back(div(F, x));
    return -LatticeDivisor<typename Field::Element>::meet(ds);
}

template <class Field>
std::vector<Place> tuple_places(const Field& F, const std::vector<typename Field::Element>& a) {
    std::set<Place> ps;
    for (auto& x : a)
        for (auto& v : F.candidate_places(x)) ps.insert(v);
    for (auto& v : F.arch_places()) ps.insert(v);
    return {ps.begin(), ps.end()};
}

// For every place: min_i v(a_i) <= 0 if non-archimedean, < -eps v(2) if
// archimedean.  Places off the support see min = 0.
template <class Field>
bool negativity_condition(const Field& F, const std::vector<typename Field::Element>& a, const Rational& eps) {
    using V = typename Field::Value;
    for (auto& v : tuple_places(F, a)) {
        V m = F.eval(v, a[0]);
        for (std::size_t i = 1; i < a.size(); ++i) m = vmin(m, F.eval(v, a[i]));
        if (!is_archimedean(v)) {
            if (vsign(m) > 0) return false;
        } else {
            V bound = V{} - F.eval(v, F.from_int(2)) * eps;
            if (vsign(m - bound) >= 0) return false;
        }
    }
    return true;
}

// For every place: v(alpha) >= 0 if non-archimedean, > eps v(2) if archimedean.
template <class Field>
bool gamma_condition(const Field& F, const LatticeDivisor<typename Field::Element>& alpha, const Rational& eps) {
    using V = typename Field::Value;
    for (auto& v : relevant_places(F, alpha)) {
        V x = ev_value(F, v, alpha);
        if (!is_archimedean(v)) {
            if (vsign(x) < 0) return false;
        } else {
            V bound = F.eval(v, F.from_int(2)) * eps;
            if (vsign(x - bound) <= 0) return false;
        }
    }
    return true;
}

}  // namespace gvf
