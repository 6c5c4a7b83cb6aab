#pragma once

#include "gvf/arith/value.hpp"
#include "gvf/places/place.hpp"
#include "gvf/tropical/normal_form.hpp"

#include <set>
#include <string>
#include <vector>

namespace gvf {

// Element of F (x) Q written additively: sum q_i div(a_i).
template <class E>
using GroupElem = FormalSum<E>;

template <class E>
using LatticeDivisor = JoinDifference<GroupElem<E>>;

template <class Field>
GroupElem<typename Field::Element> group_elem(const Field& F, const typename Field::Element& a, const Rational& q = 1) {
    if (F.is_zero(a)) throw DomainError("div(0) is undefined");
    if (a == F.one()) return {};
    return GroupElem<typename Field::Element>::unit(a, q);
}

template <class Field>
LatticeDivisor<typename Field::Element> div(const Field& F, const typename Field::Element& a) {
    return LatticeDivisor<typename Field::Element>::of(group_elem(F, a));
}

template <class Field>
LatticeDivisor<typename Field::Element> divisor_from_term(const Field& F, const TropicalPoly& t,
                                                         const std::vector<typename Field::Element>& a) {
    using E = typename Field::Element;
    if (static_cast<int>(a.size()) < t.arity)
        throw DomainError("term has arity " + std::to_string(t.arity) + " but " + std::to_string(a.size()) +
                          " elements were given");
    for (auto& x : a)
        if (F.is_zero(x)) throw DomainError("divisor of a tuple with a zero entry");
    auto inst = [&](const LinearForm& f) {
        GroupElem<E> g;
        for (auto& [k, q] : f.coeffs()) g = g + group_elem(F, a[k - 1], q);
        return g;
    };
    NormalForm nf = to_normal_form(t);
    LatticeDivisor<E> d;
    for (auto& f : nf.pos) d.pos.insert(inst(f));
    for (auto& f : nf.neg) d.neg.insert(inst(f));
    return d;
}

template <class Field>
typename Field::Value ev_elem(const Field& F, const Valuation& v, const GroupElem<typename Field::Element>& g) {
    typename Field::Value s{};
    for (auto& [a, q] : g.coeffs()) s = s + F.eval(v.place, a) * (q * v.scale);
    return s;
}

// v(alpha) = max over the positive join of min over the negative join of v(x/y).
// Valuations are finite on nonzero elements, so the result is always finite.
template <class Field>
Extended<typename Field::Value> ev_pair(const Field& F, const Valuation& v,
                                        const LatticeDivisor<typename Field::Element>& alpha) {
    using V = typename Field::Value;
    std::vector<V> negs;
    for (auto& y : alpha.neg) negs.push_back(ev_elem(F, v, y));
    bool first = true;
    V best{};
    for (auto& x : alpha.pos) {
        V vx = ev_elem(F, v, x);
        V m = vx - negs[0];
        for (std::size_t j = 1; j < negs.size(); ++j) m = vmin(m, vx - negs[j]);
        best = first ? m : vmax(best, m);
        first = false;
    }
    return best;
}

template <class Field>
typename Field::Value ev_value(const Field& F, const Place& p, const LatticeDivisor<typename Field::Element>& alpha) {
    return ev_pair(F, Valuation{p, 1}, alpha).value;
}

// All places at which some group element of alpha can be nonzero, plus the archimedean ones.
template <class Field>
std::set<Place> relevant_places(const Field& F, const LatticeDivisor<typename Field::Element>& alpha) {
    std::set<Place> out;
    for (const auto* side : {&alpha.pos, &alpha.neg})
        for (auto& g : *side)
            for (auto& [a, q] : g.coeffs())
                for (auto& v : F.candidate_places(a)) out.insert(v);
    for (auto& v : F.arch_places()) out.insert(v);
    return out;
}

// Semantic zero test: ev vanishes at every place of the field.  Places off
// the support of every x/y see ev = 0 automatically.
template <class Field>
bool is_zero(const Field& F, const LatticeDivisor<typename Field::Element>& alpha) {
    for (auto& v : relevant_places(F, alpha))
        if (vsign(ev_value(F, v, alpha)) != 0) return false;
    return true;
}

template <class Field>
bool semantically_equal(const Field& F, const LatticeDivisor<typename Field::Element>& a,
                        const LatticeDivisor<typename Field::Element>& b) {
    return is_zero(F, a - b);
}

template <class E>
std::string to_string(const GroupElem<E>& g) {
    if (g.empty()) return "0";
    std::string s;
    for (auto& [a, q] : g.coeffs()) {
        if (!s.empty()) s += " + ";
        if (q != 1) s += to_string(q) + "*";
        s += "div(" + to_string(a) + ")";
    }
    return s;
}

template <class E>
std::string to_string(const LatticeDivisor<E>& d) {
    auto side = [](const std::set<GroupElem<E>>& xs) {
        std::string s = "join(";
        bool first = true;
        for (auto& x : xs) {
            s += (first ? "" : ", ") + to_string(x);
            first = false;
        }
        return s + ")";
    };
    return side(d.pos) + " - " + side(d.neg);
}

}  // namespace gvf
