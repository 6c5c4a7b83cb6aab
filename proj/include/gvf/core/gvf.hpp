#pragma once

#include "gvf/places/field_fpt.hpp"
#include "gvf/places/field_q.hpp"
#include "gvf/places/field_quad.hpp"
#include "gvf/tropical/divisor.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace gvf {

template <class V>
V vabs(const V& x) {
    return vmax(x, V{} - x);
}

// Sparse vector of place values with weights, the lattice L^1(Omega) restricted
// to finitely many atoms.  Missing entries are zero.
template <class V>
struct LatticeValVector {
    std::map<Place, V> entries;
    std::map<Place, Rational> weights;

    template <class Op>
    LatticeValVector combine(const LatticeValVector& o, Op op) const {
        LatticeValVector r;
        r.weights = weights;
        r.weights.insert(o.weights.begin(), o.weights.end());
        for (auto& [v, w] : r.weights) {
            auto a = entries.find(v);
            auto b = o.entries.find(v);
            r.entries[v] = op(a == entries.end() ? V{} : a->second, b == o.entries.end() ? V{} : b->second);
        }
        return r;
    }
    LatticeValVector meet(const LatticeValVector& o) const {
        return combine(o, [](const V& a, const V& b) { return vmin(a, b); });
    }
    LatticeValVector join(const LatticeValVector& o) const {
        return combine(o, [](const V& a, const V& b) { return vmax(a, b); });
    }
    LatticeValVector operator+(const LatticeValVector& o) const {
        return combine(o, [](const V& a, const V& b) { return a + b; });
    }
    LatticeValVector map_values(V (*f)(const V&)) const {
        LatticeValVector r = *this;
        for (auto& [v, x] : r.entries) x = f(x);
        return r;
    }
    LatticeValVector positive_part() const {
        return map_values([](const V& x) { return vmax(x, V{}); });
    }
    LatticeValVector negative_part() const {
        return map_values([](const V& x) { return vmax(V{} - x, V{}); });
    }

    V integral() const {
        V s{};
        for (auto& [v, x] : entries) s = s + x * weights.at(v);
        return s;
    }
    V norm() const {
        V s{};
        for (auto& [v, x] : entries) s = s + vabs(x) * weights.at(v);
        return s;
    }
};

// Atom of a local measure: the class of v normalized by v(a) = 1, carrying
// mass weight * v(a).
template <class V>
struct MeasureAtom {
    Place place;
    V anchor;  // v(a) > 0
    Rational weight;
    V mass;
};

template <class V>
struct LocalMeasure {
    std::vector<MeasureAtom<V>> atoms;

    const MeasureAtom<V>* find(const Place& v) const {
        for (auto& a : atoms)
            if (a.place == v) return &a;
        return nullptr;
    }
    V total() const {
        V s{};
        for (auto& a : atoms) s = s + a.mass;
        return s;
    }
};

struct RnReport {
    bool ok = true;
    int shared_atoms = 0;
    bool functional_checked = false;
    std::vector<std::string> failures;
};

namespace detail {

// Formal product of two LogReals as a polynomial of degree two in the symbols
// log p and the algebraic logarithm.  Formal equality implies real equality.
using LogMonomial = std::pair<std::string, std::string>;
using LogPoly = std::map<LogMonomial, Rational>;

inline std::vector<std::pair<std::string, Rational>> log_symbols(const LogReal& x) {
    std::vector<std::pair<std::string, Rational>> out;
    for (auto& [p, q] : x.terms()) out.emplace_back(p.get_str(), q);
    if (x.alg()) out.emplace_back("|" + x.alg()->gamma.to_string() + "|", make_rational(1, x.alg()->order));
    return out;
}

inline LogPoly log_product(const LogReal& x, const LogReal& y) {
    LogPoly r;
    for (auto& [s, a] : log_symbols(x))
        for (auto& [t, b] : log_symbols(y)) {
            LogMonomial m = s < t ? LogMonomial{s, t} : LogMonomial{t, s};
            r[m] += a * b;
            if (r[m] == 0) r.erase(m);
        }
    return r;
}

inline bool cross_equal(const Rational& ma, const Rational& y, const Rational& mb, const Rational& x) {
    return ma * y == mb * x;
}
inline bool cross_equal(const LogReal& ma, const LogReal& y, const LogReal& mb, const LogReal& x) {
    return log_product(ma, y) == log_product(mb, x);
}

}  // namespace detail

// A global structure on a field with discrete support: every place of the
// field with weight r / c_v, evaluated through c_v times the normalized
// valuation.  c_v = 1 unless renormalized.
template <class Field>
class DiscreteGVF {
public:
    using Element = typename Field::Element;
    using Value = typename Field::Value;
    using Divisor = LatticeDivisor<Element>;

    DiscreteGVF(Field field, Rational r) : F_(std::move(field)), r_(std::move(r)) {
        if (r_ < 0) throw DomainError("the global scale r must be nonnegative");
    }

    const Field& field() const { return F_; }
    const Rational& r() const { return r_; }

    Rational scale(const Place& v) const {
        auto it = scale_.find(v);
        return it == scale_.end() ? Rational(1) : it->second;
    }
    Rational weight(const Place& v) const { return r_ / scale(v); }
    Valuation valuation(const Place& v) const { return {v, scale(v)}; }

    Value value(const Place& v, const Element& a) const { return F_.eval(v, a) * scale(v); }
    Extended<Value> v_eval(const Place& v, const Element& a) const {
        if (F_.is_zero(a)) return Extended<Value>::plus_inf();
        return value(v, a);
    }

    std::set<Place> places(const std::vector<Element>& xs) const {
        std::set<Place> out;
        for (auto& x : xs)
            if (!F_.is_zero(x))
                for (auto& v : F_.candidate_places(x)) out.insert(v);
        for (auto& v : F_.arch_places()) out.insert(v);
        return out;
    }

    // Sum over places of weight * max_i(-v(a_i)); zero coordinates are dropped.
    Extended<Value> height(const std::vector<Element>& a) const {
        if (a.empty()) throw DomainError("height of an empty tuple");
        std::vector<Element> nz;
        for (auto& x : a)
            if (!F_.is_zero(x)) nz.push_back(x);
        if (nz.empty()) return Extended<Value>::minus_inf();
        Value s{};
        for (auto& v : places(nz)) {
            Value m = Value{} - value(v, nz[0]);
            for (std::size_t i = 1; i < nz.size(); ++i) m = vmax(m, Value{} - value(v, nz[i]));
            s = s + m * weight(v);
        }
        return s;
    }
    // ht(x) = h(1, x).
    Value ht(const Element& x) const { return height({F_.one(), x}).value; }

    Value local_term(const TropicalPoly& t, const std::vector<Element>& a) const {
        check_tuple(t, a);
        Value s{};
        for (auto& v : places(a)) {
            std::vector<Value> xs;
            for (auto& x : a) xs.push_back(value(v, x));
            s = s + t.eval(xs) * weight(v);
        }
        return s;
    }

    Value functional(const Divisor& alpha) const {
        Value s{};
        for (auto& v : relevant_places(F_, alpha)) s = s + ev_pair(F_, valuation(v), alpha).value * weight(v);
        return s;
    }

    // The functional recovered from heights alone:
    // l(join P - join N) = h(P^-1) - h(N^-1), with rational exponents cleared.
    Value functional_via_heights(const Divisor& alpha) const {
        Integer L = 1;
        for (const auto* side : {&alpha.pos, &alpha.neg})
            for (auto& g : *side)
                for (auto& [a, q] : g.coeffs()) L = lcm(L, q.get_den());
        auto tuple = [&](const std::set<GroupElem<Element>>& side) {
            std::vector<Element> out;
            for (auto& g : side) out.push_back(materialize(g, -L));
            return out;
        };
        Value hp = height(tuple(alpha.pos)).value, hn = height(tuple(alpha.neg)).value;
        return (hp - hn) * make_rational(1, L);
    }

    // Field element prod a^(q*k) for a group element with k*q integral.
    Element materialize(const GroupElem<Element>& g, const Integer& k) const {
        Element r = F_.one();
        for (auto& [a, q] : g.coeffs()) {
            Rational e = q * k;
            if (e.get_den() != 1) throw DomainError("exponent is not integral");
            r = r * F_.power(a, e.get_num().get_si());
        }
        return r;
    }

    // Height through the lattice valuation: -integral of the meet of v(a_i).
    Extended<Value> height_via_lattice(const std::vector<Element>& a) const {
        std::vector<Element> nz;
        for (auto& x : a)
            if (!F_.is_zero(x)) nz.push_back(x);
        if (nz.empty()) return Extended<Value>::minus_inf();
        LatticeValVector<Value> m = lattice_valuation(nz[0], places(nz));
        for (std::size_t i = 1; i < nz.size(); ++i) m = m.meet(lattice_valuation(nz[i], places(nz)));
        return Value(Value{} - m.integral());
    }

    LatticeValVector<Value> lattice_valuation(const Element& x) const { return lattice_valuation(x, places({x})); }
    LatticeValVector<Value> lattice_valuation(const Element& x, const std::set<Place>& at) const {
        if (F_.is_zero(x)) throw DomainError("lattice valuation of zero");
        LatticeValVector<Value> r;
        for (auto& v : at) {
            r.entries[v] = value(v, x);
            r.weights[v] = weight(v);
        }
        return r;
    }

    Value product_formula_sum(const Element& a) const { return lattice_valuation(a).integral(); }

    LocalMeasure<Value> local_measure(const Element& a) const {
        if (F_.is_zero(a)) throw DomainError("local measure of zero");
        LocalMeasure<Value> mu;
        for (auto& v : places({a})) {
            Value x = value(v, a);
            if (vsign(x) > 0) mu.atoms.push_back({v, x, weight(v), x * weight(v)});
        }
        if (mu.atoms.empty()) throw DomainError("element has no place with positive valuation");
        return mu;
    }

    // Radon-Nikodym relation on the shared atoms of mu_a and mu_b, and
    // integral of v(beta) against mu_a when beta vanishes off mu_a's atoms.
    RnReport rn_check(const Element& a, const Element& b, const Divisor& beta) const {
        RnReport rep;
        LocalMeasure<Value> ma = local_measure(a), mb = local_measure(b);
        for (auto& A : ma.atoms) {
            const MeasureAtom<Value>* B = mb.find(A.place);
            if (!B) continue;
            ++rep.shared_atoms;
            if (!detail::cross_equal(A.mass, value(A.place, b), B->mass, value(A.place, a))) {
                rep.ok = false;
                rep.failures.push_back("density mismatch at " + to_string(A.place));
            }
        }
        for (auto& v : relevant_places(F_, beta))
            if (!ma.find(v) && vsign(ev_pair(F_, valuation(v), beta).value) != 0) return rep;
        rep.functional_checked = true;
        Value s{};
        for (auto& A : ma.atoms) s = s + ev_pair(F_, valuation(A.place), beta).value * A.weight;
        if (s != functional(beta)) {
            rep.ok = false;
            rep.failures.push_back("integral against the measure differs from the functional");
        }
        return rep;
    }

    // Selected places get valuation scale * c and weight / c.
    DiscreteGVF renormalize(const std::set<Place>& selection, const Rational& c) const {
        if (c <= 0) throw DomainError("renormalization factor must be positive");
        DiscreteGVF g = *this;
        for (auto& v : selection) {
            Rational s = scale(v) * c;
            if (s == 1) g.scale_.erase(v);
            else g.scale_[v] = s;
        }
        return g;
    }

    bool operator==(const DiscreteGVF& o) const { return r_ == o.r_ && scale_ == o.scale_; }

private:
    void check_tuple(const TropicalPoly& t, const std::vector<Element>& a) const {
        if (static_cast<int>(a.size()) < t.arity)
            throw DomainError("term has arity " + std::to_string(t.arity) + " but " + std::to_string(a.size()) +
                              " elements were given");
        for (auto& x : a)
            if (F_.is_zero(x)) throw DomainError("local terms need nonzero entries");
    }

    Field F_;
    Rational r_;
    std::map<Place, Rational> scale_;
};

inline DiscreteGVF<QField> gvf_Q(const Rational& r = 1) { return {QField{}, r}; }
inline DiscreteGVF<FptField> gvf_Fpt(std::uint64_t p, const Rational& r = 1) { return {FptField(p), r}; }
inline DiscreteGVF<QuadField> gvf_quad(long d) { return {QuadField(d), 1}; }

}  // namespace gvf
