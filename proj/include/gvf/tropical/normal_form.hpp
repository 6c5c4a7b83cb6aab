#pragma once

#include "gvf/arith/integer.hpp"
#include "gvf/tropical/term.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace gvf {

// Finite formal Q-combination of keys; zero coefficients are never stored.
template <class K, class Less = std::less<K>>
class FormalSum {
public:
    using Map = std::map<K, Rational, Less>;

    FormalSum() = default;
    static FormalSum unit(const K& k, const Rational& q = 1) {
        FormalSum s;
        if (q != 0) s.c_.emplace(k, q);
        return s;
    }

    const Map& coeffs() const { return c_; }
    bool empty() const { return c_.empty(); }

    void add(const K& k, const Rational& q) {
        if (q == 0) return;
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, q);
            return;
        }
        it->second += q;
        if (it->second == 0) c_.erase(it);
    }
    FormalSum operator+(const FormalSum& o) const {
        FormalSum r = *this;
        for (auto& [k, q] : o.c_) r.add(k, q);
        return r;
    }
    FormalSum operator*(const Rational& q) const {
        FormalSum r;
        if (q == 0) return r;
        for (auto& [k, c] : c_) r.c_.emplace(k, c * q);
        return r;
    }
    FormalSum operator-() const { return *this * Rational(-1); }

    bool operator==(const FormalSum& o) const {
        if (c_.size() != o.c_.size()) return false;
        auto a = c_.begin();
        auto b = o.c_.begin();
        for (; a != c_.end(); ++a, ++b) {
            if (Less{}(a->first, b->first) || Less{}(b->first, a->first) || a->second != b->second) return false;
        }
        return true;
    }
    bool operator<(const FormalSum& o) const {
        auto a = c_.begin();
        auto b = o.c_.begin();
        for (; a != c_.end() && b != o.c_.end(); ++a, ++b) {
            if (Less{}(a->first, b->first)) return true;
            if (Less{}(b->first, a->first)) return false;
            if (a->second != b->second) return a->second < b->second;
        }
        return a == c_.end() && b != o.c_.end();
    }

private:
    Map c_;
};

using LinearForm = FormalSum<int>;

inline std::string to_string(const LinearForm& f) {
    if (f.empty()) return "0";
    std::string s;
    for (auto& [k, q] : f.coeffs()) {
        if (!s.empty()) s += q < 0 ? " - " : " + ";
        else if (q < 0) s += "-";
        Rational a = q > 0 ? q : Rational(-q);
        if (a != 1) s += to_string(a) + "*";
        s += "x" + std::to_string(k);
    }
    return s;
}

// Difference of two finite joins: max(pos) - max(neg), both sets nonempty.
template <class T>
struct JoinDifference {
    std::set<T> pos, neg;

    static JoinDifference zero() { return {{T{}}, {T{}}}; }
    static JoinDifference of(const T& x) { return {{x}, {T{}}}; }

    static std::set<T> minkowski(const std::set<T>& a, const std::set<T>& b) {
        std::set<T> r;
        for (auto& x : a)
            for (auto& y : b) r.insert(x + y);
        return r;
    }

    JoinDifference operator+(const JoinDifference& o) const { return {minkowski(pos, o.pos), minkowski(neg, o.neg)}; }
    JoinDifference operator-() const { return {neg, pos}; }
    JoinDifference operator-(const JoinDifference& o) const { return *this + (-o); }
    JoinDifference scaled(const Rational& q) const {
        if (q == 0) return zero();
        JoinDifference r;
        const auto& p = q > 0 ? pos : neg;
        const auto& n = q > 0 ? neg : pos;
        Rational a = q > 0 ? q : Rational(-q);
        for (auto& x : p) r.pos.insert(x * a);
        for (auto& y : n) r.neg.insert(y * a);
        return r;
    }

    static JoinDifference join(const std::vector<JoinDifference>& xs) {
        if (xs.empty()) throw DomainError("join of nothing");
        JoinDifference r;
        std::set<T> all_neg{T{}};
        for (auto& x : xs) all_neg = minkowski(all_neg, x.neg);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::set<T> part = xs[i].pos;
            for (std::size_t j = 0; j < xs.size(); ++j)
                if (j != i) part = minkowski(part, xs[j].neg);
            r.pos.insert(part.begin(), part.end());
        }
        r.neg = std::move(all_neg);
        return r;
    }
    static JoinDifference meet(const std::vector<JoinDifference>& xs) {
        std::vector<JoinDifference> neg;
        for (auto& x : xs) neg.push_back(-x);
        return -join(neg);
    }
    JoinDifference join(const JoinDifference& o) const { return join({*this, o}); }
    JoinDifference meet(const JoinDifference& o) const { return meet({*this, o}); }
    JoinDifference abs() const { return join({*this, -*this}); }
    JoinDifference positive_part() const { return join({*this, zero()}); }
    JoinDifference negative_part() const { return (-*this).positive_part(); }

    bool operator==(const JoinDifference& o) const { return pos == o.pos && neg == o.neg; }
};

using NormalForm = JoinDifference<LinearForm>;

inline NormalForm to_normal_form(const Term& t) {
    using K = Term::Kind;
    switch (t.kind) {
        case K::Var: return NormalForm::of(LinearForm::unit(t.var));
        case K::Scale: return to_normal_form(t.children[0]).scaled(t.coeff);
        case K::Sum: {
            NormalForm r = NormalForm::zero();
            for (auto& c : t.children) r = r + to_normal_form(c);
            return r;
        }
        case K::Max:
        case K::Min: {
            std::vector<NormalForm> parts;
            for (auto& c : t.children) parts.push_back(to_normal_form(c));
            return t.kind == K::Max ? NormalForm::join(parts) : NormalForm::meet(parts);
        }
    }
    throw DomainError("corrupt term");
}

inline NormalForm to_normal_form(const TropicalPoly& t) { return to_normal_form(t.root); }

// Evaluates a linear form at a point of any ordered Q-vector space type.
template <class V>
V eval_linear(const LinearForm& f, const std::vector<V>& x) {
    V s{};
    for (auto& [k, q] : f.coeffs()) {
        if (k < 1 || static_cast<std::size_t>(k) > x.size()) throw DomainError("linear form index out of range");
        s = s + x[k - 1] * q;
    }
    return s;
}

template <class V>
V eval_normal_form(const NormalForm& nf, const std::vector<V>& x) {
    auto best = [&](const std::set<LinearForm>& fs) {
        V m = eval_linear(*fs.begin(), x);
        for (auto& f : fs) m = vmax(m, eval_linear(f, x));
        return m;
    };
    return best(nf.pos) - best(nf.neg);
}

}  // namespace gvf
