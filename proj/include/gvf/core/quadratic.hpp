#pragma once

#include "gvf/core/gvf.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace gvf {

// Q viewed through a structure on Q(sqrt(d)): the valuation at p is the
// weighted sum of the valuations above p.
struct RestrictedQuadField {
    using Element = Rational;
    using Value = LogReal;

    DiscreteGVF<QuadField> G;

    std::string name() const { return "Q restricted from " + G.field().name(); }
    bool is_zero(const Element& a) const { return a == 0; }
    Element one() const { return 1; }
    Element from_int(long n) const { return Rational(n); }
    Element power(const Element& a, long e) const { return rpow(a, e); }
    std::vector<Place> arch_places() const { return {QArch{}}; }
    std::vector<Place> candidate_places(const Element& a) const { return QField{}.candidate_places(a); }

    Value eval(const Place& v, const Element& a) const {
        if (a == 0) throw DomainError("valuation of zero");
        QuadElem x = G.field().embed(a);
        Value s;
        if (auto* f = std::get_if<QFinite>(&v)) {
            for (auto& w : G.field().places_above(f->p)) s += G.value(w, x) * G.weight(w);
            return s;
        }
        if (std::holds_alternative<QArch>(v)) {
            for (auto& w : G.field().arch_places()) s += G.value(w, x) * G.weight(w);
            return s;
        }
        throw DomainError("place " + gvf::to_string(v) + " is not a place of Q");
    }
};

inline DiscreteGVF<RestrictedQuadField> restrict(const DiscreteGVF<QuadField>& G) {
    return {RestrictedQuadField{G}, 1};
}

struct GaloisReport {
    bool height_ok = true;
    bool places_ok = true;
    bool ok() const { return height_ok && places_ok; }
};

// ht(sigma a) = ht(a), and v(sigma a) = (sigma v)(a) at every relevant place.
inline GaloisReport check_galois_invariance(const DiscreteGVF<QuadField>& G, const QuadElem& a) {
    GaloisReport rep;
    const QuadField& F = G.field();
    rep.height_ok = G.ht(a.conj()) == G.ht(a);
    if (a.is_zero()) return rep;
    for (auto& v : G.places({a, a.conj()}))
        if (F.eval(F.galois_act(v), a) != F.eval(v, a.conj())) rep.places_ok = false;
    return rep;
}

struct UniquenessReport {
    long d = 0;
    long bound = 0;
    std::vector<Place> places;
    std::vector<QuadElem> elements;
    std::vector<std::string> symbols;
    std::size_t rank = 0;
    std::size_t kernel_dimension = 0;
    bool product_formula_in_kernel = false;
    bool positive_direction = false;
};

namespace detail {

// Rank and a kernel basis of A (rows x cols) over Q.
inline std::pair<std::size_t, std::vector<std::vector<Rational>>> rational_kernel(std::vector<std::vector<Rational>> A,
                                                                                   std::size_t cols) {
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
        std::size_t piv = r;
        while (piv < A.size() && A[piv][c] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[r]);
        Rational inv = 1 / A[r][c];
        for (auto& x : A[r]) x *= inv;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -A[i][f];
        basis.push_back(v);
    }
    return {r, basis};
}

class QuadLogBasis {
public:
    QuadLogBasis(const QuadField& F, long bound) : F_(F) {
        unit_ = F.d == -1 ? QuadElem(-1, 0, 1) : QuadElem(2, 1, 1);
        for (auto& p : primes_up_to(bound)) {
            auto above = F.places_above(p);
            if (above[0].type == SplitType::Inert) {
                gens_.push_back({above[0], F.embed(p)});
                continue;
            }
            QuadElem pi = find_generator(above[0]);
            gens_.push_back({above[0], pi});
            if (above.size() == 2) gens_.push_back({above[1], pi.conj()});
        }
    }

    QuadElem unit() const { return unit_; }
    const std::vector<std::pair<QuadFinite, QuadElem>>& generators() const { return gens_; }

    // Coordinates of x in the symbols log p, log|eps| and L_p = log|pi_1/conj(pi_1)|
    // (first embedding).  These are logarithms of multiplicatively independent
    // algebraic numbers, hence linearly independent over Q.
    std::map<std::string, Rational> coordinates(const LogReal& x) const {
        std::map<std::string, Rational> c;
        for (auto& [p, q] : x.terms()) c["log(" + p.get_str() + ")"] += q;
        if (x.alg()) {
            const QuadElem& g = x.alg()->gamma;
            Rational inv_n = make_rational(1, x.alg()->order);
            QuadElem rest = g;
            for (auto& [P, pi] : gens_) {
                long e = F_.ideal_valuation(P, g);
                if (e == 0) continue;
                rest = rest / pi.pow(e);
                for (auto& [s, q] : log_generator(P)) c[s] += q * e * inv_n;
            }
            if (abs(rest.norm()) != 1) throw DomainError("element is not supported on the chosen primes");
            double ratio = std::log(std::abs(quad_approx(rest))) / std::log(std::abs(quad_approx(unit_)));
            long k = std::lround(ratio);
            QuadElem u = unit_.pow(k);
            if (rest != u && rest != -u) throw DomainError("unit is not a power of the fundamental unit");
            if (k != 0) c["log|" + unit_.to_string() + "|"] += inv_n * k;
        }
        for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
        return c;
    }

    LogReal symbol_value(const std::string& s) const {
        if (s.rfind("log(", 0) == 0) return LogReal::log_prime(Integer(s.substr(4, s.size() - 5)));
        if (s == "log|" + unit_.to_string() + "|") return LogReal::log_abs(unit_);
        for (auto& [P, pi] : gens_)
            if (P.index == 1 && s == split_symbol(P)) return LogReal::log_abs(pi / pi.conj());
        throw DomainError("unknown symbol " + s);
    }

private:
    static std::string split_symbol(const QuadFinite& P) { return "L_" + P.p.get_str(); }

    // log|sigma_1(pi_P)| in symbols.
    std::map<std::string, Rational> log_generator(const QuadFinite& P) const {
        std::string lp = "log(" + P.p.get_str() + ")";
        if (P.type == SplitType::Inert) return {{lp, 1}};
        if (P.type == SplitType::Ramified) {
            std::map<std::string, Rational> r{{lp, Rational(1, 2)}};
            QuadElem pi;
            for (auto& [Q, g] : gens_)
                if (Q == P) pi = g;
            // pi^2 / p is a unit; fold its logarithm in.
            QuadElem u = pi * pi / F_.embed(P.p);
            double ratio = std::log(std::abs(quad_approx(u))) / std::log(std::abs(quad_approx(unit_)));
            long k = std::lround(ratio);
            if (k != 0) r["log|" + unit_.to_string() + "|"] = make_rational(k, 2);
            return r;
        }
        Rational s = P.index == 1 ? Rational(1, 2) : Rational(-1, 2);
        return {{lp, Rational(1, 2)}, {"L_" + P.p.get_str(), s}};
    }

    QuadElem find_generator(const QuadFinite& P) const {
        Integer target = ipow(P.p, static_cast<unsigned long>(P.f));
        for (long r = 1; r <= 200; ++r)
            for (long x = -r; x <= r; ++x)
                for (long y = -r; y <= r; ++y) {
                    if (std::max(std::labs(x), std::labs(y)) != r) continue;
                    QuadElem c(F_.d, x, y);
                    if (abs(c.norm()) != Rational(target)) continue;
                    if (F_.ideal_valuation(P, c) == 1) return c;
                }
        throw DomainError("no small generator found above " + P.p.get_str());
    }

    const QuadField& F_;
    QuadElem unit_;
    std::vector<std::pair<QuadFinite, QuadElem>> gens_;
};

}  // namespace detail

// Left kernel {w : sum_v w_v v(a) = 0 for all test elements a} over the places
// above p <= bound and the archimedean places, for d in {-1, 2} (class number
// one, known unit groups).
inline UniquenessReport uniqueness_witness(long d, long bound) {
    if (d != -1 && d != 2) throw DomainError("uniqueness witness is only available for d = -1 and d = 2");
    if (bound < 2) throw DomainError("prime bound must be at least 2");
    QuadField F(d);
    detail::QuadLogBasis basis(F, bound);
    UniquenessReport rep;
    rep.d = d;
    rep.bound = bound;
    for (auto& [P, pi] : basis.generators()) rep.places.push_back(P);
    for (auto& v : F.arch_places()) rep.places.push_back(v);
    rep.elements.push_back(basis.unit());
    for (auto& [P, pi] : basis.generators()) rep.elements.push_back(pi);

    std::map<std::string, std::size_t> sym_index;
    std::vector<std::vector<std::map<std::string, Rational>>> coords;  // [element][place]
    for (auto& a : rep.elements) {
        coords.emplace_back();
        for (auto& v : rep.places) {
            LogReal x = F.eval(v, a);
            auto c = basis.coordinates(x);
            LogReal back;
            for (auto& [s, q] : c) back += basis.symbol_value(s) * q;
            if (back != x) throw DomainError("symbolic decomposition does not reproduce " + x.to_string());
            for (auto& [s, q] : c) sym_index.emplace(s, 0);
            coords.back().push_back(std::move(c));
        }
    }
    std::size_t k = 0;
    for (auto& [s, i] : sym_index) {
        i = k++;
        rep.symbols.push_back(s);
    }

    std::size_t n = rep.places.size();
    std::vector<std::vector<Rational>> A;
    for (auto& per_place : coords)
        for (auto& [s, i] : sym_index) {
            std::vector<Rational> row(n, Rational(0));
            for (std::size_t j = 0; j < n; ++j) {
                auto it = per_place[j].find(s);
                if (it != per_place[j].end()) row[j] = it->second;
            }
            A.push_back(std::move(row));
        }
    auto [rank, kernel] = detail::rational_kernel(A, n);
    rep.rank = rank;
    rep.kernel_dimension = kernel.size();

    rep.product_formula_in_kernel = true;
    for (auto& a : rep.elements) {
        LogReal s;
        for (auto& v : rep.places) s += F.eval(v, a);
        if (s.sign() != 0) rep.product_formula_in_kernel = false;
    }
    if (kernel.size() == 1) {
        int sg = 0;
        bool same = true;
        for (auto& x : kernel[0]) {
            int t = sgn(x);
            if (t == 0) continue;
            if (sg == 0) sg = t;
            else if (t != sg) same = false;
        }
        rep.positive_direction = same && sg != 0;
    }
    return rep;
}

}  // namespace gvf
