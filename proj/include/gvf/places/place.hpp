#pragma once

#include "gvf/arith/fp_poly.hpp"
#include "gvf/arith/integer.hpp"
#include "gvf/arith/poly.hpp"

#include <string>
#include <tuple>
#include <variant>

namespace gvf {

enum class SplitType { Split, Inert, Ramified };

inline std::string to_string(SplitType t) {
    switch (t) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        default: return "ramified";
    }
}

struct QFinite {
    Integer p;
    bool operator<(const QFinite& o) const { return p < o.p; }
    bool operator==(const QFinite& o) const { return p == o.p; }
};

struct QArch {
    bool operator<(const QArch&) const { return false; }
    bool operator==(const QArch&) const { return true; }
};

// Finite place of F_p(t) given by a monic irreducible polynomial.
struct FpFinite {
    FpPoly pi;
    bool operator<(const FpFinite& o) const { return pi < o.pi; }
    bool operator==(const FpFinite& o) const { return pi == o.pi; }
};

// The place at infinity of F_p(t), v(f) = -deg f.
struct FpDegree {
    bool operator<(const FpDegree&) const { return false; }
    bool operator==(const FpDegree&) const { return true; }
};

// Prime of Q(sqrt(d)) above p.  For split primes, index 1 is the place whose
// root of the minimal polynomial of the integral generator is the smaller one.
struct QuadFinite {
    long d;
    Integer p;
    SplitType type;
    int e, f;
    Integer root;
    int index;
    auto key() const { return std::tie(d, p, index); }
    bool operator<(const QuadFinite& o) const { return key() < o.key(); }
    bool operator==(const QuadFinite& o) const { return key() == o.key(); }
};

// Archimedean place; for d > 0 embedding 1 sends sqrt(d) to +sqrt(d), 2 to -sqrt(d).
struct QuadArch {
    long d;
    int embedding;
    bool operator<(const QuadArch& o) const { return std::tie(d, embedding) < std::tie(o.d, o.embedding); }
    bool operator==(const QuadArch& o) const { return d == o.d && embedding == o.embedding; }
};

struct QzGauss {
    Integer p;
    bool operator<(const QzGauss& o) const { return p < o.p; }
    bool operator==(const QzGauss& o) const { return p == o.p; }
};

struct QzArch {
    bool operator<(const QzArch&) const { return false; }
    bool operator==(const QzArch&) const { return true; }
};

// Closed point of the projective line over Q: a primitive irreducible integer
// polynomial, or the point at infinity.
struct QzPoint {
    ZPoly minpoly;
    bool infinity = false;
    bool operator<(const QzPoint& o) const {
        if (infinity != o.infinity) return infinity < o.infinity;
        return minpoly < o.minpoly;
    }
    bool operator==(const QzPoint& o) const { return infinity == o.infinity && minpoly == o.minpoly; }
};

using Place = std::variant<QFinite, QArch, FpFinite, FpDegree, QuadFinite, QuadArch, QzGauss, QzArch, QzPoint>;

inline bool is_archimedean(const Place& v) {
    return std::holds_alternative<QArch>(v) || std::holds_alternative<QuadArch>(v) || std::holds_alternative<QzArch>(v);
}

inline std::string to_string(const Place& v) {
    struct Visitor {
        std::string operator()(const QFinite& x) const { return "QFinite(" + x.p.get_str() + ")"; }
        std::string operator()(const QArch&) const { return "QArch"; }
        std::string operator()(const FpFinite& x) const { return "FpFinite(" + x.pi.to_string() + ")"; }
        std::string operator()(const FpDegree&) const { return "FpDegree"; }
        std::string operator()(const QuadFinite& x) const {
            std::string s = "QuadFinite(" + x.p.get_str() + ", " + gvf::to_string(x.type);
            if (x.type == SplitType::Split) s += std::to_string(x.index);
            return s + ", e=" + std::to_string(x.e) + ", f=" + std::to_string(x.f) + ")";
        }
        std::string operator()(const QuadArch& x) const { return "QuadArch(" + std::to_string(x.embedding) + ")"; }
        std::string operator()(const QzGauss& x) const { return "QzGauss(" + x.p.get_str() + ")"; }
        std::string operator()(const QzArch&) const { return "QzArch"; }
        std::string operator()(const QzPoint& x) const {
            return x.infinity ? "QzPoint(inf)" : "QzPoint(" + x.minpoly.to_string('z') + ")";
        }
    };
    return std::visit(Visitor{}, v);
}

// A place together with its normalization factor.
struct Valuation {
    Place place;
    Rational scale = 1;
};

}  // namespace gvf
