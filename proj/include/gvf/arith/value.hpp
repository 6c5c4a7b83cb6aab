#pragma once

#include "gvf/arith/integer.hpp"
#include "gvf/arith/interval.hpp"
#include "gvf/arith/logreal.hpp"

#include <string>

namespace gvf {

// Uniform helpers over the three value types (Rational, LogReal, Interval).
inline Rational vmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational vmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline LogReal vmax(const LogReal& a, const LogReal& b) { return max(a, b); }
inline LogReal vmin(const LogReal& a, const LogReal& b) { return min(a, b); }
inline Interval vmax(const Interval& a, const Interval& b) { return max(a, b); }
inline Interval vmin(const Interval& a, const Interval& b) { return min(a, b); }

inline int vsign(const Rational& a) { return sgn(a); }
inline int vsign(const LogReal& a) { return a.sign(); }

inline std::string vstr(const Rational& a) { return to_string(a); }
inline std::string vstr(const LogReal& a) { return a.to_string(); }
inline std::string vstr(const Interval& a) { return a.to_string(); }

inline double vapprox(const Rational& a) { return a.get_d(); }
inline double vapprox(const LogReal& a) { return a.approx(); }
inline double vapprox(const Interval& a) { return a.mid(); }

// A value or one of the two infinities.
template <class V>
struct Extended {
    enum class Kind { Finite, PlusInf, MinusInf };
    Kind kind = Kind::Finite;
    V value{};

    Extended() = default;
    Extended(V v) : value(std::move(v)) {}
    static Extended plus_inf() { Extended e; e.kind = Kind::PlusInf; return e; }
    static Extended minus_inf() { Extended e; e.kind = Kind::MinusInf; return e; }

    bool finite() const { return kind == Kind::Finite; }
    bool is_minus_inf() const { return kind == Kind::MinusInf; }
    bool is_plus_inf() const { return kind == Kind::PlusInf; }

    std::string to_string() const {
        if (kind == Kind::PlusInf) return "+inf";
        if (kind == Kind::MinusInf) return "-inf";
        return vstr(value);
    }
};

template <class V>
bool operator==(const Extended<V>& a, const Extended<V>& b) {
    if (a.kind != b.kind) return false;
    return !a.finite() || a.value == b.value;
}

}  // namespace gvf
