#pragma once

#include "gvf/io/lexer.hpp"
#include "gvf/places/field_fpt.hpp"
#include "gvf/places/field_q.hpp"
#include "gvf/places/field_quad.hpp"
#include "gvf/places/field_qz.hpp"

#include <string>
#include <vector>

namespace gvf {

// Element grammar, shared by all fields (whitespace insignificant):
//   expr    := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' ['-'] digits]
//   primary := digits | name | 'sqrt' '(' ['-'] digits ')' | '(' expr ')'
// Names: 't' in F_p(t), 'z' in Q(z).  sqrt(d) only in Q(sqrt(d)).

namespace detail {

inline Rational constant_in(const QField&, const Rational& q, std::size_t) { return q; }
inline FpRatio constant_in(const FptField& F, const Rational& q, std::size_t pos) {
    Integer p(static_cast<unsigned long>(F.p));
    Integer n = q.get_num() % p, d = q.get_den() % p;
    if (n < 0) n += p;
    if (d == 0) throw ParseError(pos, "denominator divisible by " + p.get_str() + " in " + F.name());
    return F.from_int(n.get_si()) / F.from_int(d.get_si());
}
inline QuadElem constant_in(const QuadField& F, const Rational& q, std::size_t) { return F.embed(q); }
inline QzRatio constant_in(const QzField&, const Rational& q, std::size_t) { return QzRatio::constant(q); }

[[noreturn]] inline void foreign_name(const std::string& field, const std::string& name, std::size_t pos) {
    std::string owner = name == "t" ? "F_p(t)" : name == "z" ? "Q(z)" : "";
    if (owner.empty()) throw ParseError(pos, "unknown name '" + name + "' in " + field);
    throw ParseError(pos, "'" + name + "' belongs to " + owner + ", but the field is " + field);
}

inline Rational name_in(const QField& F, const std::string& n, std::size_t pos) { foreign_name(F.name(), n, pos); }
inline FpRatio name_in(const FptField& F, const std::string& n, std::size_t pos) {
    if (n == "t") return F.t();
    foreign_name(F.name(), n, pos);
}
inline QuadElem name_in(const QuadField& F, const std::string& n, std::size_t pos) { foreign_name(F.name(), n, pos); }
inline QzRatio name_in(const QzField& F, const std::string& n, std::size_t pos) {
    if (n == "z") return F.z();
    foreign_name(F.name(), n, pos);
}

template <class Field>
typename Field::Element sqrt_in(const Field& F, long d, std::size_t pos) {
    throw ParseError(pos, "sqrt(" + std::to_string(d) + ") belongs to Q(sqrt(" + std::to_string(d) +
                              ")), but the field is " + F.name());
}
inline QuadElem sqrt_in(const QuadField& F, long d, std::size_t pos) {
    if (d != F.d)
        throw ParseError(pos, "sqrt(" + std::to_string(d) + ") belongs to Q(sqrt(" + std::to_string(d) +
                                  ")), but the field is " + F.name());
    return F.sqrt_d();
}

template <class Field>
class ElementParser {
public:
    using E = typename Field::Element;
    ElementParser(const Field& F, const std::string& s) : F_(F), lx_(s) {}

    E parse() {
        if (lx_.at_end()) lx_.fail("empty element");
        E x = expr();
        if (!lx_.at_end()) lx_.fail("expected end of input or an operator");
        return x;
    }

private:
    E expr() {
        E x = product();
        while (true) {
            if (lx_.accept('+')) x = x + product();
            else if (lx_.accept('-')) x = x - product();
            else return x;
        }
    }
    E product() {
        E x = unary();
        while (true) {
            if (lx_.accept('*')) {
                x = x * unary();
            } else if (lx_.is('/')) {
                std::size_t at = lx_.next().pos;
                E y = unary();
                if (F_.is_zero(y)) throw ParseError(at, "division by zero");
                x = x / y;
            } else {
                return x;
            }
        }
    }
    E unary() {
        if (lx_.accept('-')) return -unary();
        return power();
    }
    E power() {
        std::size_t at = lx_.peek().pos;
        E x = primary();
        if (!lx_.accept('^')) return x;
        bool neg = lx_.accept('-');
        std::size_t epos = lx_.peek().pos;
        Integer e = lx_.integer();
        if (e > 10000) throw ParseError(epos, "exponent too large");
        long k = neg ? -e.get_si() : e.get_si();
        if (k < 0 && F_.is_zero(x)) throw ParseError(at, "negative power of zero");
        return F_.power(x, k);
    }
    E primary() {
        const Token& t = lx_.peek();
        if (lx_.accept('(')) {
            E x = expr();
            lx_.expect(')', "')'");
            return x;
        }
        if (t.kind == Token::Kind::Number) {
            std::size_t at = t.pos;
            return constant_in(F_, Rational(lx_.integer()), at);
        }
        if (t.kind == Token::Kind::Ident) {
            Token id = lx_.next();
            if (id.text == "sqrt") {
                lx_.expect('(', "'(' after sqrt");
                bool neg = lx_.accept('-');
                std::size_t dpos = lx_.peek().pos;
                Integer d = lx_.integer();
                if (d > 1000000000) throw ParseError(dpos, "radicand too large");
                lx_.expect(')', "')'");
                return sqrt_in(F_, neg ? -d.get_si() : d.get_si(), id.pos);
            }
            return name_in(F_, id.text, id.pos);
        }
        lx_.fail("expected a number, a name or '('");
    }

    const Field& F_;
    Lexer lx_;
};

}  // namespace detail

template <class Field>
typename Field::Element parse_element(const Field& F, const std::string& s) {
    return detail::ElementParser<Field>(F, s).parse();
}

template <class Field>
std::vector<typename Field::Element> parse_elements(const Field& F, const std::vector<std::string>& xs) {
    std::vector<typename Field::Element> out;
    for (auto& s : xs) out.push_back(parse_element(F, s));
    return out;
}

}  // namespace gvf
