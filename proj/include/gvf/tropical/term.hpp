#pragma once

#include "gvf/arith/integer.hpp"
#include "gvf/arith/value.hpp"
#include "gvf/io/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace gvf {

// Q-tropical term: Var | Scale | Sum | Max | Min.  The empty Sum is the constant 0.
struct Term {
    enum class Kind { Var, Scale, Sum, Max, Min };
    Kind kind = Kind::Sum;
    int var = 0;  // 1-based, for Var
    Rational coeff;  // for Scale
    std::vector<Term> children;

    static Term variable(int k) {
        Term t;
        t.kind = Kind::Var;
        t.var = k;
        return t;
    }
    static Term zero() { return Term{}; }
    static Term scale(Rational q, Term child) {
        Term t;
        t.kind = Kind::Scale;
        t.coeff = std::move(q);
        t.children.push_back(std::move(child));
        return t;
    }
    static Term node(Kind k, std::vector<Term> cs) {
        Term t;
        t.kind = k;
        t.children = std::move(cs);
        return t;
    }
    static Term sum(std::vector<Term> cs) { return node(Kind::Sum, std::move(cs)); }
    static Term max(std::vector<Term> cs) { return node(Kind::Max, std::move(cs)); }
    static Term min(std::vector<Term> cs) { return node(Kind::Min, std::move(cs)); }

    bool operator==(const Term& o) const {
        return kind == o.kind && var == o.var && coeff == o.coeff && children == o.children;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }

    int arity() const {
        int a = kind == Kind::Var ? var : 0;
        for (auto& c : children) a = std::max(a, c.arity());
        return a;
    }

    // Evaluates the term on values of any ordered Q-vector space type.
    template <class V>
    V eval(const std::vector<V>& x) const {
        switch (kind) {
            case Kind::Var:
                if (var < 1 || static_cast<std::size_t>(var) > x.size())
                    throw DomainError("term uses x" + std::to_string(var) + " but only " +
                                      std::to_string(x.size()) + " values were given");
                return x[var - 1];
            case Kind::Scale: return children[0].eval(x) * coeff;
            case Kind::Sum: {
                V s{};
                for (auto& c : children) s = s + c.eval(x);
                return s;
            }
            case Kind::Max:
            case Kind::Min: {
                V r = children[0].eval(x);
                for (std::size_t i = 1; i < children.size(); ++i)
                    r = kind == Kind::Max ? vmax(r, children[i].eval(x)) : vmin(r, children[i].eval(x));
                return r;
            }
        }
        throw DomainError("corrupt term");
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Var: return "x" + std::to_string(var);
            case Kind::Scale: {
                const Term& c = children[0];
                bool wrap = c.kind == Kind::Sum && c.children.size() > 1;
                return gvf::to_string(coeff) + "*" + (wrap ? "(" + c.to_string() + ")" : c.to_string());
            }
            case Kind::Sum: {
                if (children.empty()) return "0";
                std::string s;
                for (std::size_t i = 0; i < children.size(); ++i) {
                    if (i) s += " + ";
                    const Term& c = children[i];
                    bool wrap = c.kind == Kind::Sum && c.children.size() != 0;
                    s += wrap ? "(" + c.to_string() + ")" : c.to_string();
                }
                return s;
            }
            case Kind::Max:
            case Kind::Min: {
                std::string s = kind == Kind::Max ? "max(" : "min(";
                for (std::size_t i = 0; i < children.size(); ++i) s += (i ? ", " : "") + children[i].to_string();
                return s + ")";
            }
        }
        return "";
    }
};

// A term together with the number of variables it is read against.
struct TropicalPoly {
    Term root;
    int arity = 0;

    std::string to_string() const { return root.to_string(); }
    bool operator==(const TropicalPoly& o) const { return root == o.root && arity == o.arity; }
    template <class V>
    V eval(const std::vector<V>& x) const {
        return root.eval(x);
    }
};

namespace detail {

class TermParser {
public:
    explicit TermParser(const std::string& s) : lx_(s) {}

    Term parse() {
        Term t = expr();
        if (!lx_.at_end()) lx_.fail("expected end of input, '+', '-' or ','");
        return t;
    }

private:
    Term expr() {
        std::vector<Term> parts{unary()};
        while (true) {
            if (lx_.accept('+')) parts.push_back(unary());
            else if (lx_.accept('-')) parts.push_back(Term::scale(-1, unary()));
            else break;
        }
        if (parts.size() == 1) return parts[0];
        return Term::sum(std::move(parts));
    }

    Term unary() {
        if (lx_.at_end()) lx_.fail("expected a term");
        bool neg_number = lx_.is('-') && lx_.peek(1).kind == Token::Kind::Number;
        if (lx_.is('-') && !neg_number) {
            lx_.next();
            return Term::scale(-1, unary());
        }
        if (neg_number || lx_.peek().kind == Token::Kind::Number) {
            std::size_t at = lx_.peek().pos;
            if (neg_number) lx_.next();
            Rational q = lx_.rational();
            if (neg_number) q = -q;
            if (lx_.accept('*')) return Term::scale(q, unary());
            if (q != 0) throw ParseError(at, "nonzero constants are not terms; expected '*' after a coefficient");
            return Term::zero();
        }
        return primary();
    }

    Term primary() {
        if (lx_.accept('(')) {
            Term t = expr();
            lx_.expect(')', "')'");
            return t;
        }
        const Token& tok = lx_.peek();
        if (tok.kind != Token::Kind::Ident) lx_.fail("expected a term");
        if (tok.text == "max" || tok.text == "min") {
            bool is_max = tok.text == "max";
            lx_.next();
            lx_.expect('(', "'(' after " + std::string(is_max ? "max" : "min"));
            std::vector<Term> args{expr()};
            while (lx_.accept(',')) args.push_back(expr());
            lx_.expect(')', "',' or ')'");
            return is_max ? Term::max(std::move(args)) : Term::min(std::move(args));
        }
        const std::string& w = tok.text;
        if (w[0] == 'x' && w.size() > 1 && std::all_of(w.begin() + 1, w.end(), ::isdigit)) {
            if (w.size() > 9) lx_.fail("variable index too large");
            long k = std::stol(w.substr(1));
            if (k < 1) throw ParseError(tok.pos + 1, "variable indices start at 1");
            lx_.next();
            return Term::variable(static_cast<int>(k));
        }
        if (w == "x") throw ParseError(tok.pos + 1, "expected a variable index after 'x'");
        lx_.fail("unknown variable name '" + w + "'");
    }

    Lexer lx_;
};

}  // namespace detail

// Grammar (whitespace insignificant):
//   expr    := unary (('+' | '-') unary)*
//   unary   := '-' unary | rational '*' unary | '0' | primary
//   primary := 'x' index | 'max(' expr {',' expr} ')' | 'min(' expr {',' expr} ')' | '(' expr ')'
//   rational := ['-'] digits ['/' digits]
// Tokens come from the shared Lexer.
inline TropicalPoly parse_tropical(const std::string& text) {
    Term t = detail::TermParser(text).parse();
    int a = t.arity();
    if (a == 0) throw ParseError(1, "a term needs at least one variable");
    return {t, a};
}

}  // namespace gvf
