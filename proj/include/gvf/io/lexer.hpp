#pragma once

#include "gvf/arith/integer.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace gvf {

struct Token {
    enum class Kind { Number, Ident, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t pos = 0;  // 1-based column
};

// Shared tokenizer for tropical terms and field elements.  Numbers are
// unsigned decimal integers; signs and fraction bars are symbols.
class Lexer {
public:
    explicit Lexer(const std::string& s) {
        std::size_t i = 0;
        auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        while (i < s.size()) {
            char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])))
                    throw ParseError(i + 1, "expected an operator after a number");
                toks_.push_back({Token::Kind::Number, s.substr(start, i - start), start + 1});
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (i < s.size() && is_ident(s[i])) ++i;
                toks_.push_back({Token::Kind::Ident, s.substr(start, i - start), start + 1});
            } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
                ++i;
                toks_.push_back({Token::Kind::Symbol, std::string(1, c), start + 1});
            } else {
                throw ParseError(start + 1, std::string("unexpected character '") + c + "'");
            }
        }
        toks_.push_back({Token::Kind::End, "", s.size() + 1});
    }

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(k_ + ahead, toks_.size() - 1)];
    }
    Token next() {
        Token t = peek();
        if (k_ + 1 < toks_.size()) ++k_;
        return t;
    }
    bool is(char c, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Symbol && t.text[0] == c;
    }
    bool accept(char c) {
        if (!is(c)) return false;
        next();
        return true;
    }
    void expect(char c, const std::string& what) {
        if (!accept(c)) fail("expected " + what);
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(peek().pos, what); }

    Integer integer() {
        if (peek().kind != Token::Kind::Number) fail("expected a number");
        return Integer(next().text);
    }
    // integer ['/' integer]
    Rational rational() {
        Integer n = integer();
        if (!(is('/') && peek(1).kind == Token::Kind::Number)) return Rational(n);
        next();
        std::size_t at = peek().pos;
        Integer d = integer();
        if (d == 0) throw ParseError(at, "zero denominator");
        return make_rational(n, d);
    }

private:
    std::vector<Token> toks_;
    std::size_t k_ = 0;
};

}  // namespace gvf
