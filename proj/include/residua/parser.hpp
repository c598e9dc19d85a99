#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "residua/error.hpp"
#include "residua/polynomial.hpp"

namespace residua {

/// Recursive-descent parser for the polynomial grammar:
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := primary ('^' INT)?
///   primary := INT ('/' INT)? | 'i' | VAR | '(' expr ')'
/// Variables come from the ring (z1..zN, optionally zb1..zbN); whitespace
/// is insignificant; errors carry 1-based line/column positions.
class poly_parser {
public:
    explicit poly_parser(ring_ptr ring) : ring_(std::move(ring)) {}

    polynomial parse_polynomial(const std::string& text) {
        lex(text);
        pos_ = 0;
        polynomial p = parse_expr();
        expect_end();
        return p;
    }

    /// Bracketed comma-separated list: "[p1, p2, ...]".
    std::vector<polynomial> parse_section_list(const std::string& text) {
        lex(text);
        pos_ = 0;
        expect(tok::lbracket, "expected '['");
        std::vector<polynomial> out;
        if (peek().kind != tok::rbracket) {
            out.push_back(parse_expr());
            while (peek().kind == tok::comma) {
                ++pos_;
                out.push_back(parse_expr());
            }
        }
        expect(tok::rbracket, "expected ']' or ','");
        expect_end();
        return out;
    }

private:
    enum class tok { integer, ident, plus, minus, star, caret, slash, lparen, rparen,
                     lbracket, rbracket, comma, end };

    struct token {
        tok kind;
        std::string text;
        int line;
        int col;
    };

    void lex(const std::string& s) {
        toks_.clear();
        int line = 1, col = 1;
        std::size_t i = 0;
        auto push = [&](tok k, std::string t, int l, int c) {
            toks_.push_back({k, std::move(t), l, c});
        };
        while (i < s.size()) {
            char ch = s[i];
            if (ch == '\n') {
                ++line;
                col = 1;
                ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++col;
                ++i;
                continue;
            }
            int tl = line, tc = col;
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::string num;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    num += s[i++];
                    ++col;
                }
                push(tok::integer, num, tl, tc);
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(ch))) {
                std::string id;
                while (i < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
                    id += s[i++];
                    ++col;
                }
                push(tok::ident, id, tl, tc);
                continue;
            }
            tok k;
            switch (ch) {
                case '+': k = tok::plus; break;
                case '-': k = tok::minus; break;
                case '*': k = tok::star; break;
                case '^': k = tok::caret; break;
                case '/': k = tok::slash; break;
                case '(': k = tok::lparen; break;
                case ')': k = tok::rparen; break;
                case '[': k = tok::lbracket; break;
                case ']': k = tok::rbracket; break;
                case ',': k = tok::comma; break;
                default:
                    throw error(errc::parse_error,
                                std::string("unexpected character '") + ch + "'", tl, tc);
            }
            push(k, std::string(1, ch), tl, tc);
            ++i;
            ++col;
        }
        toks_.push_back({tok::end, "", line, col});
    }

    const token& peek() const { return toks_[pos_]; }

    const token& expect(tok k, const char* msg) {
        if (toks_[pos_].kind != k)
            throw error(errc::parse_error, msg, toks_[pos_].line, toks_[pos_].col);
        return toks_[pos_++];
    }

    void expect_end() {
        if (peek().kind != tok::end)
            throw error(errc::parse_error, "unexpected trailing input '" + peek().text + "'",
                        peek().line, peek().col);
    }

    polynomial parse_expr() {
        if (++depth_ > 256)
            throw error(errc::parse_error, "expression nesting too deep", peek().line,
                        peek().col);
        polynomial p = parse_expr_inner();
        --depth_;
        return p;
    }

    polynomial parse_expr_inner() {
        bool neg = false;
        if (peek().kind == tok::plus) {
            ++pos_;
        } else if (peek().kind == tok::minus) {
            neg = true;
            ++pos_;
        }
        polynomial acc = parse_term();
        if (neg) acc = -acc;
        while (peek().kind == tok::plus || peek().kind == tok::minus) {
            bool sub = peek().kind == tok::minus;
            ++pos_;
            polynomial t = parse_term();
            if (sub)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    polynomial parse_term() {
        polynomial acc = parse_factor();
        while (peek().kind == tok::star) {
            ++pos_;
            acc = acc * parse_factor();
        }
        return acc;
    }

    polynomial parse_factor() {
        polynomial base = parse_primary();
        if (peek().kind == tok::caret) {
            ++pos_;
            const token& t = expect(tok::integer, "expected integer exponent after '^'");
            unsigned long e = parse_uint(t, 4096);
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    polynomial parse_primary() {
        const token& t = peek();
        switch (t.kind) {
            case tok::integer: {
                ++pos_;
                mpz_class num(t.text);
                mpz_class den(1);
                if (peek().kind == tok::slash) {
                    ++pos_;
                    const token& d = expect(tok::integer, "expected integer denominator");
                    den = mpz_class(d.text);
                    if (den == 0)
                        throw error(errc::parse_error, "zero denominator", d.line, d.col);
                }
                mpq_class q(num, den);
                q.canonicalize();
                return polynomial::constant(ring_, gaussian_rational(std::move(q)));
            }
            case tok::ident: {
                ++pos_;
                if (t.text == "i")
                    return polynomial::constant(ring_, gaussian_rational::i());
                int idx = ring_->var_index(t.text);
                if (idx < 0)
                    throw error(errc::parse_error, "unknown variable '" + t.text + "'", t.line,
                                t.col);
                return polynomial::variable(ring_, static_cast<std::size_t>(idx));
            }
            case tok::lparen: {
                ++pos_;
                polynomial inner = parse_expr();
                expect(tok::rparen, "expected ')'");
                return inner;
            }
            default:
                throw error(errc::parse_error, "expected operand, got '" + t.text + "'", t.line,
                            t.col);
        }
    }

    static unsigned long parse_uint(const token& t, unsigned long cap) {
        mpz_class v(t.text);
        if (v < 0 || v > static_cast<long>(cap))
            throw error(errc::parse_error, "exponent out of range", t.line, t.col);
        return v.get_ui();
    }

    ring_ptr ring_;
    std::vector<token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

inline polynomial parse_polynomial(const ring_ptr& ring, const std::string& text) {
    return poly_parser(ring).parse_polynomial(text);
}

inline std::vector<polynomial> parse_section_list(const ring_ptr& ring, const std::string& text) {
    return poly_parser(ring).parse_section_list(text);
}

} // namespace residua
