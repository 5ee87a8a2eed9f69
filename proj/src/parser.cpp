#include "kr/parser.hpp"

#include <cctype>
#include <sstream>

namespace kr {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') {
                ++line;
                col = 1;
                ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++col;
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    void advance() {
        ++col;
        ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

    std::string read_digits() {
        std::string out;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            out += text[pos];
            advance();
        }
        if (out.empty()) fail("expected digits");
        return out;
    }

    std::string read_ident() {
        std::string out;
        out += text[pos];
        advance();
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                out += c;
                advance();
            } else {
                break;
            }
        }
        return out;
    }
};

struct Parser {
    Lexer lex;
    const VarTablePtr& table;

    Parser(const std::string& text, const VarTablePtr& t) : lex(text), table(t) {}

    // rational ::= integer ('/' positive-integer)?, integer ::= '-'? digits
    Rational parse_rational_token() {
        bool neg = false;
        if (lex.peek() == '-') {
            neg = true;
            lex.advance();
            if (!std::isdigit(static_cast<unsigned char>(lex.peek()))) lex.fail("expected digits after '-'");
        }
        std::string num = lex.read_digits();
        std::string den;
        if (lex.peek() == '/') {
            lex.advance();
            if (!std::isdigit(static_cast<unsigned char>(lex.peek()))) lex.fail("expected digits after '/'");
            den = lex.read_digits();
        }
        Rational q(num + (den.empty() ? "" : "/" + den));
        if (q.get_den() == 0) lex.fail("zero denominator");
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }

    unsigned parse_exponent() {
        int l = lex.line, c = lex.col;
        if (!std::isdigit(static_cast<unsigned char>(lex.peek()))) lex.fail("expected exponent");
        std::string digits = lex.read_digits();
        if (digits.size() > 4) throw ParseError("exponent too large", l, c);
        unsigned e = unsigned(std::stoul(digits));
        if (e == 0) throw ParseError("exponent must be positive", l, c);
        return e;
    }

    Polynomial parse_factor() {
        char c = lex.peek();
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(table, parse_rational_token());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            int l = lex.line, cc = lex.col;
            std::string name = lex.read_ident();
            auto idx = table->index_of(name);
            if (!idx) throw ParseError("unknown variable: " + name, l, cc);
            Polynomial v = Polynomial::variable(table, *idx);
            if (lex.peek() == '^') {
                lex.advance();
                return v.pow(parse_exponent());
            }
            return v;
        }
        if (c == '\0') lex.fail("unexpected end of input");
        lex.fail(std::string("unexpected character '") + c + "'");
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (lex.peek() == '*') {
            lex.advance();
            p *= parse_factor();
        }
        return p;
    }

    Polynomial parse_expression() {
        bool neg = false;
        char c = lex.peek();
        if (c == '+' || c == '-') {
            // tolerated sign before the first term; "-3*z" still parses the
            // '-' as part of the rational because parse_factor sees it first
            std::size_t save_pos = lex.pos;
            int save_line = lex.line, save_col = lex.col;
            lex.advance();
            char n = lex.peek();
            if (c == '-' && std::isdigit(static_cast<unsigned char>(n))) {
                lex.pos = save_pos;
                lex.line = save_line;
                lex.col = save_col;
            } else {
                neg = (c == '-');
            }
        }
        Polynomial p = parse_term();
        if (neg) p = -p;
        while (true) {
            char op = lex.peek();
            if (op != '+' && op != '-') break;
            // '-' followed by a digit belongs to the operator, not the
            // literal: "a - 3" subtracts 3
            lex.advance();
            Polynomial q = parse_term();
            if (op == '+')
                p += q;
            else
                p -= q;
        }
        return p;
    }

    Polynomial run() {
        if (lex.eof()) lex.fail("empty input");
        Polynomial p = parse_expression();
        if (!lex.eof()) lex.fail("unexpected trailing input");
        return p;
    }
};

void print_monomial(std::ostringstream& out, const Monomial& m, const VarTable& table, bool lead_star) {
    bool first = !lead_star;
    for (std::size_t v = 0; v < table.size(); ++v) {
        unsigned e = m[v];
        if (e == 0) continue;
        if (!first) out << '*';
        first = false;
        out << table.name(v);
        if (e > 1) out << '^' << e;
    }
}

} // namespace

Polynomial parse_polynomial(const std::string& text, const VarTablePtr& table) {
    if (!table) throw DomainError("parse without variable table");
    return Parser(text, table).run();
}

std::string to_text(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    const VarTable& table = *p.table();
    bool first = true;
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const Monomial& m = it->first;
        Rational c = it->second;
        if (first) {
            first = false;
            if (m.is_one()) {
                out << to_string(c);
                continue;
            }
            if (c == 1) {
                print_monomial(out, m, table, false);
            } else {
                out << to_string(c);
                print_monomial(out, m, table, true);
            }
            continue;
        }
        bool neg = c < 0;
        out << (neg ? " - " : " + ");
        Rational a = neg ? Rational(-c) : c;
        if (m.is_one()) {
            out << to_string(a);
        } else if (a == 1) {
            print_monomial(out, m, table, false);
        } else {
            out << to_string(a);
            print_monomial(out, m, table, true);
        }
    }
    return out.str();
}

} // namespace kr
