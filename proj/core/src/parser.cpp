#include "ensys/parser.hpp"

#include "ensys/errors.hpp"

#include <cctype>
#include <limits>
#include <set>

namespace ensys {

namespace {

constexpr std::uint32_t kMaxExponent = 1u << 16;

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char ch = static_cast<unsigned char>(text[i]);
        std::size_t col = i + 1;
        if (std::isspace(ch)) {
            ++i;
        } else if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Int, std::string(text.substr(i, j - i)), col});
            i = j;
        } else if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), col});
            i = j;
        } else {
            Tok k;
            switch (ch) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '^': k = Tok::Caret; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                default:
                    throw ParseError(std::string("unexpected character '") + text[i] + "'", 0, col);
            }
            out.push_back({k, std::string(1, text[i]), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", text.size() + 1});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<std::string> variables)
        : tokens_(std::move(tokens)), variables_(std::move(variables)) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return p;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, 0, peek().column);
    }

    Polynomial expr() {
        Polynomial acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            Polynomial rhs = term();
            if (minus)
                acc -= rhs;
            else
                acc += rhs;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (peek().kind == Tok::Star) {
            next();
            acc *= unary();
        }
        return acc;
    }

    Polynomial unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return -unary();
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (peek().kind != Tok::Caret) return base;
        next();
        if (peek().kind != Tok::Int) fail("exponent must be a non-negative integer literal");
        const Token& t = next();
        BigInt e(t.text);
        if (e > kMaxExponent) throw ParseError("exponent too large", 0, t.column);
        if (peek().kind == Tok::Caret) fail("chained exponents are not supported; use parentheses");
        return base.pow(static_cast<std::uint32_t>(e.get_ui()));
    }

    Polynomial primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int:
                next();
                return Polynomial::constant(BigInt(t.text), variables_);
            case Tok::Ident:
                next();
                return Polynomial::variable(t.text, variables_);
            case Tok::LParen: {
                next();
                Polynomial inner = expr();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                next();
                return inner;
            }
            case Tok::End:
                fail("unexpected end of expression");
            default:
                fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> tokens_;
    std::vector<std::string> variables_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
    auto tokens = tokenize(text);
    std::set<std::string> names;
    for (const auto& t : tokens)
        if (t.kind == Tok::Ident) names.insert(t.text);
    return Parser(std::move(tokens), {names.begin(), names.end()}).parse();
}

}  // namespace ensys
