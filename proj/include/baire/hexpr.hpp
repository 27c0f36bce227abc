#ifndef BAIRE_HEXPR_HPP
#define BAIRE_HEXPR_HPP

/**
 * @file hexpr.hpp
 *
 * The expression language for cost terms h(n):
 *
 *     expr   := term (('+' | '-') term)*
 *     term   := factor (('*' | '/') factor)*
 *     factor := primary ('^' integer)*
 *     primary:= rational | 'n' | 'log2' '(' expr ')' | '(' expr ')'
 *
 * Rationals are integers or decimals; a quotient of two literals is folded
 * into a single literal so that printing and re-parsing is the identity.
 */

#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "baire/letter.hpp"
#include "baire/numerics.hpp"

namespace baire {

class SyntaxError : public std::invalid_argument {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at column " + std::to_string(position + 1)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class HExpr {
public:
    enum class Kind { Var, Lit, Add, Sub, Mul, Div, Log2, Pow };

    struct Node {
        Kind kind = Kind::Lit;
        Rational literal;
        long exponent = 0;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    HExpr() : HExpr(literal(Rational(0))) {}

    static HExpr parse(std::string_view text);

    static HExpr variable() { return HExpr(make(Kind::Var)); }
    static HExpr literal(const Rational& q) {
        if (sgn(q) < 0) {
            throw std::invalid_argument("literals are non-negative");
        }
        auto node = make(Kind::Lit);
        node->literal = q;
        return HExpr(std::move(node));
    }
    static HExpr binary(Kind kind, const HExpr& a, const HExpr& b) {
        auto node = make(kind);
        node->lhs = a.root_;
        node->rhs = b.root_;
        return HExpr(std::move(node));
    }
    static HExpr log2(const HExpr& a) {
        auto node = make(Kind::Log2);
        node->lhs = a.root_;
        return HExpr(std::move(node));
    }
    static HExpr power(const HExpr& base, long exponent) {
        auto node = make(Kind::Pow);
        node->lhs = base.root_;
        node->exponent = exponent;
        return HExpr(std::move(node));
    }

    friend HExpr operator+(const HExpr& a, const HExpr& b) { return binary(Kind::Add, a, b); }
    friend HExpr operator-(const HExpr& a, const HExpr& b) { return binary(Kind::Sub, a, b); }
    friend HExpr operator*(const HExpr& a, const HExpr& b) { return binary(Kind::Mul, a, b); }
    friend HExpr operator/(const HExpr& a, const HExpr& b) { return binary(Kind::Div, a, b); }

    const Node& root() const { return *root_; }

    /// Enclosure of h(n); exact unless a log2 of a non-power of two is involved.
    Enclosure eval(std::uint64_t n, unsigned bits) const { return eval(*root_, Enclosure(Rational(n)), bits); }

    /// h(n) with precision escalation until the value is known to be positive.
    Letter letter_at(std::uint64_t n, const Precision& prec = {}) const {
        const bool positive =
            escalate([&](unsigned bits) { return less(Enclosure(Rational(0)), eval(n, bits)); }, prec,
                     "sign of h(" + std::to_string(n) + ")");
        if (!positive) {
            throw DomainError("h(" + std::to_string(n) + ") = " + to_string(eval(n, prec.bits)) +
                              " is not positive");
        }
        auto self = *this;
        return make_letter([self, n](unsigned bits) { return self.eval(n, bits); }, prec);
    }

    bool has_log2() const { return has_log2(*root_); }

    std::string str() const { return print(*root_); }

    friend bool operator==(const HExpr& a, const HExpr& b) { return same(*a.root_, *b.root_); }

private:
    explicit HExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    static std::shared_ptr<Node> make(Kind k) {
        auto node = std::make_shared<Node>();
        node->kind = k;
        return node;
    }

    static int precedence(const Node& n) {
        switch (n.kind) {
            case Kind::Add:
            case Kind::Sub: return 1;
            case Kind::Mul:
            case Kind::Div: return 2;
            case Kind::Pow: return 3;
            default: return 4;
        }
    }

    static Enclosure eval(const Node& node, const Enclosure& n, unsigned bits) {
        switch (node.kind) {
            case Kind::Var: return n;
            case Kind::Lit: return Enclosure(node.literal);
            case Kind::Add: return eval(*node.lhs, n, bits) + eval(*node.rhs, n, bits);
            case Kind::Sub: return eval(*node.lhs, n, bits) - eval(*node.rhs, n, bits);
            case Kind::Mul: return eval(*node.lhs, n, bits) * eval(*node.rhs, n, bits);
            case Kind::Div: return eval(*node.lhs, n, bits) / eval(*node.rhs, n, bits);
            case Kind::Log2: return log2_enclose(eval(*node.lhs, n, bits), bits + 8);
            case Kind::Pow: {
                const Enclosure base = eval(*node.lhs, n, bits);
                Enclosure out(Rational(1));
                for (long i = 0; i < std::abs(node.exponent); ++i) {
                    out = out * base;
                }
                return node.exponent < 0 ? Enclosure(Rational(1)) / out : out;
            }
        }
        throw std::logic_error("unreachable");
    }

    static bool has_log2(const Node& node) {
        if (node.kind == Kind::Log2) {
            return true;
        }
        return (node.lhs && has_log2(*node.lhs)) || (node.rhs && has_log2(*node.rhs));
    }

    static bool same(const Node& a, const Node& b) {
        if (a.kind != b.kind) {
            return false;
        }
        switch (a.kind) {
            case Kind::Var: return true;
            case Kind::Lit: return a.literal == b.literal;
            case Kind::Log2: return same(*a.lhs, *b.lhs);
            case Kind::Pow: return a.exponent == b.exponent && same(*a.lhs, *b.lhs);
            default: return same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
        }
    }

    static std::string print(const Node& node) {
        const auto wrap = [](const Node& child, bool parens) {
            return parens ? "(" + print(child) + ")" : print(child);
        };
        switch (node.kind) {
            case Kind::Var: return "n";
            case Kind::Lit:
                if (node.literal.get_den() == 1) {
                    return to_string(node.literal);
                }
                return "(" + to_string(node.literal) + ")";
            case Kind::Add:
            case Kind::Sub:
                return print(*node.lhs) + (node.kind == Kind::Add ? " + " : " - ") +
                       wrap(*node.rhs, precedence(*node.rhs) <= 1);
            case Kind::Mul:
            case Kind::Div:
                return wrap(*node.lhs, precedence(*node.lhs) < 2) + (node.kind == Kind::Mul ? "*" : "/") +
                       wrap(*node.rhs, precedence(*node.rhs) <= 2);
            case Kind::Log2: return "log2(" + print(*node.lhs) + ")";
            case Kind::Pow:
                return wrap(*node.lhs, precedence(*node.lhs) < 3) + "^" + std::to_string(node.exponent);
        }
        throw std::logic_error("unreachable");
    }

    friend class HExprParser;

    std::shared_ptr<const Node> root_;
};

class HExprParser {
public:
    explicit HExprParser(std::string_view text) : text_(text) {}

    HExpr run() {
        HExpr e = expr();
        skip();
        if (pos_ != text_.size()) {
            throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        return e;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
        }
    }

    HExpr expr() {
        HExpr lhs = term();
        while (true) {
            if (accept('+')) {
                lhs = lhs + term();
            } else if (accept('-')) {
                lhs = lhs - term();
            } else {
                return lhs;
            }
        }
    }

    HExpr term() {
        HExpr lhs = factor();
        while (true) {
            if (accept('*')) {
                lhs = lhs * factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                HExpr rhs = factor();
                if (lhs.root().kind == HExpr::Kind::Lit && rhs.root().kind == HExpr::Kind::Lit) {
                    if (sgn(rhs.root().literal) == 0) {
                        throw SyntaxError("division by literal zero", at);
                    }
                    lhs = HExpr::literal(Rational(lhs.root().literal / rhs.root().literal));
                } else {
                    lhs = lhs / rhs;
                }
            } else {
                return lhs;
            }
        }
    }

    HExpr factor() {
        HExpr base = primary();
        while (accept('^')) {
            skip();
            const std::size_t start = pos_;
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
            const std::size_t digits = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == digits) {
                throw SyntaxError("expected integer exponent", start);
            }
            base = HExpr::power(base, std::stol(std::string(text_.substr(start, pos_ - start))));
        }
        return base;
    }

    HExpr primary() {
        skip();
        if (pos_ >= text_.size()) {
            throw SyntaxError("unexpected end of expression", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            HExpr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                ++pos_;
            }
            try {
                return HExpr::literal(parse_rational(std::string(text_.substr(start, pos_ - start))));
            } catch (const std::invalid_argument&) {
                throw SyntaxError("malformed number", start);
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view ident = text_.substr(start, pos_ - start);
            if (ident == "n") {
                return HExpr::variable();
            }
            if (ident == "log2") {
                expect('(');
                HExpr inner = expr();
                expect(')');
                return HExpr::log2(inner);
            }
            throw SyntaxError("unknown identifier '" + std::string(ident) + "'", start);
        }
        throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline HExpr HExpr::parse(std::string_view text) { return HExprParser(text).run(); }

/// Parses h and evaluates it at n exactly or as an enclosure.
inline HExpr parse_h(std::string_view text) { return HExpr::parse(text); }

}  // namespace baire

#endif
