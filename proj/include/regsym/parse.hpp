#pragma once

// Recursive-descent parser for symbol expressions.
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' uint)?
//   base     := 'x' | 'xi' | 'i' | rational | '(' expr ')'
//   rational := uint ('/' uint)?
//
// Whitespace is insignificant. 'I' is accepted for 'i'. Juxtaposition is
// not multiplication; '*' is required.

#include "regsym/bivariate.hpp"
#include "regsym/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace regsym {

struct SyntaxError : std::runtime_error {
    std::size_t position;
    std::string expected;
    SyntaxError(std::size_t pos, const std::string& what_expected)
        : std::runtime_error("syntax error at position " + std::to_string(pos) + ": expected " + what_expected),
          position(pos),
          expected(what_expected) {}
};

struct UnsupportedExponent : std::runtime_error {
    std::size_t position;
    explicit UnsupportedExponent(std::size_t pos)
        : std::runtime_error("unsupported exponent at position " + std::to_string(pos) +
                             ": only nonnegative integer powers are allowed"),
          position(pos) {}
};

namespace detail {

class SymbolParser {
  public:
    explicit SymbolParser(const std::string& text) : text_(text) {}

    BivariatePoly parse() {
        BivariatePoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input or operator");
        return p;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    BivariatePoly expr() {
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        BivariatePoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    BivariatePoly term() {
        BivariatePoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    BivariatePoly factor() {
        BivariatePoly b = base();
        if (eat('^')) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '-') throw UnsupportedExponent(pos_);
            unsigned e = parse_uint_bounded();
            b = b.pow(e);
        }
        return b;
    }

    BivariatePoly base() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError(pos_, "'x', 'xi', 'i', a rational, or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            BivariatePoly p = expr();
            if (!eat(')')) throw SyntaxError(pos_, "')'");
            return p;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::string name;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) name += text_[pos_++];
            if (name == "xi") return BivariatePoly::variable_xi();
            if (name == "x") return BivariatePoly::variable_x();
            if (name == "i" || name == "I") return BivariatePoly::constant(GaussianRational::i());
            throw SyntaxError(start, "'x', 'xi', or 'i'");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt n = parse_uint_big();
            if (eat('/')) {
                skip_ws();
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw SyntaxError(pos_, "denominator (unsigned integer)");
                std::size_t dpos = pos_;
                BigInt d = parse_uint_big();
                if (d == 0) throw SyntaxError(dpos, "nonzero denominator");
                return BivariatePoly::constant(GaussianRational(Rational(n, d)));
            }
            return BivariatePoly::constant(GaussianRational(Rational(n)));
        }
        throw SyntaxError(pos_, "'x', 'xi', 'i', a rational, or '('");
    }

    BigInt parse_uint_big() {
        skip_ws();
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
        if (digits.empty()) throw SyntaxError(pos_, "unsigned integer");
        return BigInt(digits);
    }

    unsigned parse_uint_bounded() {
        std::size_t at = pos_;
        BigInt n = parse_uint_big();
        if (n > 256) throw SyntaxError(at, "exponent <= 256");
        return n.convert_to<unsigned>();
    }
};

}  // namespace detail

// Total on the grammar above; exact expansion of all products and powers.
inline BivariatePoly parse_symbol(const std::string& text) { return detail::SymbolParser(text).parse(); }

}  // namespace regsym
