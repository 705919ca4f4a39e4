#include "pcadyn/poly_parse.hpp"

#include <cctype>

namespace pcadyn {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> vars, int line, int column_offset)
        : text_(text), vars_(vars), line_(line), offset_(column_offset),
          arity_(static_cast<int>(vars.size())) {}

    MultiPoly parse() {
        skip_ws();
        if (pos_ >= text_.size()) fail("empty polynomial");
        MultiPoly p = expr();
        skip_ws();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        while (true) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        while (true) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                skip_ws();
                BigRational d = number();
                if (d.is_zero()) fail("division by zero");
                acc *= d.inverse();
            } else {
                skip_ws();
                if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '('))
                    fail("juxtaposition is not allowed; use '*'");
                return acc;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected non-negative integer exponent");
            unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 1000) fail("exponent too large");
            try {
                return pcadyn::pow(base, static_cast<unsigned>(e));
            } catch (const DegreeCapExceeded& err) {
                fail(err.what());
            }
        }
        return base;
    }

    BigRational number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected number");
        return BigRational::parse(text_.substr(start, pos_ - start));
    }

    MultiPoly atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigRational v = number();
            return MultiPoly::constant(arity_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            for (int i = 0; i < arity_; ++i)
                if (vars_[i] == name) return MultiPoly::variable(arity_, i);
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::span<const std::string> vars_;
    int line_;
    int offset_;
    int arity_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, std::span<const std::string> vars, int line,
                           int column_offset) {
    if (vars.empty() || vars.size() > static_cast<std::size_t>(kMaxArity))
        throw ArityMismatch("parse_polynomial: 1..4 variables required");
    return Parser(text, vars, line, column_offset).parse();
}

MultiPoly parse_polynomial(std::string_view text, int arity) {
    auto names = default_variable_names(arity);
    return parse_polynomial(text, names);
}

}  // namespace pcadyn
