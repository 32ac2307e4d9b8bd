// SPDX-License-Identifier: Apache-2.0
#include "waring/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace waring {

void NcPolynomial::add_term(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

NcPolynomial NcPolynomial::constant(const Rational& c) {
    NcPolynomial f;
    f.add_term({}, c);
    return f;
}

NcPolynomial NcPolynomial::variable(int index) {
    if (index < 1) throw ContractError("variable indices are 1-based, got " + std::to_string(index));
    NcPolynomial f;
    f.add_term({index}, Rational(1));
    return f;
}

int NcPolynomial::degree() const {
    if (is_zero()) throw ZeroPolynomialError("the zero polynomial has no degree");
    return static_cast<int>(terms_.rbegin()->first.size());  // graded order: longest word last
}

int NcPolynomial::max_variable() const {
    int top = 0;
    for (const auto& [word, coeff] : terms_)
        for (int v : word) top = std::max(top, v);
    return top;
}

const Rational& NcPolynomial::coefficient(const Word& w) const {
    static const Rational zero(0);
    const auto it = terms_.find(w);
    return it == terms_.end() ? zero : it->second;
}

NcPolynomial NcPolynomial::operator+(const NcPolynomial& o) const {
    NcPolynomial out = *this;
    for (const auto& [word, coeff] : o.terms_) out.add_term(word, coeff);
    return out;
}

NcPolynomial NcPolynomial::operator-(const NcPolynomial& o) const {
    NcPolynomial out = *this;
    for (const auto& [word, coeff] : o.terms_) out.add_term(word, -coeff);
    return out;
}

NcPolynomial NcPolynomial::operator*(const NcPolynomial& o) const {
    NcPolynomial out;
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    return out;
}

NcPolynomial NcPolynomial::operator-() const {
    NcPolynomial out;
    for (const auto& [word, coeff] : terms_) out.terms_.emplace(word, -coeff);
    return out;
}

NcPolynomial NcPolynomial::operator*(const Rational& c) const {
    NcPolynomial out;
    if (c.is_zero()) return out;
    for (const auto& [word, coeff] : terms_) out.terms_.emplace(word, coeff * c);
    return out;
}

namespace {

struct Token {
    enum Kind { Number, Variable, Plus, Minus, Star, LParen, RParen, End } kind;
    Rational value;   // Number
    int index = 0;    // Variable
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        current_.pos = i_;
        if (i_ >= text_.size()) {
            current_.kind = Token::End;
            return;
        }
        const char c = text_[i_];
        switch (c) {
            case '+': current_.kind = Token::Plus; ++i_; return;
            case '-': current_.kind = Token::Minus; ++i_; return;
            case '*': current_.kind = Token::Star; ++i_; return;
            case '(': current_.kind = Token::LParen; ++i_; return;
            case ')': current_.kind = Token::RParen; ++i_; return;
            default: break;
        }
        if (c == 'X' || c == 'x') {
            const std::size_t start = ++i_;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
            if (i_ == start) throw ParseError("variable needs an index, e.g. X1", current_.pos);
            const std::string digits(text_.substr(start, i_ - start));
            if (digits.size() > 6) throw ParseError("variable index out of range", current_.pos);
            current_.kind = Token::Variable;
            current_.index = std::stoi(digits);
            if (current_.index < 1) throw ParseError("variable indices start at X1", current_.pos);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = i_;
            while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
            // a '/' directly followed by digits continues the rational literal
            if (i_ < text_.size() && text_[i_] == '/') {
                const std::size_t slash = i_++;
                const std::size_t den_start = i_;
                while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
                if (i_ == den_start) throw ParseError("expected digits after '/'", slash + 1);
            }
            current_.kind = Token::Number;
            current_.value = Rational::parse(text_.substr(start, i_ - start));
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Token current_;
};

// expr := term (('+'|'-') term)*
// term := factor ('*' factor)*
// factor := ('-'|'+')* atom
// atom := NUMBER | VARIABLE | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    NcPolynomial run() {
        NcPolynomial f = expr();
        if (lex_.peek().kind != Token::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return f;
    }

private:
    NcPolynomial expr() {
        NcPolynomial acc = term();
        for (;;) {
            if (lex_.peek().kind == Token::Plus) {
                lex_.take();
                acc = acc + term();
            } else if (lex_.peek().kind == Token::Minus) {
                lex_.take();
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    NcPolynomial term() {
        NcPolynomial acc = factor();
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            acc = acc * factor();
        }
        // juxtaposition like "2 X1" or "X1 X2" is a syntax error
        const auto k = lex_.peek().kind;
        if (k == Token::Number || k == Token::Variable || k == Token::LParen)
            throw ParseError("missing '*' between factors", lex_.peek().pos);
        return acc;
    }

    NcPolynomial factor() {
        bool negative = false;
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            if (lex_.take().kind == Token::Minus) negative = !negative;
        }
        NcPolynomial a = atom();
        return negative ? -a : a;
    }

    NcPolynomial atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Token::Number: return NcPolynomial::constant(t.value);
            case Token::Variable: return NcPolynomial::variable(t.index);
            case Token::LParen: {
                NcPolynomial inner = expr();
                const Token close = lex_.take();
                if (close.kind != Token::RParen) throw ParseError("expected ')'", close.pos);
                return inner;
            }
            default: throw ParseError("expected a number, variable, or '('", t.pos);
        }
    }

    Lexer lex_;
};

}  // namespace

NcPolynomial NcPolynomial::parse(std::string_view text) {
    NcPolynomial f = Parser(text).run();
    if (f.is_zero()) throw ZeroPolynomialError("input is the zero polynomial");
    return f;
}

std::string NcPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [word, coeff] : terms_) {
        const bool negative = coeff.sign() < 0;
        const Rational mag = negative ? -coeff : coeff;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (word.empty()) {
            os << mag.str();
            continue;
        }
        if (!mag.is_one()) os << mag.str() << "*";
        for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "*" : "") << "X" << word[i];
    }
    return os.str();
}

RatMat NcPolynomial::evaluate(const std::vector<RatMat>& args) const {
    if (args.empty()) throw ContractError("evaluation needs at least one argument matrix to fix the size");
    const index_t n = args.front().rows();
    for (std::size_t i = 0; i < args.size(); ++i) {
        const RatMat& m = args[i];
        if (m.rows() != m.cols() || m.rows() != n)
            throw ShapeError("argument " + std::to_string(i + 1) + " has shape " + shape_of(m) +
                             ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    const int needed = max_variable();
    if (needed > static_cast<int>(args.size()))
        throw ContractError("polynomial uses X" + std::to_string(needed) + " but only " +
                            std::to_string(args.size()) + " matrices were given");
    RatMat acc = zeros(n, n);
    for (const auto& [word, coeff] : terms_) {
        RatMat prod = identity(n);
        for (int v : word) prod = prod * args[static_cast<std::size_t>(v - 1)];
        acc += coeff * prod;
    }
    return acc;
}

}  // namespace waring
