#include "fedosov/parse.hpp"

#include <cctype>

#include "fedosov/errors.hpp"

namespace fedosov {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
public:
    Parser(const std::string& src, int n) : src_(src), two_n_(2 * n) {
        if (n < 1)
            throw DimensionError("phase-space half-dimension must be at least 1");
    }

    ScalarCoeff run() {
        ScalarCoeff e = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& src_;
    int two_n_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    // Digit run as a bounded value, used for indices and exponents.
    unsigned natural_small(const char* what) {
        BigInt v = natural_big(what);
        if (v > 100000)
            throw ParseError(std::string(what) + " too large", pos_);
        return static_cast<unsigned>(v);
    }

    BigInt natural_big(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ == start)
            throw ParseError(std::string("expected ") + what, pos_);
        return BigInt(src_.substr(start, pos_ - start));
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < src_.size() && ident_start(src_[pos_])) {
            ++pos_;
            while (pos_ < src_.size() && ident_char(src_[pos_]))
                ++pos_;
        }
        if (pos_ == start)
            throw ParseError("expected identifier", pos_);
        return src_.substr(start, pos_ - start);
    }

    ScalarCoeff expr() {
        ScalarCoeff out = term();
        while (true) {
            if (consume('+'))
                out += term();
            else if (consume('-'))
                out -= term();
            else
                return out;
        }
    }

    ScalarCoeff term() {
        ScalarCoeff out = factor();
        while (consume('*'))
            out = out * factor();
        return out;
    }

    ScalarCoeff factor() {
        ScalarCoeff b = base();
        if (!consume('^'))
            return b;
        unsigned e = natural_small("exponent");
        ScalarCoeff out = ScalarCoeff::constant(GaussianRational(1));
        for (unsigned k = 0; k < e; ++k)
            out = out * b;
        return out;
    }

    ScalarCoeff base() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -base();
        }
        if (c == '(') {
            ++pos_;
            ScalarCoeff e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return rational();
        if (ident_start(c))
            return named();
        throw ParseError("unexpected character", pos_);
    }

    ScalarCoeff rational() {
        BigInt num = natural_big("number");
        Rational value(num);
        // Only a digit immediately after '/' makes it a literal denominator;
        // anything else is not in the grammar and errors here.
        if (consume('/')) {
            BigInt den = natural_big("denominator");
            if (den.is_zero())
                throw ParseError("zero denominator", pos_);
            value = Rational(num, den);
        }
        return ScalarCoeff::constant(GaussianRational(value));
    }

    ScalarCoeff named() {
        std::size_t at = pos_;
        std::string name = ident();
        if (name == "x") {
            expect('[');
            unsigned index = natural_small("coordinate index");
            expect(']');
            if (index < 1 || static_cast<int>(index) > two_n_)
                throw ParseError("coordinate index out of range 1..2n", at);
            return ScalarCoeff::coordinate(static_cast<int>(index));
        }
        if (name == "i") {
            if (peek() == '(')
                throw ParseError("'i' is reserved and may not name a function", at);
            return ScalarCoeff::constant(GaussianRational::i());
        }
        if (name == "h")
            throw ParseError("'h' is reserved", at);
        return func_tail(std::move(name), at);
    }

    // After the identifier: optional ^(o1,...,o2n), then the argument list,
    // which must be exactly x[1],...,x[2n].
    ScalarCoeff func_tail(std::string name, std::size_t at) {
        std::vector<unsigned> order(static_cast<std::size_t>(two_n_), 0);
        skip_ws();
        if (pos_ + 1 < src_.size() && src_[pos_] == '^' && src_[pos_ + 1] == '(') {
            pos_ += 2;
            std::vector<unsigned> listed;
            listed.push_back(natural_small("derivative order"));
            while (consume(','))
                listed.push_back(natural_small("derivative order"));
            expect(')');
            if (listed.size() != static_cast<std::size_t>(two_n_))
                throw ParseError("derivative multi-index must have length " +
                                     std::to_string(two_n_),
                                 at);
            order = std::move(listed);
        }
        if (peek() != '(')
            throw ParseError("expected argument list after function name", pos_);
        ++pos_;
        int arg = 0;
        while (true) {
            ++arg;
            std::size_t arg_at = pos_;
            ScalarCoeff value = expr();
            if (arg > two_n_ || value != ScalarCoeff::coordinate(arg))
                throw ParseError("function arguments must be exactly x[1],...,x[" +
                                     std::to_string(two_n_) + "] in order",
                                 arg_at);
            if (consume(','))
                continue;
            expect(')');
            break;
        }
        if (arg != two_n_)
            throw ParseError("function arguments must be exactly x[1],...,x[" +
                                 std::to_string(two_n_) + "] in order",
                             at);
        return ScalarCoeff::function(std::move(name), std::move(order));
    }
};

}  // namespace

ScalarCoeff parse_expr(const std::string& source, int n) {
    return Parser(source, n).run();
}

}  // namespace fedosov
