#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

#include "fedosov/errors.hpp"

namespace fedosov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // lowest terms, denominator > 0

// Element of Q(i): re + im*i with exact rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int value) : re_(value) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_ == 1 && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }

    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }

    GaussianRational& operator*=(const GaussianRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    GaussianRational inverse() const {
        if (is_zero())
            throw Error("division by zero in GaussianRational");
        Rational norm = re_ * re_ + im_ * im_;
        return {re_ / norm, -im_ / norm};
    }

    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inverse();
    }

    bool operator==(const GaussianRational&) const = default;

    // Total order used only for canonical container keys, no algebraic meaning.
    std::strong_ordering operator<=>(const GaussianRational& o) const {
        if (re_ < o.re_) return std::strong_ordering::less;
        if (o.re_ < re_) return std::strong_ordering::greater;
        if (im_ < o.im_) return std::strong_ordering::less;
        if (o.im_ < im_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

// n! as an exact integer.
BigInt factorial(unsigned n);

// "p" or "p/q" (q > 1), lowest terms, sign on the numerator.
std::string to_string(const Rational& q);

}  // namespace fedosov
