#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fedosov/rational.hpp"

namespace fedosov {

// Chart coordinate x[index], index in 1..2n.
struct Coordinate {
    int index;

    auto operator<=>(const Coordinate&) const = default;
};

// Partial derivative of an opaque smooth function: order[m] counts d/dx[m+1].
// All-zero order is the undifferentiated function. order.size() == 2n.
struct FuncDeriv {
    std::string name;
    std::vector<unsigned> order;

    auto operator<=>(const FuncDeriv&) const = default;
};

// Coordinate sorts before FuncDeriv; within each kind the member order applies.
using Atom = std::variant<Coordinate, FuncDeriv>;

// Product of atom powers with positive exponents, atoms strictly ascending.
// The empty product is the constant-term key.
class PowerProduct {
public:
    PowerProduct() = default;

    static PowerProduct atom_power(Atom a, unsigned exponent);

    const std::vector<std::pair<Atom, unsigned>>& factors() const { return factors_; }
    bool is_constant() const { return factors_.empty(); }
    unsigned degree() const;

    PowerProduct operator*(const PowerProduct& o) const;

    bool operator==(const PowerProduct&) const = default;
    // Graded lexicographic: total degree first, then exponent comparison along
    // ascending atoms (a nonzero exponent on an earlier atom wins).
    std::strong_ordering operator<=>(const PowerProduct& o) const;

private:
    std::vector<std::pair<Atom, unsigned>> factors_;
};

// Polynomial over atoms with GaussianRational coefficients, kept canonical:
// no zero coefficients are stored, so structural equality is value equality.
class ScalarCoeff {
public:
    ScalarCoeff() = default;  // zero

    static ScalarCoeff constant(GaussianRational c);
    static ScalarCoeff coordinate(int index);
    static ScalarCoeff function(std::string name, std::vector<unsigned> order);
    static ScalarCoeff term(PowerProduct p, GaussianRational c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<PowerProduct, GaussianRational>& terms() const { return terms_; }

    // Accumulating insert; drops the key if the sum cancels.
    void add_term(const PowerProduct& p, const GaussianRational& c);

    ScalarCoeff operator-() const;
    ScalarCoeff& operator+=(const ScalarCoeff& o);
    ScalarCoeff& operator-=(const ScalarCoeff& o);
    friend ScalarCoeff operator+(ScalarCoeff a, const ScalarCoeff& b) { return a += b; }
    friend ScalarCoeff operator-(ScalarCoeff a, const ScalarCoeff& b) { return a -= b; }
    friend ScalarCoeff operator*(const ScalarCoeff& a, const ScalarCoeff& b);

    ScalarCoeff scaled(const GaussianRational& c) const;

    bool operator==(const ScalarCoeff&) const = default;

private:
    std::map<PowerProduct, GaussianRational> terms_;
};

// d/dx[i]. Coordinates not matching i differentiate to zero for any i >= 1;
// an opaque function errors when i exceeds its order-vector length.
ScalarCoeff differentiate(const ScalarCoeff& a, int i);

inline bool scalar_is_zero(const ScalarCoeff& a) { return a.is_zero(); }

}  // namespace fedosov
