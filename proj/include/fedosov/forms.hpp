#pragma once

#include <vector>

#include "fedosov/weyl.hpp"

namespace fedosov {

// Differential form of degree 0, 1 or 2 with Weyl-algebra values.
// Antisymmetry of 2-forms is structural: only components with j < s exist.
class WeylForm {
public:
    WeylForm(int n, int degree);

    static WeylForm of_element(WeylElement e);  // degree 0 wrapper

    int n() const { return n_; }
    int two_n() const { return 2 * n_; }
    int degree() const { return degree_; }

    const WeylElement& at() const;            // degree 0
    const WeylElement& at(int s) const;       // degree 1, coefficient of dx[s]
    const WeylElement& at(int j, int s) const;  // degree 2, j < s

    void add_to(const WeylElement& e);
    void add_to(int s, const WeylElement& e);
    void add_to(int j, int s, const WeylElement& e);

    bool is_zero() const;
    // Highest term degree across components, -1 when zero.
    int max_degree() const;

    WeylForm operator-() const;
    WeylForm& operator+=(const WeylForm& o);
    WeylForm& operator-=(const WeylForm& o);
    friend WeylForm operator+(WeylForm a, const WeylForm& b) { return a += b; }
    friend WeylForm operator-(WeylForm a, const WeylForm& b) { return a -= b; }
    WeylForm scaled(const GaussianRational& c) const;

    // Keep terms with 2k + |mono| = z only, in every component.
    WeylForm deg_component(int z) const;

    // i/h applied componentwise: scale by the imaginary unit, then decrement
    // every h-power. Throws DivisionByH when an h^0 term survives.
    WeylForm i_over_h() const;

    bool operator==(const WeylForm&) const = default;

private:
    int n_;
    int degree_;
    std::vector<WeylElement> comps_;

    std::size_t pair_index(int j, int s) const;
};

// (a o b) on two 1-forms: component at j < s is circ(a_j, b_s) - circ(a_s, b_j).
WeylForm wedge11(const WeylForm& a, const WeylForm& b, int max_deg = kUnboundedDeg);

// Graded commutator [a,b] = a o b - (-1)^{m1 m2} b o a, total degree <= 2.
// For two 1-forms this is a o b + b o a.
WeylForm commutator(const WeylForm& a, const WeylForm& b, int max_deg = kUnboundedDeg);

// Componentwise scalar differentiation; y and h are constants under d.
// Degree 0 -> 1, degree 1 -> 2; degree-2 input is rejected.
WeylForm exterior_d(const WeylForm& a);

// Monomial action with l = y-degree of the term:
//   degree 1: a y^I dx^j        -> (1/(l+1)) a y^I y^j
//   degree 2: a y^I dx^j^dx^s   -> (1/(l+2)) (a y^I y^j dx^s - a y^I y^s dx^j)
// h-powers pass through. Degree-0 input is a contract violation.
WeylForm delta_inv(const WeylForm& a);

// Covariant exterior derivative along gamma: da + (i/h)[gamma, a].
// a has degree 0 or 1; the commutator's h^0 part cancels identically.
WeylForm covariant_d(const WeylForm& gamma, const WeylForm& a, int max_deg = kUnboundedDeg);

// R_gamma = d gamma + (i/h) gamma o gamma.
WeylForm curvature(const WeylForm& gamma, int max_deg = kUnboundedDeg);

// Canonicalization point; the representation already collects per-key.
inline WeylForm ordnung(const WeylForm& a) { return a; }

// "<weyl> dx[j]" / "<weyl> dx[j]^dx[s]" joined with signs, dx keys ascending.
std::string render_form(const WeylForm& a, RenderStyle style = RenderStyle::human);

}  // namespace fedosov
