#pragma once

#include <compare>
#include <map>
#include <vector>

#include "fedosov/parse.hpp"
#include "fedosov/scalar.hpp"

namespace fedosov {

// Darboux symplectic form: omega = sum_i dx^i ^ dx^{i+n}, never a general
// matrix. upper() is the inverse tensor: omega_{kj} omega^{ji} = delta_k^i.
struct Symplectic {
    int n;

    int lower(int i, int j) const {
        if (j == i + n)
            return 1;
        if (i == j + n)
            return -1;
        return 0;
    }

    int upper(int i, int j) const { return -lower(i, j); }

    int conj(int i) const { return i <= n ? i + n : i - n; }
};

// Exponents of (y^1)^{e1} ... (y^2n)^{e2n}.
class YMonomial {
public:
    YMonomial() = default;
    explicit YMonomial(int two_n) : exps_(static_cast<std::size_t>(two_n), 0) {}
    explicit YMonomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    static YMonomial unit(int two_n, int i) {
        YMonomial m(two_n);
        m.exps_[static_cast<std::size_t>(i - 1)] = 1;
        return m;
    }

    int size() const { return static_cast<int>(exps_.size()); }
    unsigned exp(int i) const { return exps_[static_cast<std::size_t>(i - 1)]; }
    void set_exp(int i, unsigned e) { exps_[static_cast<std::size_t>(i - 1)] = e; }
    const std::vector<unsigned>& exps() const { return exps_; }

    unsigned total_degree() const;
    YMonomial operator*(const YMonomial& o) const;

    bool operator==(const YMonomial&) const = default;
    // Graded lexicographic over the exponent vector.
    std::strong_ordering operator<=>(const YMonomial& o) const;

private:
    std::vector<unsigned> exps_;
};

struct WeylKey {
    unsigned h;
    YMonomial mono;

    bool operator==(const WeylKey&) const = default;
    std::strong_ordering operator<=>(const WeylKey& o) const {
        if (auto c = h <=> o.h; c != 0)
            return c;
        return mono <=> o.mono;
    }
};

// term degree 2k + |mono|
inline int term_degree(const WeylKey& key) {
    return 2 * static_cast<int>(key.h) + static_cast<int>(key.mono.total_degree());
}

// Fibre Weyl-algebra element: finite sum of h^k (y-monomial) with ScalarCoeff
// coefficients. The map keeps the representation ord-canonical: every
// (h-power, monomial) key appears once and never maps to zero.
class WeylElement {
public:
    explicit WeylElement(int n);

    static WeylElement scalar(int n, ScalarCoeff c);
    static WeylElement one(int n) { return scalar(n, ScalarCoeff::constant(GaussianRational(1))); }
    static WeylElement unit_y(int n, int i);

    int n() const { return n_; }
    int two_n() const { return 2 * n_; }
    const std::map<WeylKey, ScalarCoeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Accumulating insert; cancellations remove the key.
    void add_term(unsigned h, const YMonomial& mono, const ScalarCoeff& c);

    // Highest term degree, -1 when zero.
    int max_degree() const;

    WeylElement operator-() const;
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }

    WeylElement scaled(const ScalarCoeff& c) const;
    WeylElement scaled(const GaussianRational& c) const;

    WeylElement times_h(unsigned k) const;
    // Divides every term by h^k; throws DivisionByH if any h-power is too low.
    WeylElement div_h(unsigned k) const;

    bool operator==(const WeylElement&) const = default;

private:
    int n_;
    std::map<WeylKey, ScalarCoeff> terms_;
};

inline WeylElement weyl_add(const WeylElement& a, const WeylElement& b) { return a + b; }
inline WeylElement weyl_scale(const WeylElement& a, const ScalarCoeff& c) { return a.scaled(c); }

// The representation collects like monomials on insertion, so this is the
// identity; it exists as the named canonicalization point.
inline WeylElement ord(const WeylElement& a) { return a; }

// Sub-sum of terms with 2k + |mono| = z.
WeylElement deg_component(const WeylElement& a, int z);

// Coefficients c_t of (ih/2)^t (y^i)^{r+s-t} (y^{i+n})^{k+j-t} in the product
// (y^i)^r (y^{i+n})^j o (y^i)^s (y^{i+n})^k over one conjugate coordinate
// pair, 0 <= t <= min(r,k) + min(j,s). Memoized.
std::vector<Rational> circ_pair(unsigned r, unsigned j, unsigned s, unsigned k);

// Monomial o-product: the conjugate-pair blocks multiply independently and
// their h-powers add.
WeylElement circ_mono(int n, const YMonomial& I, const YMonomial& J);

inline constexpr int kUnboundedDeg = -1;

// Bilinear extension of circ_mono. With max_deg bounded, term pairs whose
// degrees sum beyond the bound are skipped up front; by the grading law this
// drops exactly the terms of degree > max_deg and nothing else.
WeylElement circ(const WeylElement& a, const WeylElement& b, int max_deg = kUnboundedDeg);

// Direct t-sum evaluation with explicit y-derivatives and the inverse
// symplectic tensor; independent of the closed pair formula. Test oracle.
WeylElement circ_oracle(const WeylElement& a, const WeylElement& b);

// Symmetric covariant l-tensor to fibre polynomial: component a_{j1..jl}
// (tuple ascending) enters with the multinomial l!/(i1!...i2n!), where i_m
// counts occurrences of m in the tuple.
WeylElement sym_tensor_to_poly(int n, int l,
                               const std::map<std::vector<int>, ScalarCoeff>& components);

// Terms ascend by (h-power, graded-lex monomial); scalars render in the
// machine or human expression style.
std::string render_weyl(const WeylElement& a, RenderStyle style = RenderStyle::human);

}  // namespace fedosov
