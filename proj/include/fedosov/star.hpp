#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fedosov/forms.hpp"

namespace fedosov {

// Symplectic connection coefficients Gamma_ijk, symmetric in all indices.
// Only ascending triples are stored; lookup sorts its arguments.
class ConnectionData {
public:
    explicit ConnectionData(int n);

    int n() const { return n_; }

    // Requires i <= j <= k in 1..2n and rejects duplicate triples.
    void set(int i, int j, int k, ScalarCoeff value);

    // Symmetrized lookup; absent triples are zero.
    ScalarCoeff get(int i, int j, int k) const;

    const std::map<std::array<int, 3>, ScalarCoeff>& coefficients() const { return coeffs_; }

    bool operator==(const ConnectionData&) const = default;

private:
    int n_;
    std::map<std::array<int, 3>, ScalarCoeff> coeffs_;
};

// Gamma = (1/2) Gamma_ijk y^i y^j dx^k, symmetrized over the stored triangle.
WeylForm connection_one_form(const ConnectionData& c);

// omega_ij y^i dx^j, the lowering part of the Abelian connection.
WeylForm omega_y_dx(int n);

// r[3..z_max]; r[1] = r[2] = 0 and every r[z] is degree-z homogeneous.
struct AbelianCorrection {
    int z_max = 2;
    std::vector<WeylForm> by_degree;  // index z; entries 0..2 are zero forms

    const WeylForm& at(int z) const { return by_degree[static_cast<std::size_t>(z)]; }

    // Sum of the stored corrections, the "+ r" of the Abelian connection.
    WeylForm total(int n) const;
};

// r[3] = delta_inv(R); r[z] = delta_inv(d_Gamma r[z-1]
//        + (i/h) sum_{j=3}^{z-2} r[j] o r[z+1-j]).
AbelianCorrection abelian_correction(const WeylForm& gamma, const WeylForm& curvature_form,
                                     int z_max);

// Recursive lift: a[0] = a0; a[z] = delta_inv(d_Gamma a[z-1]
//        + (i/h) sum_{l=1}^{z-2} [r[z+1-l], a[l]]).
// Every a[z], z >= 1 carries y's, so projecting the lift returns a0.
struct FlatSection {
    ScalarCoeff base;
    std::vector<WeylElement> by_degree;  // index z = 0..z_max

    WeylElement total(int n) const;
};

FlatSection flat_section(const ScalarCoeff& a0, const WeylForm& gamma,
                         const AbelianCorrection& r, int z_max);

// y-free part, split by h-power.
std::map<unsigned, ScalarCoeff> sigma(const WeylElement& a);

// Scalar part of the o-product of two monomial terms whose y-exponents are
// half-swapped complements (J_m = I_{conj(m)}): the only pairing that
// produces a y-free term. Returns the target h-power k = sA + sB + |I|
// together with fA*fB*(-1)^{I_{n+1}+...+I_{2n}}*(i/2)^{|I|}*I_1!...I_2n!.
std::pair<unsigned, ScalarCoeff> sigma_circ_complement(const YMonomial& I, const ScalarCoeff& fA,
                                                       unsigned sA, const YMonomial& J,
                                                       const ScalarCoeff& fB, unsigned sB);

struct StarIntermediates {
    WeylForm gamma;            // degree 1
    WeylForm gamma_curvature;  // degree 2
    AbelianCorrection correction;
    FlatSection lift_a;
    FlatSection lift_b;
};

struct StarResult {
    std::vector<ScalarCoeff> by_hpower;  // index k = 0..hpower
    std::optional<StarIntermediates> intermediates;
};

struct StarOptions {
    bool keep_intermediates = false;
};

// The quantization pipeline for one connection; caches Gamma, its curvature
// and the correction series so repeated products reuse them.
class StarProduct {
public:
    explicit StarProduct(ConnectionData connection);

    int n() const { return connection_.n(); }
    const ConnectionData& connection() const { return connection_; }
    const WeylForm& gamma() const { return gamma_; }
    const WeylForm& gamma_curvature() const { return curvature_; }
    const AbelianCorrection& correction(int z_max);

    FlatSection lift(const ScalarCoeff& a0, int z_max);

    StarResult star(const ScalarCoeff& a0, const ScalarCoeff& b0, int hpower,
                    const StarOptions& options = {});

    // Projection step alone, on sections that were already lifted to
    // degree 2*hpower - 1 or deeper.
    StarResult star_from_lifts(const FlatSection& la, const FlatSection& lb, int hpower,
                               const StarOptions& options = {});

    // Reference path: one full o-product of the complete lifts, then the
    // projection. Identical output; kept as the consistency oracle.
    StarResult star_full(const ScalarCoeff& a0, const ScalarCoeff& b0, int hpower,
                         const StarOptions& options = {});

private:
    ConnectionData connection_;
    WeylForm gamma_;
    WeylForm curvature_;
    AbelianCorrection correction_;
};

}  // namespace fedosov
