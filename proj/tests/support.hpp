#pragma once

#include <functional>
#include <random>
#include <vector>

#include "fedosov/scalar.hpp"
#include "fedosov/star.hpp"
#include "fedosov/weyl.hpp"

namespace testsupport {

using namespace fedosov;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_rational(Rng& rng) {
    return Rational(uniform(rng, -9, 9), uniform(rng, 1, 9));
}

inline GaussianRational random_gaussian(Rng& rng) {
    switch (uniform(rng, 0, 3)) {
        case 0:
            return GaussianRational(random_rational(rng));
        case 1:
            return GaussianRational(Rational(0), random_rational(rng));
        default:
            return GaussianRational(random_rational(rng), random_rational(rng));
    }
}

inline GaussianRational random_nonzero_gaussian(Rng& rng) {
    while (true) {
        GaussianRational c = random_gaussian(rng);
        if (!c.is_zero())
            return c;
    }
}

inline Atom random_atom(Rng& rng, int two_n, bool allow_funcs) {
    if (allow_funcs && uniform(rng, 0, 2) == 0) {
        std::vector<unsigned> order(static_cast<std::size_t>(two_n), 0);
        for (auto& o : order)
            o = static_cast<unsigned>(uniform(rng, 0, 2));
        static const char* names[] = {"f", "g", "w"};
        return FuncDeriv{names[uniform(rng, 0, 2)], order};
    }
    return Coordinate{uniform(rng, 1, two_n)};
}

inline ScalarCoeff random_scalar(Rng& rng, int two_n, int max_terms = 4,
                                 bool allow_funcs = true) {
    ScalarCoeff out;
    int terms = uniform(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t) {
        PowerProduct p;
        int atoms = uniform(rng, 0, 3);
        for (int a = 0; a < atoms; ++a)
            p = p * PowerProduct::atom_power(random_atom(rng, two_n, allow_funcs),
                                             static_cast<unsigned>(uniform(rng, 1, 2)));
        out.add_term(p, random_gaussian(rng));
    }
    return out;
}

// Polynomial in the coordinates only, degree bounded per variable.
inline ScalarCoeff random_poly(Rng& rng, int two_n, int max_terms = 4, int max_exp = 3) {
    ScalarCoeff out;
    int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        PowerProduct p;
        for (int v = 1; v <= two_n; ++v) {
            int e = uniform(rng, 0, max_exp);
            if (e > 0)
                p = p * PowerProduct::atom_power(Coordinate{v}, static_cast<unsigned>(e));
        }
        out.add_term(p, GaussianRational(random_rational(rng)));
    }
    return out;
}

inline YMonomial random_mono(Rng& rng, int two_n, int max_exp) {
    YMonomial m(two_n);
    for (int v = 1; v <= two_n; ++v)
        m.set_exp(v, static_cast<unsigned>(uniform(rng, 0, max_exp)));
    return m;
}

inline WeylElement random_weyl(Rng& rng, int n, int max_terms = 3, int max_h = 1,
                               int max_exp = 2, bool allow_funcs = true) {
    WeylElement out(n);
    int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t)
        out.add_term(static_cast<unsigned>(uniform(rng, 0, max_h)),
                     random_mono(rng, 2 * n, max_exp),
                     random_scalar(rng, 2 * n, 2, allow_funcs));
    return out;
}

// Homogeneous of the given total degree 2k + |mono| = z.
inline WeylElement random_weyl_homogeneous(Rng& rng, int n, int z, int max_terms = 3) {
    WeylElement out(n);
    int terms = uniform(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        unsigned k = static_cast<unsigned>(uniform(rng, 0, z / 2));
        int rest = z - 2 * static_cast<int>(k);
        YMonomial mono(2 * n);
        for (int step = 0; step < rest; ++step) {
            int v = uniform(rng, 1, 2 * n);
            mono.set_exp(v, mono.exp(v) + 1);
        }
        out.add_term(k, mono, random_scalar(rng, 2 * n, 2, true));
    }
    return out;
}

// Degree-z piece of the Taylor expansion of f around the base point:
// sum over multi-indices alpha with |alpha| = z of (1/alpha!) d^alpha f y^alpha.
inline WeylElement taylor_component(const ScalarCoeff& f, int n, int z) {
    WeylElement out(n);
    std::vector<unsigned> alpha(static_cast<std::size_t>(2 * n), 0);
    auto emit = [&]() {
        ScalarCoeff d = f;
        Rational fact = 1;
        YMonomial mono(2 * n);
        for (int v = 1; v <= 2 * n; ++v) {
            unsigned e = alpha[static_cast<std::size_t>(v - 1)];
            mono.set_exp(v, e);
            for (unsigned s = 0; s < e; ++s)
                d = differentiate(d, v);
            fact *= Rational(factorial(e));
        }
        if (!scalar_is_zero(d))
            out.add_term(0, mono, d.scaled(GaussianRational(Rational(1) / fact)));
    };
    std::function<void(int, int)> walk = [&](int v, int left) {
        if (v == 2 * n) {
            alpha[static_cast<std::size_t>(v - 1)] = static_cast<unsigned>(left);
            emit();
            return;
        }
        for (int e = 0; e <= left; ++e) {
            alpha[static_cast<std::size_t>(v - 1)] = static_cast<unsigned>(e);
            walk(v + 1, left - e);
        }
    };
    walk(1, z);
    return out;
}

// Canonical Poisson bracket in these coordinates: {x[v], x[v+n]} = 1.
inline ScalarCoeff poisson_bracket(const ScalarCoeff& a, const ScalarCoeff& b, int n) {
    ScalarCoeff out;
    for (int v = 1; v <= n; ++v) {
        out = out + differentiate(a, v) * differentiate(b, v + n);
        out = out - differentiate(a, v + n) * differentiate(b, v);
    }
    return out;
}

// Multiplies an h-expanded series by a plain function on one side,
// reusing the pairwise product. out[k] collects the h^k coefficient.
inline std::vector<ScalarCoeff> star_into(StarProduct& ctx, const std::vector<ScalarCoeff>& series,
                                          const ScalarCoeff& c0, int hpower, bool series_on_left) {
    std::vector<ScalarCoeff> out(static_cast<std::size_t>(hpower) + 1);
    for (int k1 = 0; k1 <= hpower; ++k1) {
        const ScalarCoeff& s = series[static_cast<std::size_t>(k1)];
        if (scalar_is_zero(s))
            continue;
        if (k1 == hpower) {
            out[static_cast<std::size_t>(k1)] = out[static_cast<std::size_t>(k1)] + s * c0;
            continue;
        }
        StarResult partial = series_on_left ? ctx.star(s, c0, hpower - k1)
                                            : ctx.star(c0, s, hpower - k1);
        for (int k2 = 0; k2 + k1 <= hpower; ++k2)
            out[static_cast<std::size_t>(k1 + k2)] =
                out[static_cast<std::size_t>(k1 + k2)] +
                partial.by_hpower[static_cast<std::size_t>(k2)];
    }
    return out;
}

}  // namespace testsupport
