#include <doctest.h>

#include "fedosov/errors.hpp"
#include "fedosov/forms.hpp"
#include "fedosov/parse.hpp"
#include "fedosov/star.hpp"
#include "support.hpp"

using namespace fedosov;
using namespace testsupport;

namespace {

// The connection used throughout: n = 1, Gamma_111 = -x[2], all else zero.
ConnectionData bench_connection() {
    ConnectionData c(1);
    c.set(1, 1, 1, ScalarCoeff::coordinate(2).scaled(GaussianRational(Rational(-1))));
    return c;
}

WeylElement y_power(int n, int v, unsigned e, GaussianRational coeff = GaussianRational(Rational(1))) {
    YMonomial m(2 * n);
    m.set_exp(v, e);
    WeylElement out(n);
    out.add_term(0, m, ScalarCoeff::constant(coeff));
    return out;
}

// dx^k component-wise y-derivative, used to cross-check the commutator
// with the quadratic base one-form.
WeylForm lowering_part(const WeylElement& a) {
    int n = a.n();
    WeylForm out(n, 1);
    for (const auto& [key, coeff] : a.terms()) {
        for (int v = 1; v <= 2 * n; ++v) {
            unsigned e = key.mono.exp(v);
            if (e == 0)
                continue;
            YMonomial m = key.mono;
            m.set_exp(v, e - 1);
            WeylElement piece(n);
            piece.add_term(key.h, m, coeff.scaled(GaussianRational(Rational(e))));
            out.add_to(v, piece);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("connection coefficient table") {
    ConnectionData c(2);
    c.set(1, 2, 3, ScalarCoeff::constant(GaussianRational(Rational(5))));
    // Any index order reads back the same entry.
    CHECK(c.get(2, 1, 3) == ScalarCoeff::constant(GaussianRational(Rational(5))));
    CHECK(c.get(3, 2, 1) == ScalarCoeff::constant(GaussianRational(Rational(5))));
    CHECK(scalar_is_zero(c.get(1, 1, 1)));

    CHECK_THROWS_AS(c.set(2, 1, 3, ScalarCoeff::constant(GaussianRational(Rational(1)))), Error);
    CHECK_THROWS_AS(c.set(1, 2, 5, ScalarCoeff::constant(GaussianRational(Rational(1)))), Error);
    CHECK_THROWS_AS(c.set(2, 1, 1, ScalarCoeff::constant(GaussianRational(Rational(1)))), Error);
}

TEST_CASE("connection one-form") {
    SUBCASE("single diagonal coefficient") {
        WeylForm g = connection_one_form(bench_connection());
        WeylForm expect(1, 1);
        expect.add_to(1, y_power(1, 1, 2).scaled(ScalarCoeff::coordinate(2))
                             .scaled(GaussianRational(Rational(-1, 2))));
        CHECK(g == expect);
    }
    SUBCASE("off-diagonal coefficient splits with multiplicity") {
        ConnectionData c(1);
        c.set(1, 1, 2, parse_expr("3", 1));
        WeylForm g = connection_one_form(c);

        WeylForm expect(1, 1);
        expect.add_to(2, y_power(1, 1, 2, GaussianRational(Rational(3, 2))));
        WeylElement cross(1);
        YMonomial m(2);
        m.set_exp(1, 1);
        m.set_exp(2, 1);
        cross.add_term(0, m, ScalarCoeff::constant(GaussianRational(Rational(3))));
        expect.add_to(1, cross);
        CHECK(g == expect);
    }
}

TEST_CASE("quadratic base one-form reproduces the lowering operator") {
    Rng rng(2024);
    for (int it = 0; it < 30; ++it) {
        int n = 1 + (it % 2);
        WeylElement a = random_weyl(rng, n, 3, 1, 3, false);
        WeylForm lhs = commutator(omega_y_dx(n), WeylForm::of_element(a)).i_over_h();
        WeylForm rhs = lowering_part(a).scaled(GaussianRational(Rational(-1)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("correction recursion on the benchmark connection") {
    ConnectionData c = bench_connection();
    WeylForm gamma = connection_one_form(c);
    WeylForm curv = curvature(gamma, kUnboundedDeg);
    AbelianCorrection r = abelian_correction(gamma, curv, 7);

    SUBCASE("first correction") {
        WeylForm expect(1, 1);
        expect.add_to(2, y_power(1, 1, 3, GaussianRational(Rational(1, 8))));
        WeylElement mixed(1);
        YMonomial m(2);
        m.set_exp(1, 2);
        m.set_exp(2, 1);
        mixed.add_term(0, m, ScalarCoeff::constant(GaussianRational(Rational(-1, 8))));
        expect.add_to(1, mixed);
        CHECK(r.at(3) == expect);
    }
    SUBCASE("even degrees vanish here") {
        CHECK(r.at(4).is_zero());
        CHECK(r.at(6).is_zero());
    }
    SUBCASE("degree five") {
        WeylForm expect(1, 1);
        expect.add_to(2, y_power(1, 1, 5, GaussianRational(Rational(-1, 128))));
        WeylElement mixed(1);
        YMonomial m(2);
        m.set_exp(1, 4);
        m.set_exp(2, 1);
        mixed.add_term(0, m, ScalarCoeff::constant(GaussianRational(Rational(1, 128))));
        expect.add_to(1, mixed);
        CHECK(r.at(5) == expect);
    }
    SUBCASE("each slice is homogeneous of its own degree") {
        for (int z = 3; z <= 7; ++z)
            for (int u = 0; u <= 2 * 7; ++u)
                if (u != z)
                    CHECK(r.at(z).deg_component(u).is_zero());
    }
    SUBCASE("flat connection gives no correction") {
        ConnectionData flat(1);
        WeylForm g0 = connection_one_form(flat);
        AbelianCorrection r0 = abelian_correction(g0, curvature(g0, kUnboundedDeg), 6);
        for (int z = 3; z <= 6; ++z)
            CHECK(r0.at(z).is_zero());
    }
}

TEST_CASE("section recursion") {
    ConnectionData c = bench_connection();
    WeylForm gamma = connection_one_form(c);
    AbelianCorrection r = abelian_correction(gamma, curvature(gamma, kUnboundedDeg), 6);

    SUBCASE("constants lift to themselves") {
        FlatSection s = flat_section(ScalarCoeff::constant(GaussianRational(Rational(7))), gamma, r, 6);
        for (int z = 1; z <= 6; ++z)
            CHECK(s.by_degree[static_cast<std::size_t>(z)].is_zero());
    }
    SUBCASE("lift of the second coordinate") {
        FlatSection s = flat_section(ScalarCoeff::coordinate(2), gamma, r, 3);
        CHECK(s.by_degree[1] == y_power(1, 2, 1));
        CHECK(s.by_degree[2] ==
              y_power(1, 1, 2).scaled(ScalarCoeff::coordinate(2))
                  .scaled(GaussianRational(Rational(1, 2))));
        WeylElement expect3(1);
        YMonomial m(2);
        m.set_exp(1, 2);
        m.set_exp(2, 1);
        expect3.add_term(0, m, ScalarCoeff::constant(GaussianRational(Rational(1, 8))));
        CHECK(s.by_degree[3] == expect3);
    }
    SUBCASE("flat connection lifts by Taylor expansion") {
        ConnectionData flat(2);
        WeylForm g0 = connection_one_form(flat);
        AbelianCorrection r0 = abelian_correction(g0, curvature(g0, kUnboundedDeg), 5);
        Rng rng(11);
        for (int it = 0; it < 10; ++it) {
            ScalarCoeff a0 = random_poly(rng, 4, 3, 2);
            FlatSection s = flat_section(a0, g0, r0, 5);
            for (int z = 1; z <= 5; ++z)
                CHECK(s.by_degree[static_cast<std::size_t>(z)] == taylor_component(a0, 2, z));
        }
    }
}

TEST_CASE("sections are covariantly constant") {
    ConnectionData c = bench_connection();
    WeylForm gamma = connection_one_form(c);
    int depth = 6;
    AbelianCorrection r = abelian_correction(gamma, curvature(gamma, kUnboundedDeg), depth);
    WeylForm gamma_full = omega_y_dx(1) + gamma + r.total(1);

    Rng rng(99);
    for (int it = 0; it < 6; ++it) {
        ScalarCoeff a0 = random_poly(rng, 2, 3, 3);
        FlatSection s = flat_section(a0, gamma, r, depth);
        WeylElement total = s.total(1);
        WeylForm residual = covariant_d(gamma_full, WeylForm::of_element(total), kUnboundedDeg);
        // The truncation at the chosen depth only leaves residue above it.
        for (int u = 0; u < depth; ++u)
            CHECK(residual.deg_component(u).is_zero());
    }
}

TEST_CASE("y-free projection") {
    WeylElement a(1);
    YMonomial plain(2);
    a.add_term(0, plain, ScalarCoeff::coordinate(1));
    a.add_term(2, plain, ScalarCoeff::constant(GaussianRational(Rational(5))));
    YMonomial withy(2);
    withy.set_exp(1, 1);
    a.add_term(1, withy, ScalarCoeff::coordinate(2));

    auto parts = sigma(a);
    CHECK(parts.size() == 2);
    CHECK(parts.at(0) == ScalarCoeff::coordinate(1));
    CHECK(parts.at(2) == ScalarCoeff::constant(GaussianRational(Rational(5))));
}

TEST_CASE("projected pair contraction") {
    ScalarCoeff one = ScalarCoeff::constant(GaussianRational(Rational(1)));

    SUBCASE("matches the full product on conjugate monomials") {
        Rng rng(5);
        for (int it = 0; it < 40; ++it) {
            int n = 1 + (it % 2);
            YMonomial ma(2 * n), mb(2 * n);
            for (int v = 1; v <= 2 * n; ++v)
                ma.set_exp(v, static_cast<unsigned>(uniform(rng, 0, 3)));
            for (int m = 1; m <= n; ++m) {
                mb.set_exp(m, ma.exp(m + n));
                mb.set_exp(m + n, ma.exp(m));
            }
            unsigned sA = static_cast<unsigned>(uniform(rng, 0, 2));
            unsigned sB = static_cast<unsigned>(uniform(rng, 0, 2));
            ScalarCoeff fA = random_poly(rng, 2 * n, 2, 2);
            ScalarCoeff fB = random_poly(rng, 2 * n, 2, 2);

            auto [k, value] = sigma_circ_complement(ma, fA, sA, mb, fB, sB);

            WeylElement ea(n), eb(n);
            ea.add_term(sA, ma, fA);
            eb.add_term(sB, mb, fB);
            auto projected = sigma(circ(ea, eb, kUnboundedDeg));
            if (scalar_is_zero(value)) {
                CHECK(projected.count(k) == 0);
            } else {
                REQUIRE(projected.count(k) == 1);
                CHECK(projected.at(k) == value);
            }
        }
    }
    SUBCASE("rejects non-conjugate shapes") {
        YMonomial m(2);
        m.set_exp(1, 1);
        CHECK_THROWS_AS(sigma_circ_complement(m, one, 0, m, one, 0), Error);
    }
}

TEST_CASE("pairwise star product") {
    ConnectionData flat(1);
    StarProduct moyal(flat);

    SUBCASE("unit laws") {
        ConnectionData c = bench_connection();
        StarProduct ctx(c);
        ScalarCoeff one = ScalarCoeff::constant(GaussianRational(Rational(1)));
        Rng rng(31);
        for (int it = 0; it < 8; ++it) {
            ScalarCoeff a = random_poly(rng, 2, 3, 3);
            StarResult left = ctx.star(one, a, 3);
            StarResult right = ctx.star(a, one, 3);
            CHECK(left.by_hpower[0] == a);
            CHECK(right.by_hpower[0] == a);
            for (int k = 1; k <= 3; ++k) {
                CHECK(scalar_is_zero(left.by_hpower[static_cast<std::size_t>(k)]));
                CHECK(scalar_is_zero(right.by_hpower[static_cast<std::size_t>(k)]));
            }
        }
    }
    SUBCASE("conjugate coordinates") {
        StarResult s = moyal.star(ScalarCoeff::coordinate(1), ScalarCoeff::coordinate(2), 2);
        CHECK(s.by_hpower[0] == ScalarCoeff::coordinate(1) * ScalarCoeff::coordinate(2));
        CHECK(s.by_hpower[1] ==
              ScalarCoeff::constant(GaussianRational(Rational(0), Rational(-1, 2))));
        CHECK(scalar_is_zero(s.by_hpower[2]));
    }
    SUBCASE("first order is the Poisson bracket") {
        Rng rng(47);
        for (int it = 0; it < 15; ++it) {
            int n = 1 + (it % 2);
            ConnectionData flat_n(n);
            StarProduct ctx(flat_n);
            ScalarCoeff a = random_poly(rng, 2 * n, 3, 2);
            ScalarCoeff b = random_poly(rng, 2 * n, 3, 2);
            StarResult s = ctx.star(a, b, 1);
            ScalarCoeff expect =
                poisson_bracket(a, b, n).scaled(GaussianRational(Rational(0), Rational(-1, 2)));
            CHECK(s.by_hpower[1] == expect);
        }
    }
    SUBCASE("flat case matches the closed-form constant-coefficient product") {
        Rng rng(53);
        for (int it = 0; it < 10; ++it) {
            int hpower = 3;
            ScalarCoeff a = random_poly(rng, 2, 3, 3);
            ScalarCoeff b = random_poly(rng, 2, 3, 3);
            StarResult s = moyal.star(a, b, hpower);

            WeylElement ta(1), tb(1);
            for (int z = 0; z <= 2 * hpower; ++z) {
                ta = ta + taylor_component(a, 1, z);
                tb = tb + taylor_component(b, 1, z);
            }
            auto projected = sigma(circ_oracle(tb, ta));
            for (int k = 0; k <= hpower; ++k) {
                ScalarCoeff want = projected.count(static_cast<unsigned>(k))
                                       ? projected.at(static_cast<unsigned>(k))
                                       : ScalarCoeff();
                CHECK(s.by_hpower[static_cast<std::size_t>(k)] == want);
            }
        }
    }
}

TEST_CASE("benchmark product with an undetermined factor") {
    ConnectionData c = bench_connection();
    StarProduct ctx(c);
    ScalarCoeff a = ScalarCoeff::coordinate(2);
    ScalarCoeff w = parse_expr("w(x[1],x[2])", 1);
    StarResult s = ctx.star(a, w, 5);

    CHECK(s.by_hpower[0] == a * w);
    CHECK(s.by_hpower[1] == parse_expr("1/2*i*w^(1,0)(x[1],x[2])", 1));
    CHECK(s.by_hpower[2] == parse_expr("-1/8*x[2]*w^(0,2)(x[1],x[2])", 1));
    CHECK(scalar_is_zero(s.by_hpower[3]));
    CHECK(s.by_hpower[4] == parse_expr("-1/128*x[2]*w^(0,4)(x[1],x[2])", 1));
    CHECK(scalar_is_zero(s.by_hpower[5]));
}

TEST_CASE("composed product agrees with the pairwise one") {
    Rng rng(71);
    for (int it = 0; it < 6; ++it) {
        ConnectionData c(1);
        c.set(1, 1, 1, random_poly(rng, 2, 1, 1));
        c.set(1, 1, 2, random_poly(rng, 2, 1, 1));
        StarProduct ctx(c);
        ScalarCoeff a = random_poly(rng, 2, 2, 2);
        ScalarCoeff b = random_poly(rng, 2, 2, 2);
        StarResult quick = ctx.star(a, b, 3);
        StarResult full = ctx.star_full(a, b, 3);
        for (int k = 0; k <= 3; ++k)
            CHECK(quick.by_hpower[static_cast<std::size_t>(k)] ==
                  full.by_hpower[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("order-by-order associativity") {
    Rng rng(83);
    int hpower = 2;
    for (int it = 0; it < 5; ++it) {
        ConnectionData c(1);
        c.set(1, 1, 1, random_poly(rng, 2, 1, 1));
        c.set(1, 2, 2, random_poly(rng, 2, 1, 1));
        StarProduct ctx(c);
        ScalarCoeff a = random_poly(rng, 2, 2, 2);
        ScalarCoeff b = random_poly(rng, 2, 2, 2);
        ScalarCoeff cc = random_poly(rng, 2, 2, 2);

        StarResult ab = ctx.star(a, b, hpower);
        StarResult bc = ctx.star(b, cc, hpower);
        auto left = star_into(ctx, ab.by_hpower, cc, hpower, true);
        auto right = star_into(ctx, bc.by_hpower, a, hpower, false);
        for (int k = 0; k <= hpower; ++k)
            CHECK(left[static_cast<std::size_t>(k)] == right[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("intermediates are off by default and sliced when requested") {
    ConnectionData c = bench_connection();
    StarProduct ctx(c);
    ScalarCoeff a = ScalarCoeff::coordinate(1);
    ScalarCoeff b = ScalarCoeff::coordinate(2);

    StarResult bare = ctx.star(a, b, 2);
    CHECK(!bare.intermediates.has_value());

    StarOptions opt;
    opt.keep_intermediates = true;
    StarResult rich = ctx.star(a, b, 2, opt);
    REQUIRE(rich.intermediates.has_value());
    // The recursion runs to degree 2*hpower - 1; that is what gets reported.
    CHECK(rich.intermediates->correction.z_max == 3);
    CHECK(rich.intermediates->lift_a.by_degree.size() == 4);
    CHECK(rich.intermediates->lift_b.by_degree.size() == 4);
    CHECK(rich.intermediates->gamma == ctx.gamma());
}
