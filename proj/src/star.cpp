#include "fedosov/star.hpp"

#include <algorithm>

#include "fedosov/errors.hpp"

namespace fedosov {

ConnectionData::ConnectionData(int n) : n_(n) {
    if (n < 1)
        throw DimensionError("half-dimension must be at least 1");
}

void ConnectionData::set(int i, int j, int k, ScalarCoeff value) {
    if (i < 1 || i > j || j > k || k > 2 * n_)
        throw DimensionError("connection triple must ascend within 1..2n");
    auto [it, inserted] = coeffs_.emplace(std::array<int, 3>{i, j, k}, std::move(value));
    if (!inserted)
        throw Error("duplicate connection triple (" + std::to_string(i) + "," +
                    std::to_string(j) + "," + std::to_string(k) + ")");
}

ScalarCoeff ConnectionData::get(int i, int j, int k) const {
    std::array<int, 3> key{i, j, k};
    std::sort(key.begin(), key.end());
    if (key[0] < 1 || key[2] > 2 * n_)
        throw DimensionError("connection index out of range 1..2n");
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? ScalarCoeff{} : it->second;
}

WeylForm connection_one_form(const ConnectionData& c) {
    const int n = c.n();
    WeylForm out(n, 1);
    for (int k = 1; k <= 2 * n; ++k) {
        std::map<std::vector<int>, ScalarCoeff> pair_components;
        for (int i = 1; i <= 2 * n; ++i) {
            for (int j = i; j <= 2 * n; ++j) {
                ScalarCoeff g = c.get(i, j, k);
                if (!g.is_zero())
                    pair_components[{i, j}] = std::move(g);
            }
        }
        if (pair_components.empty())
            continue;
        out.add_to(k, sym_tensor_to_poly(n, 2, pair_components)
                          .scaled(GaussianRational(Rational(1, 2))));
    }
    return out;
}

WeylForm omega_y_dx(int n) {
    WeylForm out(n, 1);
    for (int v = 1; v <= n; ++v) {
        out.add_to(v + n, WeylElement::unit_y(n, v));
        out.add_to(v, -WeylElement::unit_y(n, v + n));
    }
    return out;
}

WeylForm AbelianCorrection::total(int n) const {
    WeylForm sum(n, 1);
    for (int z = 3; z <= z_max; ++z)
        sum += at(z);
    return sum;
}

namespace {

void check_homogeneous(const WeylForm& f, int z, const char* what) {
    if (f.deg_component(z) != f)
        throw Error(std::string(what) + "[" + std::to_string(z) +
                    "] is not degree-homogeneous");
}

}  // namespace

AbelianCorrection abelian_correction(const WeylForm& gamma, const WeylForm& curvature_form,
                                     int z_max) {
    const int n = gamma.n();
    AbelianCorrection r;
    r.z_max = std::max(z_max, 2);
    r.by_degree.assign(static_cast<std::size_t>(r.z_max) + 1, WeylForm(n, 1));
    if (z_max < 3)
        return r;

    r.by_degree[3] = delta_inv(curvature_form);
    check_homogeneous(r.by_degree[3], 3, "r");
    for (int z = 4; z <= z_max; ++z) {
        WeylForm two_form = covariant_d(gamma, r.at(z - 1));
        WeylForm products(n, 2);
        for (int j = 3; j <= z - 2; ++j)
            products += wedge11(r.at(j), r.at(z + 1 - j));
        if (!products.is_zero())
            two_form += products.i_over_h();
        r.by_degree[static_cast<std::size_t>(z)] = delta_inv(two_form);
        check_homogeneous(r.at(z), z, "r");
    }
    return r;
}

WeylElement FlatSection::total(int n) const {
    WeylElement sum(n);
    for (const auto& part : by_degree)
        sum += part;
    return sum;
}

FlatSection flat_section(const ScalarCoeff& a0, const WeylForm& gamma,
                         const AbelianCorrection& r, int z_max) {
    const int n = gamma.n();
    FlatSection out;
    out.base = a0;
    out.by_degree.reserve(static_cast<std::size_t>(z_max) + 1);
    out.by_degree.push_back(WeylElement::scalar(n, a0));
    for (int z = 1; z <= z_max; ++z) {
        WeylForm one_form =
            covariant_d(gamma, WeylForm::of_element(out.by_degree[static_cast<std::size_t>(z - 1)]));
        WeylForm commutators(n, 1);
        for (int l = 1; l <= z - 2; ++l) {
            int idx = z + 1 - l;
            if (idx > r.z_max)
                throw Error("correction series too shallow for the requested lift depth");
            commutators += commutator(r.at(idx),
                                      WeylForm::of_element(out.by_degree[static_cast<std::size_t>(l)]));
        }
        if (!commutators.is_zero())
            one_form += commutators.i_over_h();
        WeylElement next = delta_inv(one_form).at();
        WeylForm wrapped = WeylForm::of_element(next);
        check_homogeneous(wrapped, z, "lift");
        out.by_degree.push_back(std::move(next));
    }
    return out;
}

std::map<unsigned, ScalarCoeff> sigma(const WeylElement& a) {
    std::map<unsigned, ScalarCoeff> out;
    for (const auto& [key, c] : a.terms())
        if (key.mono.total_degree() == 0)
            out[key.h] = c;
    return out;
}

namespace {

YMonomial half_swap(const YMonomial& m) {
    const int two_n = m.size();
    const int n = two_n / 2;
    YMonomial out(two_n);
    for (int v = 1; v <= n; ++v) {
        out.set_exp(v, m.exp(v + n));
        out.set_exp(v + n, m.exp(v));
    }
    return out;
}

GaussianRational i_half_power(unsigned t) {
    Rational mag(BigInt(1), BigInt(1) << t);
    switch (t % 4) {
        case 0: return GaussianRational(mag);
        case 1: return GaussianRational(Rational(0), mag);
        case 2: return GaussianRational(-mag);
        default: return GaussianRational(Rational(0), -mag);
    }
}

}  // namespace

std::pair<unsigned, ScalarCoeff> sigma_circ_complement(const YMonomial& I, const ScalarCoeff& fA,
                                                       unsigned sA, const YMonomial& J,
                                                       const ScalarCoeff& fB, unsigned sB) {
    if (I.size() != J.size() || half_swap(I) != J)
        throw Error("sigma_circ_complement requires half-swapped exponent patterns");
    const int two_n = I.size();
    const int n = two_n / 2;
    unsigned total = I.total_degree();
    BigInt factorials = 1;
    unsigned second_half = 0;
    for (int m = 1; m <= two_n; ++m) {
        factorials *= factorial(I.exp(m));
        if (m > n)
            second_half += I.exp(m);
    }
    GaussianRational g = i_half_power(total);
    if (second_half % 2 == 1)
        g = -g;
    g *= GaussianRational(Rational(factorials));
    return {sA + sB + total, (fA * fB).scaled(g)};
}

StarProduct::StarProduct(ConnectionData connection)
    : connection_(std::move(connection)),
      gamma_(connection_one_form(connection_)),
      curvature_(curvature(gamma_)),
      correction_{2, std::vector<WeylForm>(3, WeylForm(connection_.n(), 1))} {}

const AbelianCorrection& StarProduct::correction(int z_max) {
    if (z_max > correction_.z_max)
        correction_ = abelian_correction(gamma_, curvature_, z_max);
    return correction_;
}

FlatSection StarProduct::lift(const ScalarCoeff& a0, int z_max) {
    return flat_section(a0, gamma_, correction(z_max), z_max);
}

namespace {

// sigma of the o-product of two homogeneous lift components, collected at
// h-power k. Only half-swapped monomial pairs survive the projection, so the
// shorter term list drives the lookup into the other.
ScalarCoeff project_pair(const WeylElement& left, const WeylElement& right, int k) {
    ScalarCoeff out;
    const bool left_drives = left.terms().size() <= right.terms().size();
    const WeylElement& drive = left_drives ? left : right;
    const WeylElement& other = left_drives ? right : left;
    for (const auto& [key, f] : drive.terms()) {
        unsigned ydeg = key.mono.total_degree();
        int other_h = k - static_cast<int>(key.h) - static_cast<int>(ydeg);
        if (other_h < 0)
            continue;
        YMonomial partner = half_swap(key.mono);
        auto it = other.terms().find(WeylKey{static_cast<unsigned>(other_h), partner});
        if (it == other.terms().end())
            continue;
        auto [hk, value] = left_drives
                               ? sigma_circ_complement(key.mono, f, key.h, partner, it->second,
                                                       static_cast<unsigned>(other_h))
                               : sigma_circ_complement(partner, it->second,
                                                       static_cast<unsigned>(other_h), key.mono,
                                                       f, key.h);
        if (hk != static_cast<unsigned>(k))
            throw Error("h-power bookkeeping mismatch in star projection");
        out += value;
    }
    return out;
}

void attach_intermediates(StarResult& result, const StarProduct& ctx,
                          const AbelianCorrection& r, int z_max, FlatSection la,
                          FlatSection lb) {
    AbelianCorrection sliced;
    sliced.z_max = z_max;
    sliced.by_degree.assign(r.by_degree.begin(),
                            r.by_degree.begin() + std::min<std::size_t>(r.by_degree.size(),
                                                                        static_cast<std::size_t>(z_max) + 1));
    while (static_cast<int>(sliced.by_degree.size()) <= z_max)
        sliced.by_degree.push_back(WeylForm(ctx.n(), 1));
    result.intermediates = StarIntermediates{ctx.gamma(), ctx.gamma_curvature(),
                                             std::move(sliced), std::move(la), std::move(lb)};
}

}  // namespace

StarResult StarProduct::star(const ScalarCoeff& a0, const ScalarCoeff& b0, int hpower,
                             const StarOptions& options) {
    if (hpower < 1)
        throw Error("hpower must be a positive integer");
    const int z_max = 2 * hpower - 1;
    const AbelianCorrection& r = correction(z_max);
    FlatSection la = flat_section(a0, gamma_, r, z_max);
    FlatSection lb = flat_section(b0, gamma_, r, z_max);
    return star_from_lifts(la, lb, hpower, options);
}

StarResult StarProduct::star_from_lifts(const FlatSection& la, const FlatSection& lb, int hpower,
                                        const StarOptions& options) {
    if (hpower < 1)
        throw Error("hpower must be a positive integer");
    const int z_max = 2 * hpower - 1;
    if (static_cast<int>(la.by_degree.size()) <= z_max ||
        static_cast<int>(lb.by_degree.size()) <= z_max)
        throw Error("sections are too shallow for the requested order");

    StarResult out;
    out.by_hpower.resize(static_cast<std::size_t>(hpower) + 1);
    out.by_hpower[0] = la.base * lb.base;
    for (int k = 1; k <= hpower; ++k) {
        ScalarCoeff acc;
        for (int l = 1; l <= 2 * k - 1; ++l)
            acc += project_pair(lb.by_degree[static_cast<std::size_t>(l)],
                                la.by_degree[static_cast<std::size_t>(2 * k - l)], k);
        out.by_hpower[static_cast<std::size_t>(k)] = std::move(acc);
    }
    if (options.keep_intermediates)
        attach_intermediates(out, *this, correction(z_max), z_max, la, lb);
    return out;
}

StarResult StarProduct::star_full(const ScalarCoeff& a0, const ScalarCoeff& b0, int hpower,
                                  const StarOptions& options) {
    if (hpower < 1)
        throw Error("hpower must be a positive integer");
    const int z_max = 2 * hpower - 1;
    const AbelianCorrection& r = correction(z_max);
    FlatSection la = flat_section(a0, gamma_, r, z_max);
    FlatSection lb = flat_section(b0, gamma_, r, z_max);

    WeylElement product = circ(lb.total(n()), la.total(n()), 2 * hpower);
    std::map<unsigned, ScalarCoeff> projected = sigma(product);

    StarResult out;
    out.by_hpower.resize(static_cast<std::size_t>(hpower) + 1);
    for (auto& [k, c] : projected)
        if (k <= static_cast<unsigned>(hpower))
            out.by_hpower[k] = std::move(c);
    if (options.keep_intermediates)
        attach_intermediates(out, *this, r, z_max, std::move(la), std::move(lb));
    return out;
}

}  // namespace fedosov
