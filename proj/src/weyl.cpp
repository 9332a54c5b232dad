#include "fedosov/weyl.hpp"

#include <array>
#include <mutex>
#include <sstream>

#include "fedosov/errors.hpp"

namespace fedosov {

unsigned YMonomial::total_degree() const {
    unsigned d = 0;
    for (unsigned e : exps_)
        d += e;
    return d;
}

YMonomial YMonomial::operator*(const YMonomial& o) const {
    YMonomial out = *this;
    for (std::size_t m = 0; m < exps_.size(); ++m)
        out.exps_[m] += o.exps_[m];
    return out;
}

std::strong_ordering YMonomial::operator<=>(const YMonomial& o) const {
    if (auto c = total_degree() <=> o.total_degree(); c != 0)
        return c;
    return exps_ <=> o.exps_;
}

WeylElement::WeylElement(int n) : n_(n) {
    if (n < 1)
        throw DimensionError("half-dimension must be at least 1");
}

WeylElement WeylElement::scalar(int n, ScalarCoeff c) {
    WeylElement out(n);
    out.add_term(0, YMonomial(2 * n), c);
    return out;
}

WeylElement WeylElement::unit_y(int n, int i) {
    if (i < 1 || i > 2 * n)
        throw DimensionError("y index out of range 1..2n");
    WeylElement out(n);
    out.add_term(0, YMonomial::unit(2 * n, i), ScalarCoeff::constant(GaussianRational(1)));
    return out;
}

void WeylElement::add_term(unsigned h, const YMonomial& mono, const ScalarCoeff& c) {
    if (c.is_zero())
        return;
    if (mono.size() != 2 * n_)
        throw DimensionError("monomial length does not match dimension");
    WeylKey key{h, mono};
    auto [it, inserted] = terms_.emplace(std::move(key), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

int WeylElement::max_degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_)
        d = std::max(d, term_degree(key));
    return d;
}

WeylElement WeylElement::operator-() const {
    WeylElement out(n_);
    for (const auto& [key, c] : terms_)
        out.terms_.emplace(key, -c);
    return out;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    if (o.n_ != n_)
        throw DimensionError("dimension mismatch in Weyl addition");
    for (const auto& [key, c] : o.terms_)
        add_term(key.h, key.mono, c);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
    if (o.n_ != n_)
        throw DimensionError("dimension mismatch in Weyl subtraction");
    for (const auto& [key, c] : o.terms_)
        add_term(key.h, key.mono, -c);
    return *this;
}

WeylElement WeylElement::scaled(const ScalarCoeff& c) const {
    WeylElement out(n_);
    for (const auto& [key, coeff] : terms_)
        out.add_term(key.h, key.mono, coeff * c);
    return out;
}

WeylElement WeylElement::scaled(const GaussianRational& c) const {
    WeylElement out(n_);
    for (const auto& [key, coeff] : terms_)
        out.add_term(key.h, key.mono, coeff.scaled(c));
    return out;
}

WeylElement WeylElement::times_h(unsigned k) const {
    WeylElement out(n_);
    for (const auto& [key, coeff] : terms_)
        out.terms_.emplace(WeylKey{key.h + k, key.mono}, coeff);
    return out;
}

WeylElement WeylElement::div_h(unsigned k) const {
    WeylElement out(n_);
    for (const auto& [key, coeff] : terms_) {
        if (key.h < k)
            throw DivisionByH("h^" + std::to_string(k) +
                              " does not divide a term of h-power " + std::to_string(key.h));
        out.terms_.emplace(WeylKey{key.h - k, key.mono}, coeff);
    }
    return out;
}

WeylElement deg_component(const WeylElement& a, int z) {
    WeylElement out(a.n());
    for (const auto& [key, c] : a.terms())
        if (term_degree(key) == z)
            out.add_term(key.h, key.mono, c);
    return out;
}

std::vector<Rational> circ_pair(unsigned r, unsigned j, unsigned s, unsigned k) {
    static std::map<std::array<unsigned, 4>, std::vector<Rational>> memo;
    static std::mutex memo_mutex;

    std::array<unsigned, 4> args{r, j, s, k};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        if (auto it = memo.find(args); it != memo.end())
            return it->second;
    }

    unsigned t_max = std::min(r, k) + std::min(j, s);
    std::vector<Rational> out(t_max + 1);
    BigInt lead = factorial(r) * factorial(j) * factorial(s) * factorial(k);
    for (unsigned t = 0; t <= t_max; ++t) {
        int a_lo = std::max({static_cast<int>(t) - static_cast<int>(r),
                             static_cast<int>(t) - static_cast<int>(k), 0});
        int a_hi = std::min({j, s, t});
        Rational sum = 0;
        for (int a = a_lo; a <= static_cast<int>(a_hi); ++a) {
            BigInt den = factorial(static_cast<unsigned>(a)) * factorial(t - a) *
                         factorial(r - t + a) * factorial(j - a) * factorial(s - a) *
                         factorial(k - t + a);
            sum += Rational(a % 2 == 0 ? 1 : -1, den);
        }
        out[t] = Rational(lead) * sum;
    }

    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(args, out);
    return out;
}

namespace {

// (i/2)^t as an exact Gaussian rational.
GaussianRational i_over_2_pow(unsigned t) {
    Rational mag(BigInt(1), BigInt(1) << t);
    switch (t % 4) {
        case 0: return GaussianRational(mag);
        case 1: return GaussianRational(Rational(0), mag);
        case 2: return GaussianRational(-mag);
        default: return GaussianRational(Rational(0), -mag);
    }
}

}  // namespace

WeylElement circ_mono(int n, const YMonomial& I, const YMonomial& J) {
    std::vector<std::vector<Rational>> tables(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v)
        tables[v - 1] = circ_pair(I.exp(v), I.exp(v + n), J.exp(v), J.exp(v + n));

    WeylElement out(n);
    std::vector<unsigned> t(static_cast<std::size_t>(n), 0);
    while (true) {
        Rational c = 1;
        unsigned total_t = 0;
        for (int v = 1; v <= n; ++v) {
            c *= tables[v - 1][t[v - 1]];
            total_t += t[v - 1];
        }
        if (!c.is_zero()) {
            YMonomial mono(2 * n);
            for (int v = 1; v <= n; ++v) {
                mono.set_exp(v, I.exp(v) + J.exp(v) - t[v - 1]);
                mono.set_exp(v + n, I.exp(v + n) + J.exp(v + n) - t[v - 1]);
            }
            GaussianRational g = i_over_2_pow(total_t);
            out.add_term(total_t, mono, ScalarCoeff::constant(GaussianRational(c) * g));
        }
        // odometer over the per-pair t choices
        int v = 0;
        while (v < n && ++t[v] >= tables[v].size()) {
            t[v] = 0;
            ++v;
        }
        if (v == n)
            break;
    }
    return out;
}

WeylElement circ(const WeylElement& a, const WeylElement& b, int max_deg) {
    if (a.n() != b.n())
        throw DimensionError("dimension mismatch in circ");
    WeylElement out(a.n());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (max_deg != kUnboundedDeg && term_degree(ka) + term_degree(kb) > max_deg)
                continue;
            ScalarCoeff cc = ca * cb;
            WeylElement mono = circ_mono(a.n(), ka.mono, kb.mono);
            for (const auto& [km, cm] : mono.terms())
                out.add_term(ka.h + kb.h + km.h, km.mono, cm * cc);
        }
    }
    return out;
}

namespace {

Rational falling(unsigned e, unsigned d) {
    BigInt out = 1;
    for (unsigned m = 0; m < d; ++m)
        out *= (e - m);
    return Rational(out);
}

}  // namespace

WeylElement circ_oracle(const WeylElement& a, const WeylElement& b) {
    if (a.n() != b.n())
        throw DimensionError("dimension mismatch in circ_oracle");
    const int n = a.n();
    const int two_n = 2 * n;
    const Symplectic omega{n};
    WeylElement out(n);

    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            ScalarCoeff cc = ca * cb;
            // alpha[m] counts derivatives of a along y^{m+1}; b is then
            // differentiated along the conjugate directions. The t-sum of the
            // defining product collapses to this box because higher
            // y-derivatives annihilate the monomials.
            std::vector<unsigned> lim(static_cast<std::size_t>(two_n));
            for (int m = 1; m <= two_n; ++m)
                lim[m - 1] = std::min(ka.mono.exp(m), kb.mono.exp(omega.conj(m)));
            std::vector<unsigned> alpha(static_cast<std::size_t>(two_n), 0);
            while (true) {
                unsigned t = 0;
                Rational num = 1;
                int sign = 1;
                for (int m = 1; m <= two_n; ++m) {
                    unsigned am = alpha[m - 1];
                    if (am > 0) {
                        t += am;
                        num *= falling(ka.mono.exp(m), am) * falling(kb.mono.exp(omega.conj(m)), am) /
                               Rational(factorial(am));
                        int w = omega.upper(m, omega.conj(m));
                        if (w < 0 && am % 2 == 1)
                            sign = -sign;
                    }
                }
                // (-ih/2)^t/t! times the t!/prod(alpha!) arrangements is
                // already folded into num via the per-direction factorials.
                GaussianRational g = i_over_2_pow(t) * GaussianRational(Rational(sign));
                if (t % 2 == 1)
                    g = -g;  // (-i)^t = (-1)^t i^t
                YMonomial mono(two_n);
                for (int m = 1; m <= two_n; ++m)
                    mono.set_exp(m, ka.mono.exp(m) - alpha[m - 1] + kb.mono.exp(m) -
                                        alpha[omega.conj(m) - 1]);
                out.add_term(ka.h + kb.h + t, mono, cc.scaled(GaussianRational(num) * g));
                int m = 0;
                while (m < two_n && ++alpha[m] > lim[m]) {
                    alpha[m] = 0;
                    ++m;
                }
                if (m == two_n)
                    break;
            }
        }
    }
    return out;
}

WeylElement sym_tensor_to_poly(int n, int l,
                               const std::map<std::vector<int>, ScalarCoeff>& components) {
    WeylElement out(n);
    for (const auto& [tuple, c] : components) {
        if (static_cast<int>(tuple.size()) != l)
            throw DimensionError("tensor index tuple has wrong length");
        YMonomial mono(2 * n);
        int prev = 1;
        for (int j : tuple) {
            if (j < prev || j > 2 * n)
                throw DimensionError("tensor index tuple must ascend within 1..2n");
            prev = j;
            mono.set_exp(j, mono.exp(j) + 1);
        }
        BigInt denom = 1;
        for (int m = 1; m <= 2 * n; ++m)
            denom *= factorial(mono.exp(m));
        Rational multinomial(factorial(static_cast<unsigned>(l)), denom);
        out.add_term(0, mono, c.scaled(GaussianRational(multinomial)));
    }
    return out;
}

std::string render_weyl(const WeylElement& a, RenderStyle style) {
    if (a.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : a.terms()) {
        std::ostringstream tail;
        if (key.h == 1)
            tail << "h";
        else if (key.h > 1)
            tail << "h^" << key.h;
        for (int m = 1; m <= a.two_n(); ++m) {
            unsigned e = key.mono.exp(m);
            if (e == 0)
                continue;
            if (tail.tellp() > 0)
                tail << "*";
            tail << "y[" << m << "]";
            if (e > 1)
                tail << "^" << e;
        }
        std::string term;
        std::string monos = tail.str();
        if (monos.empty()) {
            term = render_expr(c, style);
            if (c.terms().size() > 1)
                term = "(" + term + ")";
        } else if (c == ScalarCoeff::constant(GaussianRational(1))) {
            term = monos;
        } else if (c == ScalarCoeff::constant(GaussianRational(-1))) {
            term = "-" + monos;
        } else if (c.terms().size() == 1) {
            term = render_expr(c, style) + "*" + monos;
        } else {
            term = "(" + render_expr(c, style) + ")*" + monos;
        }
        if (first) {
            out << term;
            first = false;
        } else if (!term.empty() && term[0] == '-') {
            out << " - " << term.substr(1);
        } else {
            out << " + " << term;
        }
    }
    return out.str();
}

}  // namespace fedosov
