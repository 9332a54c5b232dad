#include "fedosov/forms.hpp"

#include <sstream>

#include "fedosov/errors.hpp"

namespace fedosov {

namespace {

std::size_t component_count(int n, int degree) {
    switch (degree) {
        case 0: return 1;
        case 1: return static_cast<std::size_t>(2 * n);
        case 2: return static_cast<std::size_t>(n * (2 * n - 1));
        default: throw DimensionError("form degree must be 0, 1 or 2");
    }
}

}  // namespace

WeylForm::WeylForm(int n, int degree)
    : n_(n), degree_(degree), comps_(component_count(n, degree), WeylElement(n)) {}

WeylForm WeylForm::of_element(WeylElement e) {
    WeylForm out(e.n(), 0);
    out.comps_[0] = std::move(e);
    return out;
}

std::size_t WeylForm::pair_index(int j, int s) const {
    if (j < 1 || s <= j || s > two_n())
        throw DimensionError("2-form component indices must satisfy 1 <= j < s <= 2n");
    std::size_t before = static_cast<std::size_t>(j - 1) * (2 * n_) -
                         static_cast<std::size_t>(j * (j - 1) / 2);
    return before + static_cast<std::size_t>(s - j - 1);
}

const WeylElement& WeylForm::at() const {
    if (degree_ != 0)
        throw DimensionError("scalar access on a form of nonzero degree");
    return comps_[0];
}

const WeylElement& WeylForm::at(int s) const {
    if (degree_ != 1)
        throw DimensionError("dx component access on a form of degree != 1");
    if (s < 1 || s > two_n())
        throw DimensionError("dx index out of range");
    return comps_[static_cast<std::size_t>(s - 1)];
}

const WeylElement& WeylForm::at(int j, int s) const {
    if (degree_ != 2)
        throw DimensionError("dx^dx component access on a form of degree != 2");
    return comps_[pair_index(j, s)];
}

void WeylForm::add_to(const WeylElement& e) {
    if (degree_ != 0)
        throw DimensionError("scalar write on a form of nonzero degree");
    comps_[0] += e;
}

void WeylForm::add_to(int s, const WeylElement& e) {
    if (degree_ != 1)
        throw DimensionError("dx component write on a form of degree != 1");
    if (s < 1 || s > two_n())
        throw DimensionError("dx index out of range");
    comps_[static_cast<std::size_t>(s - 1)] += e;
}

void WeylForm::add_to(int j, int s, const WeylElement& e) {
    if (degree_ != 2)
        throw DimensionError("dx^dx component write on a form of degree != 2");
    comps_[pair_index(j, s)] += e;
}

bool WeylForm::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero())
            return false;
    return true;
}

int WeylForm::max_degree() const {
    int d = -1;
    for (const auto& c : comps_)
        d = std::max(d, c.max_degree());
    return d;
}

WeylForm WeylForm::operator-() const {
    WeylForm out(n_, degree_);
    for (std::size_t m = 0; m < comps_.size(); ++m)
        out.comps_[m] = -comps_[m];
    return out;
}

WeylForm& WeylForm::operator+=(const WeylForm& o) {
    if (o.n_ != n_ || o.degree_ != degree_)
        throw DimensionError("form mismatch in addition");
    for (std::size_t m = 0; m < comps_.size(); ++m)
        comps_[m] += o.comps_[m];
    return *this;
}

WeylForm& WeylForm::operator-=(const WeylForm& o) {
    if (o.n_ != n_ || o.degree_ != degree_)
        throw DimensionError("form mismatch in subtraction");
    for (std::size_t m = 0; m < comps_.size(); ++m)
        comps_[m] -= o.comps_[m];
    return *this;
}

WeylForm WeylForm::scaled(const GaussianRational& c) const {
    WeylForm out(n_, degree_);
    for (std::size_t m = 0; m < comps_.size(); ++m)
        out.comps_[m] = comps_[m].scaled(c);
    return out;
}

WeylForm WeylForm::deg_component(int z) const {
    WeylForm out(n_, degree_);
    for (std::size_t m = 0; m < comps_.size(); ++m)
        out.comps_[m] = fedosov::deg_component(comps_[m], z);
    return out;
}

WeylForm WeylForm::i_over_h() const {
    WeylForm out(n_, degree_);
    for (std::size_t m = 0; m < comps_.size(); ++m)
        out.comps_[m] = comps_[m].scaled(GaussianRational::i()).div_h(1);
    return out;
}

WeylForm wedge11(const WeylForm& a, const WeylForm& b, int max_deg) {
    if (a.n() != b.n())
        throw DimensionError("dimension mismatch in wedge11");
    if (a.degree() != 1 || b.degree() != 1)
        throw DimensionError("wedge11 expects two 1-forms");
    WeylForm out(a.n(), 2);
    for (int j = 1; j <= a.two_n(); ++j)
        for (int s = j + 1; s <= a.two_n(); ++s)
            out.add_to(j, s, circ(a.at(j), b.at(s), max_deg) - circ(a.at(s), b.at(j), max_deg));
    return out;
}

WeylForm commutator(const WeylForm& a, const WeylForm& b, int max_deg) {
    if (a.n() != b.n())
        throw DimensionError("dimension mismatch in commutator");
    int m1 = a.degree();
    int m2 = b.degree();
    if (m1 + m2 > 2)
        throw DimensionError("commutator supports total form degree <= 2");
    // [a,b] = a o b - (-1)^{m1 m2} b o a; the sign only bites for two 1-forms.
    if (m1 == 1 && m2 == 1)
        return wedge11(a, b, max_deg) + wedge11(b, a, max_deg);
    if (m1 == 0 && m2 == 0)
        return WeylForm::of_element(circ(a.at(), b.at(), max_deg) -
                                    circ(b.at(), a.at(), max_deg));
    const WeylForm& scalar = m1 == 0 ? a : b;
    const WeylForm& formed = m1 == 0 ? b : a;
    WeylForm out(a.n(), formed.degree());
    auto each = [&](const WeylElement& comp, auto put) {
        WeylElement v = m1 == 0 ? circ(scalar.at(), comp, max_deg) - circ(comp, scalar.at(), max_deg)
                                : circ(comp, scalar.at(), max_deg) - circ(scalar.at(), comp, max_deg);
        put(v);
    };
    if (formed.degree() == 1) {
        for (int s = 1; s <= a.two_n(); ++s)
            each(formed.at(s), [&](const WeylElement& v) { out.add_to(s, v); });
    } else {
        for (int j = 1; j <= a.two_n(); ++j)
            for (int s = j + 1; s <= a.two_n(); ++s)
                each(formed.at(j, s), [&](const WeylElement& v) { out.add_to(j, s, v); });
    }
    return out;
}

namespace {

WeylElement differentiate_weyl(const WeylElement& a, int i) {
    WeylElement out(a.n());
    for (const auto& [key, c] : a.terms())
        out.add_term(key.h, key.mono, differentiate(c, i));
    return out;
}

}  // namespace

WeylForm exterior_d(const WeylForm& a) {
    if (a.degree() == 0) {
        WeylForm out(a.n(), 1);
        for (int s = 1; s <= a.two_n(); ++s)
            out.add_to(s, differentiate_weyl(a.at(), s));
        return out;
    }
    if (a.degree() == 1) {
        WeylForm out(a.n(), 2);
        for (int j = 1; j <= a.two_n(); ++j)
            for (int s = j + 1; s <= a.two_n(); ++s)
                out.add_to(j, s, differentiate_weyl(a.at(s), j) - differentiate_weyl(a.at(j), s));
        return out;
    }
    throw DimensionError("exterior_d is defined on forms of degree 0 and 1");
}

namespace {

// (1/(l+shift)) e * y^j with l the y-degree of each term.
WeylElement raise_by_y(const WeylElement& e, int j, int shift) {
    WeylElement out(e.n());
    for (const auto& [key, c] : e.terms()) {
        unsigned l = key.mono.total_degree();
        YMonomial mono = key.mono;
        mono.set_exp(j, mono.exp(j) + 1);
        out.add_term(key.h, mono,
                     c.scaled(GaussianRational(Rational(1, static_cast<int>(l) + shift))));
    }
    return out;
}

}  // namespace

WeylForm delta_inv(const WeylForm& a) {
    if (a.degree() == 1) {
        WeylForm out(a.n(), 0);
        for (int j = 1; j <= a.two_n(); ++j)
            out.add_to(raise_by_y(a.at(j), j, 1));
        return out;
    }
    if (a.degree() == 2) {
        WeylForm out(a.n(), 1);
        for (int j = 1; j <= a.two_n(); ++j) {
            for (int s = j + 1; s <= a.two_n(); ++s) {
                const WeylElement& e = a.at(j, s);
                out.add_to(s, raise_by_y(e, j, 2));
                out.add_to(j, -raise_by_y(e, s, 2));
            }
        }
        return out;
    }
    throw DimensionError("delta_inv is defined on forms of degree 1 and 2");
}

WeylForm covariant_d(const WeylForm& gamma, const WeylForm& a, int max_deg) {
    if (gamma.degree() != 1)
        throw DimensionError("covariant_d expects a degree-1 connection form");
    if (a.degree() > 1)
        throw DimensionError("covariant_d acts on forms of degree 0 and 1");
    // the division by h lowers term degrees by 2, so the commutator must be
    // kept two degrees deeper than the requested bound
    int comm_deg = max_deg == kUnboundedDeg ? kUnboundedDeg : max_deg + 2;
    WeylForm comm = commutator(gamma, a, comm_deg);
    return exterior_d(a) + comm.i_over_h();
}

WeylForm curvature(const WeylForm& gamma, int max_deg) {
    if (gamma.degree() != 1)
        throw DimensionError("curvature expects a degree-1 connection form");
    int prod_deg = max_deg == kUnboundedDeg ? kUnboundedDeg : max_deg + 2;
    return exterior_d(gamma) + wedge11(gamma, gamma, prod_deg).i_over_h();
}

std::string render_form(const WeylForm& a, RenderStyle style) {
    if (a.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const WeylElement& e, const std::string& dx) {
        if (e.is_zero())
            return;
        std::string body = render_weyl(e, style);
        bool negated = false;
        if (e.terms().size() > 1) {
            body = "(" + body + ")";
        } else if (!body.empty() && body[0] == '-') {
            negated = true;
            body = body.substr(1);
        }
        if (first) {
            out << (negated ? "-" : "") << body << dx;
            first = false;
        } else {
            out << (negated ? " - " : " + ") << body << dx;
        }
    };
    if (a.degree() == 0) {
        emit(a.at(), "");
    } else if (a.degree() == 1) {
        for (int s = 1; s <= a.two_n(); ++s)
            emit(a.at(s), " dx[" + std::to_string(s) + "]");
    } else {
        for (int j = 1; j <= a.two_n(); ++j)
            for (int s = j + 1; s <= a.two_n(); ++s)
                emit(a.at(j, s), " dx[" + std::to_string(j) + "]^dx[" + std::to_string(s) + "]");
    }
    return out.str();
}

}  // namespace fedosov
