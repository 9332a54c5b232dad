#include "fedosov/parse.hpp"

#include <algorithm>
#include <sstream>

namespace fedosov {

namespace {

// Signed rational with an optional trailing "*i", as used inside mixed sums.
void append_imaginary(std::ostringstream& out, const Rational& im, bool with_sign) {
    Rational mag = im < 0 ? Rational(-im) : im;
    if (with_sign)
        out << (im < 0 ? "-" : "+");
    else if (im < 0)
        out << "-";
    if (mag == 1)
        out << "i";
    else
        out << to_string(mag) << "*i";
}

}  // namespace

std::string render_gaussian(const GaussianRational& c) {
    std::ostringstream out;
    if (c.is_zero())
        return "0";
    if (c.im().is_zero())
        return to_string(c.re());
    if (c.re().is_zero()) {
        append_imaginary(out, c.im(), false);
        return out.str();
    }
    out << "(" << to_string(c.re());
    append_imaginary(out, c.im(), true);
    out << ")";
    return out.str();
}

std::string render_atom(const Atom& a, RenderStyle style) {
    if (const auto* coord = std::get_if<Coordinate>(&a))
        return "x[" + std::to_string(coord->index) + "]";
    const auto& f = std::get<FuncDeriv>(a);
    std::ostringstream out;
    out << f.name;
    if (std::any_of(f.order.begin(), f.order.end(), [](unsigned o) { return o != 0; })) {
        out << "^(";
        for (std::size_t m = 0; m < f.order.size(); ++m)
            out << (m ? "," : "") << f.order[m];
        out << ")";
    }
    if (style == RenderStyle::machine) {
        out << "(";
        for (std::size_t m = 0; m < f.order.size(); ++m)
            out << (m ? "," : "") << "x[" << (m + 1) << "]";
        out << ")";
    }
    return out.str();
}

namespace {

std::string render_term(const PowerProduct& p, const GaussianRational& c, RenderStyle style) {
    std::ostringstream mono;
    bool first = true;
    for (const auto& [atom, exp] : p.factors()) {
        if (!first)
            mono << "*";
        first = false;
        mono << render_atom(atom, style);
        if (exp > 1)
            mono << "^" << exp;
    }
    if (p.is_constant())
        return render_gaussian(c);
    if (c.is_one())
        return mono.str();
    if (c == -GaussianRational(1)) {
        // "-x[1]^2" would reparse as (-x[1])^2, so the shorthand is only
        // safe when the leading factor carries no exponent.
        if (p.factors().front().second == 1)
            return "-" + mono.str();
        return "-1*" + mono.str();
    }
    return render_gaussian(c) + "*" + mono.str();
}

}  // namespace

std::string render_expr(const ScalarCoeff& a, RenderStyle style) {
    if (a.is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    // Descending monomial order, so the highest-degree term leads.
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        std::string term = render_term(it->first, it->second, style);
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
