#include "fedosov/scalar.hpp"

#include "fedosov/errors.hpp"

namespace fedosov {

BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned k = 2; k <= n; ++k)
        out *= k;
    return out;
}

std::string to_string(const Rational& q) {
    return q.str();
}

PowerProduct PowerProduct::atom_power(Atom a, unsigned exponent) {
    PowerProduct p;
    if (exponent > 0)
        p.factors_.emplace_back(std::move(a), exponent);
    return p;
}

unsigned PowerProduct::degree() const {
    unsigned d = 0;
    for (const auto& [atom, exp] : factors_)
        d += exp;
    return d;
}

PowerProduct PowerProduct::operator*(const PowerProduct& o) const {
    PowerProduct out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first < b->first)
            out.factors_.push_back(*a++);
        else if (b->first < a->first)
            out.factors_.push_back(*b++);
        else {
            out.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    out.factors_.insert(out.factors_.end(), a, factors_.end());
    out.factors_.insert(out.factors_.end(), b, o.factors_.end());
    return out;
}

std::strong_ordering PowerProduct::operator<=>(const PowerProduct& o) const {
    if (auto c = degree() <=> o.degree(); c != 0)
        return c;
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first < b->first)
            return std::strong_ordering::greater;  // nonzero power on an earlier atom
        if (b->first < a->first)
            return std::strong_ordering::less;
        if (auto c = a->second <=> b->second; c != 0)
            return c;
        ++a;
        ++b;
    }
    // Equal degree with one side exhausted forces the other exhausted too.
    return factors_.size() <=> o.factors_.size();
}

ScalarCoeff ScalarCoeff::constant(GaussianRational c) {
    ScalarCoeff out;
    out.add_term(PowerProduct{}, c);
    return out;
}

ScalarCoeff ScalarCoeff::coordinate(int index) {
    if (index < 1)
        throw DimensionError("coordinate index must be positive");
    return term(PowerProduct::atom_power(Coordinate{index}, 1), GaussianRational(1));
}

ScalarCoeff ScalarCoeff::function(std::string name, std::vector<unsigned> order) {
    return term(PowerProduct::atom_power(FuncDeriv{std::move(name), std::move(order)}, 1),
                GaussianRational(1));
}

ScalarCoeff ScalarCoeff::term(PowerProduct p, GaussianRational c) {
    ScalarCoeff out;
    out.add_term(p, c);
    return out;
}

void ScalarCoeff::add_term(const PowerProduct& p, const GaussianRational& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

ScalarCoeff ScalarCoeff::operator-() const {
    ScalarCoeff out;
    for (const auto& [p, c] : terms_)
        out.terms_.emplace(p, -c);
    return out;
}

ScalarCoeff& ScalarCoeff::operator+=(const ScalarCoeff& o) {
    for (const auto& [p, c] : o.terms_)
        add_term(p, c);
    return *this;
}

ScalarCoeff& ScalarCoeff::operator-=(const ScalarCoeff& o) {
    for (const auto& [p, c] : o.terms_)
        add_term(p, -c);
    return *this;
}

ScalarCoeff operator*(const ScalarCoeff& a, const ScalarCoeff& b) {
    ScalarCoeff out;
    for (const auto& [pa, ca] : a.terms())
        for (const auto& [pb, cb] : b.terms())
            out.add_term(pa * pb, ca * cb);
    return out;
}

ScalarCoeff ScalarCoeff::scaled(const GaussianRational& c) const {
    ScalarCoeff out;
    if (c.is_zero())
        return out;
    for (const auto& [p, coeff] : terms_)
        out.terms_.emplace(p, coeff * c);
    return out;
}

namespace {

// d(atom^exp)/dx[i] contributions of one factor, with the remaining factors
// multiplied back in by the caller (product rule).
ScalarCoeff differentiate_atom(const Atom& atom, int i) {
    if (const auto* coord = std::get_if<Coordinate>(&atom))
        return coord->index == i ? ScalarCoeff::constant(GaussianRational(1)) : ScalarCoeff{};
    const auto& f = std::get<FuncDeriv>(atom);
    if (static_cast<std::size_t>(i) > f.order.size())
        throw DimensionError("derivative index exceeds dimension of function " + f.name);
    FuncDeriv bumped = f;
    bumped.order[i - 1] += 1;
    return ScalarCoeff::term(PowerProduct::atom_power(std::move(bumped), 1), GaussianRational(1));
}

}  // namespace

ScalarCoeff differentiate(const ScalarCoeff& a, int i) {
    if (i < 1)
        throw DimensionError("derivative index must be positive");
    ScalarCoeff out;
    for (const auto& [p, c] : a.terms()) {
        const auto& factors = p.factors();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            ScalarCoeff datom = differentiate_atom(factors[k].first, i);
            if (datom.is_zero())
                continue;
            PowerProduct rest;
            for (std::size_t m = 0; m < factors.size(); ++m) {
                unsigned exp = factors[m].second - (m == k ? 1 : 0);
                rest = rest * PowerProduct::atom_power(factors[m].first, exp);
            }
            GaussianRational scale = c * GaussianRational(static_cast<int>(factors[k].second));
            for (const auto& [dp, dc] : datom.terms())
                out.add_term(rest * dp, dc * scale);
        }
    }
    return out;
}

}  // namespace fedosov
