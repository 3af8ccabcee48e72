#include "lcentropy/polynomial.hpp"

#include <stdexcept>

namespace lcentropy {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(Rational c) {
    if (c == 0) return Poly();
    return Poly(std::vector<Rational>{std::move(c)});
}

Poly Poly::monomial(int degree, Rational c) {
    if (c == 0) return Poly();
    std::vector<Rational> v(std::size_t(degree) + 1, Rational(0));
    v.back() = std::move(c);
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || std::size_t(i) >= coeffs_.size()) return Rational(0);
    return coeffs_[std::size_t(i)];
}

Rational Poly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Poly::operator()(const Rational& t) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Poly::eval_double(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_double(*it);
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * int(i);
    return Poly(std::move(v));
}

Poly Poly::shifted_arg(const Rational& c) const {
    // Horner in (t + c): fold from the top coefficient down
    Poly acc;
    const Poly lin(std::vector<Rational>{c, Rational(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * lin + Poly::constant(*it);
    return acc;
}

Poly& Poly::operator+=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(v));
}

long long cauchy_positive_bound(const Poly& p) {
    if (p.leading() <= 0)
        throw std::invalid_argument("Cauchy bound requires a positive leading coefficient");
    if (p.degree() == 0) return 1;
    Rational best(0);
    const Rational& lead = p.coeffs().back();
    for (int i = 0; i < p.degree(); ++i) {
        Rational q = abs(p.coeff(i)) / lead;
        if (q > best) best = q;
    }
    // 1 + max|a_i|/a_d bounds every root from above; round up to an integer
    BigInt num = numerator(best), den = denominator(best);
    BigInt fl = num / den;
    long long b = fl.convert_to<long long>() + 2;
    return b < 1 ? 1 : b;
}

}  // namespace lcentropy
