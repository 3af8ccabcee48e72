#pragma once

#include <vector>

#include "lcentropy/rational.hpp"

namespace lcentropy {

/// Dense univariate polynomial over Rational, ascending degree, no trailing
/// zero coefficient.
class Poly {
public:
    Poly() = default;  // zero polynomial
    explicit Poly(std::vector<Rational> coeffs);

    static Poly constant(Rational c);
    static Poly monomial(int degree, Rational c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return int(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int i) const;
    Rational leading() const;  // 0 for the zero polynomial

    Rational operator()(const Rational& t) const;
    Rational at(long long n) const { return (*this)(Rational(n)); }
    double eval_double(double t) const;

    Poly derivative() const;
    /// p(t + c)
    Poly shifted_arg(const Rational& c) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Smallest integer B >= 1 with p(t) > 0 for every t >= B, from the Cauchy
/// root bound 1 + max_i |a_i| / a_d.  Requires a positive leading coefficient.
long long cauchy_positive_bound(const Poly& p);

}  // namespace lcentropy
