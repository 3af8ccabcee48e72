#pragma once

#include <utility>
#include <vector>

#include "lcentropy/polynomial.hpp"

namespace lcentropy {

/// sum_k poly_k(t) * e^{exponent_k * t}, exponents distinct and sorted.
class ExpPoly {
public:
    struct Term {
        Rational exponent;
        Poly poly;
    };

    ExpPoly() = default;
    explicit ExpPoly(std::vector<Term> terms);  // merges duplicates, drops zeros

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational max_exponent() const;  // 0 for the zero function

    double eval_double(double t) const;

    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator*=(const Rational& c);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator*(ExpPoly a, const Rational& c) { return a *= c; }
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
        return a.terms_.size() == b.terms_.size() &&
               [&] {
                   for (std::size_t i = 0; i < a.terms_.size(); ++i)
                       if (a.terms_[i].exponent != b.terms_[i].exponent ||
                           !(a.terms_[i].poly == b.terms_[i].poly))
                           return false;
                   return true;
               }();
    }

private:
    std::vector<Term> terms_;
};

/// g(t) = e^{K t} * f(-t), exactly.  Nonnegativity of every Taylor
/// coefficient of g implies f(y) >= 0 for all y <= 0 (evaluate the series at
/// t = -y >= 0).  Requires K >= max exponent of f so that all resulting
/// exponents are nonnegative.
ExpPoly to_nonneg_axis(const ExpPoly& f, const Rational& K);

/// Bivariate polynomial: coefficient of x^i is a Poly in y.
class BivarPoly {
public:
    BivarPoly() = default;
    explicit BivarPoly(std::vector<Poly> x_rows);  // x_rows[i] multiplies x^i

    const std::vector<Poly>& x_rows() const { return rows_; }
    bool is_zero() const { return rows_.empty(); }
    double eval_double(double x, double y) const;

private:
    void trim();
    std::vector<Poly> rows_;
};

/// sum_k Q_k(x, y) * e^{alpha_k x + beta_k y} with small integer exponents.
class BivariateExpPoly {
public:
    struct Term {
        int alpha;
        int beta;
        BivarPoly poly;
    };

    BivariateExpPoly() = default;
    explicit BivariateExpPoly(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    double eval_double(double x, double y) const;

    /// Multiply by e^{shift * y}.
    BivariateExpPoly shifted_y(int shift) const;

private:
    std::vector<Term> terms_;
};

/// n-th x-derivative at x = 0, exactly: with F = sum_n f_n(y) x^n / n!, this
/// returns f_n (divide by n! for the plain Taylor coefficient).
ExpPoly x_taylor_coefficient(const BivariateExpPoly& F, int n);

/// s(n) = sum_j q_j(n) * base_j^n + corrections, bases positive, distinct,
/// descending.  Corrections carry the finitely many indices touched by
/// exponent-zero terms of a generating ExpPoly.
class ExpPolySequence {
public:
    struct Term {
        Rational base;
        Poly poly;
    };

    ExpPolySequence() = default;
    explicit ExpPolySequence(std::vector<Term> terms,
                             std::vector<std::pair<long long, Rational>> corrections = {});

    const std::vector<Term>& terms() const { return terms_; }
    const std::vector<std::pair<long long, Rational>>& corrections() const {
        return corrections_;
    }
    long long max_correction_index() const;

    Rational value(long long n) const;

    ExpPolySequence& operator+=(const ExpPolySequence& o);
    ExpPolySequence& operator*=(const Rational& c);
    friend ExpPolySequence operator+(ExpPolySequence a, const ExpPolySequence& b) {
        return a += b;
    }
    friend ExpPolySequence operator*(ExpPolySequence a, const Rational& c) { return a *= c; }

private:
    void normalize();
    std::vector<Term> terms_;
    std::vector<std::pair<long long, Rational>> corrections_;
};

/// s(m) = m! * [t^m] g for g with nonnegative rational exponents: each term
/// q(t) e^{gamma t} contributes gamma^m * R(m) with R rational-polynomial
/// (falling factorials), and gamma = 0 terms contribute the finitely many
/// corrections m! * q_m.
ExpPolySequence coeff_sequence(const ExpPoly& g);

}  // namespace lcentropy
