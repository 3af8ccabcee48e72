#include "lcentropy/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lcentropy {

ExpPoly::ExpPoly(std::vector<Term> terms) {
    std::map<Rational, Poly> merged;
    for (auto& t : terms) merged[t.exponent] += t.poly;
    for (auto& [e, p] : merged)
        if (!p.is_zero()) terms_.push_back({e, std::move(p)});
}

Rational ExpPoly::max_exponent() const {
    if (terms_.empty()) return Rational(0);
    return terms_.back().exponent;  // map order: ascending
}

double ExpPoly::eval_double(double t) const {
    double acc = 0.0;
    for (const auto& tm : terms_)
        acc += tm.poly.eval_double(t) * std::exp(to_double(tm.exponent) * t);
    return acc;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    *this = ExpPoly(std::move(all));
    return *this;
}

ExpPoly& ExpPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.poly *= c;
    return *this;
}

ExpPoly to_nonneg_axis(const ExpPoly& f, const Rational& K) {
    std::vector<ExpPoly::Term> out;
    for (const auto& t : f.terms()) {
        if (K < t.exponent)
            throw std::invalid_argument("axis flip needs K >= every exponent of f");
        // poly(-t): flip the sign of odd coefficients
        std::vector<Rational> c = t.poly.coeffs();
        for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
        out.push_back({K - t.exponent, Poly(std::move(c))});
    }
    return ExpPoly(std::move(out));
}

BivarPoly::BivarPoly(std::vector<Poly> x_rows) : rows_(std::move(x_rows)) { trim(); }

void BivarPoly::trim() {
    while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
}

double BivarPoly::eval_double(double x, double y) const {
    double acc = 0.0;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) acc = acc * x + it->eval_double(y);
    return acc;
}

BivariateExpPoly::BivariateExpPoly(std::vector<Term> terms) : terms_(std::move(terms)) {}

double BivariateExpPoly::eval_double(double x, double y) const {
    double acc = 0.0;
    for (const auto& t : terms_)
        acc += t.poly.eval_double(x, y) * std::exp(t.alpha * x + t.beta * y);
    return acc;
}

BivariateExpPoly BivariateExpPoly::shifted_y(int shift) const {
    auto terms = terms_;
    for (auto& t : terms) t.beta += shift;
    return BivariateExpPoly(std::move(terms));
}

ExpPoly x_taylor_coefficient(const BivariateExpPoly& F, int n) {
    if (n < 0) throw std::invalid_argument("Taylor index must be nonnegative");
    std::vector<ExpPoly::Term> out;
    for (const auto& term : F.terms()) {
        // d^n/dx^n [x^j e^{alpha x}]|_0 = n!/(n-j)! * alpha^{n-j}
        Poly acc;
        const auto& rows = term.poly.x_rows();
        for (int j = 0; j < int(rows.size()) && j <= n; ++j) {
            if (rows[std::size_t(j)].is_zero()) continue;
            if (term.alpha == 0) {
                if (j == n) acc += rows[std::size_t(j)] * Rational(factorial(n));
                continue;
            }
            Rational w = Rational(falling(n, j)) * rational_pow(Rational(term.alpha), n - j);
            acc += rows[std::size_t(j)] * w;
        }
        if (!acc.is_zero()) out.push_back({Rational(term.beta), std::move(acc)});
    }
    return ExpPoly(std::move(out));
}

ExpPolySequence::ExpPolySequence(std::vector<Term> terms,
                                 std::vector<std::pair<long long, Rational>> corrections)
    : terms_(std::move(terms)), corrections_(std::move(corrections)) {
    normalize();
}

void ExpPolySequence::normalize() {
    std::map<Rational, Poly> merged;
    for (auto& t : terms_) {
        if (t.base <= 0) throw std::invalid_argument("sequence bases must be positive");
        merged[t.base] += t.poly;
    }
    terms_.clear();
    for (auto it = merged.rbegin(); it != merged.rend(); ++it)
        if (!it->second.is_zero()) terms_.push_back({it->first, it->second});

    std::map<long long, Rational> corr;
    for (auto& [i, v] : corrections_) corr[i] += v;
    corrections_.clear();
    for (auto& [i, v] : corr)
        if (v != 0) corrections_.push_back({i, v});
}

long long ExpPolySequence::max_correction_index() const {
    long long m = -1;
    for (const auto& [i, v] : corrections_) m = std::max(m, i);
    return m;
}

Rational ExpPolySequence::value(long long n) const {
    Rational acc(0);
    for (const auto& t : terms_) acc += t.poly.at(n) * rational_pow(t.base, n);
    for (const auto& [i, v] : corrections_)
        if (i == n) acc += v;
    return acc;
}

ExpPolySequence& ExpPolySequence::operator+=(const ExpPolySequence& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    corrections_.insert(corrections_.end(), o.corrections_.begin(), o.corrections_.end());
    normalize();
    return *this;
}

ExpPolySequence& ExpPolySequence::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        corrections_.clear();
        return *this;
    }
    for (auto& t : terms_) t.poly *= c;
    for (auto& [i, v] : corrections_) v *= c;
    return *this;
}

ExpPolySequence coeff_sequence(const ExpPoly& g) {
    std::vector<ExpPolySequence::Term> terms;
    std::vector<std::pair<long long, Rational>> corr;
    for (const auto& t : g.terms()) {
        if (t.exponent < 0)
            throw std::invalid_argument("coefficient sequence needs nonnegative exponents");
        const auto& c = t.poly.coeffs();
        if (t.exponent == 0) {
            for (std::size_t l = 0; l < c.size(); ++l)
                if (c[l] != 0) corr.push_back({(long long)l, c[l] * Rational(factorial(int(l)))});
            continue;
        }
        // m![t^m] q(t) e^{g t} = g^m sum_l c_l g^{-l} m(m-1)...(m-l+1)
        Poly R;
        Poly fall_poly = Poly::constant(Rational(1));
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (l > 0) {
                // multiply by (m - (l-1))
                Poly lin(std::vector<Rational>{Rational(-(long long)(l - 1)), Rational(1)});
                fall_poly = fall_poly * lin;
            }
            if (c[l] != 0) R += fall_poly * (c[l] / rational_pow(t.exponent, (long long)l));
        }
        if (!R.is_zero()) terms.push_back({t.exponent, std::move(R)});
    }
    return ExpPolySequence(std::move(terms), std::move(corr));
}

}  // namespace lcentropy
