#include "lcentropy/certifier.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "certifier_data.hpp"

namespace lcentropy {

const char* to_string(CertStatus s) {
    switch (s) {
        case CertStatus::proven: return "proven";
        case CertStatus::refuted: return "refuted";
        case CertStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(Family f) {
    switch (f) {
        case Family::P0: return "P0";
        case Family::P1: return "P1";
        case Family::P2: return "P2";
        case Family::P3: return "P3";
        case Family::P4: return "P4";
    }
    return "?";
}

std::optional<Family> family_from_string(const std::string& name) {
    for (Family f : {Family::P0, Family::P1, Family::P2, Family::P3, Family::P4})
        if (name == to_string(f)) return f;
    return std::nullopt;
}

int small_n_bound(Family f) {
    switch (f) {
        case Family::P0: return 9;
        case Family::P1: return 8;
        case Family::P2: return 6;
        case Family::P3: return 5;
        case Family::P4: return 4;
    }
    return 0;
}

int tail_regime_threshold(Family f) {
    switch (f) {
        case Family::P0: return 10;
        case Family::P1: return 11;
        case Family::P2: return 13;
        case Family::P3: return 14;
        case Family::P4: return -1;
    }
    return -1;
}

namespace {

constexpr long long kThresholdCap = 200000;
constexpr long long kRefuteProbeWindow = 64;

/// N0 such that s(n) > 0 for every n >= N0, by the dominant-term argument:
/// beyond N0 the top polynomial is positive and nondecreasing, every other
/// |q_j(n)| (b_j/b_1)^n is nonincreasing, and the tail sum at N0 is below the
/// top value.  nullopt when the dominant polynomial is not eventually
/// positive or the cap is hit.
std::optional<long long> dominance_threshold(const ExpPolySequence& s) {
    const auto& terms = s.terms();
    if (terms.empty()) return std::nullopt;
    const Poly& q1 = terms[0].poly;
    if (q1.leading() <= 0) return std::nullopt;

    long long n0 = std::max<long long>(1, s.max_correction_index() + 1);
    n0 = std::max(n0, cauchy_positive_bound(q1));
    const Poly dq1 = q1.derivative();
    if (!dq1.is_zero()) n0 = std::max(n0, cauchy_positive_bound(dq1));

    struct Tail {
        Rational ratio;  // b_1 / b_j
        Poly abs_poly;   // sigma * q_j, positive beyond its bound
        Rational base_over_top;
    };
    std::vector<Tail> tails;
    for (std::size_t j = 1; j < terms.size(); ++j) {
        const Poly& qj = terms[j].poly;
        const Poly abs_poly = qj.leading() > 0 ? qj : qj * Rational(-1);
        n0 = std::max(n0, cauchy_positive_bound(abs_poly) + 1);
        const Rational r = terms[0].base / terms[j].base;  // > 1
        // r * |q_j|(n) - |q_j|(n+1) >= 0 beyond its own bound makes the
        // geometric-weighted term nonincreasing
        const Poly aux = abs_poly * r - abs_poly.shifted_arg(Rational(1));
        n0 = std::max(n0, cauchy_positive_bound(aux) + 1);
        tails.push_back({r, abs_poly, terms[j].base / terms[0].base});
    }

    while (n0 <= kThresholdCap) {
        Rational tail_sum(0);
        for (const auto& t : tails)
            tail_sum += t.abs_poly.at(n0) * rational_pow(t.base_over_top, n0);
        if (q1.at(n0) > tail_sum) return n0;
        ++n0;
    }
    return std::nullopt;
}

struct EventualSign {
    int sign = 0;       // 0 for the identically-zero sequence
    long long from = 0; // sign(s(n)) == sign for all n >= from
};

std::optional<EventualSign> eventual_sign(const ExpPolySequence& s) {
    if (s.terms().empty()) {
        if (s.corrections().empty()) return EventualSign{0, 0};
        // finitely supported: zero eventually
        return EventualSign{0, s.max_correction_index() + 1};
    }
    const int sigma = sign(s.terms()[0].poly.leading());
    auto th = dominance_threshold(s * Rational(sigma));
    if (!th) return std::nullopt;
    return EventualSign{sigma, *th};
}

}  // namespace

Certificate certify_sequence_positive(const ExpPolySequence& s, long long n_min) {
    Certificate cert;
    cert.n_min = n_min;

    if (s.terms().empty()) {
        // finitely many nonzero values: the corrections are the sequence
        cert.threshold = std::max(n_min, s.max_correction_index());
        for (const auto& [i, v] : s.corrections()) {
            if (i < n_min) continue;
            if (!cert.witness || v < cert.witness->value) cert.witness = {i, v};
            if (v < 0) {
                cert.status = CertStatus::refuted;
                cert.witness = {i, v};
                cert.detail = "negative value in the finite part";
                return cert;
            }
        }
        cert.status = CertStatus::proven;
        cert.detail = "finitely supported sequence, all values checked";
        return cert;
    }

    const auto th = dominance_threshold(s);
    if (!th) {
        // cannot bound the tail; probe a finite window for a refutation
        const long long upto =
            std::max(n_min + kRefuteProbeWindow, s.max_correction_index() + kRefuteProbeWindow);
        for (long long n = n_min; n <= upto; ++n) {
            const Rational v = s.value(n);
            if (v < 0) {
                cert.status = CertStatus::refuted;
                cert.witness = {n, v};
                cert.detail = "negative value found";
                return cert;
            }
        }
        cert.status = CertStatus::inconclusive;
        cert.detail = "no eventually positive dominant term";
        return cert;
    }

    cert.threshold = std::max(n_min, *th);
    for (long long n = n_min; n <= cert.threshold; ++n) {
        const Rational v = s.value(n);
        if (!cert.witness || v < cert.witness->value) cert.witness = {n, v};
        if (v < 0) {
            cert.status = CertStatus::refuted;
            cert.witness = {n, v};
            cert.detail = "negative value inside the exact range";
            return cert;
        }
    }
    cert.status = CertStatus::proven;
    cert.detail = "exact checks + dominant-term tail";
    return cert;
}

Certificate certify_exp_poly_nonneg(const ExpPoly& f) {
    if (f.is_zero()) {
        Certificate cert;
        cert.status = CertStatus::proven;
        cert.detail = "identically zero";
        return cert;
    }
    Rational K = f.max_exponent();
    if (K < 0) K = 0;
    const ExpPoly g = to_nonneg_axis(f, K);
    Certificate cert = certify_sequence_positive(coeff_sequence(g), 0);
    std::ostringstream os;
    os << "Taylor coefficients of e^{" << to_string(K) << " t} f(-t): " << cert.detail;
    cert.detail = os.str();
    return cert;
}

ExpPoly closed_form_coefficients(Family f, long long n) {
    if (n < 5) throw std::invalid_argument("closed-form coefficients start at n = 5");
    std::vector<ExpPoly::Term> terms;
    for (const auto& group : detail::family_coefficients(f)) {
        std::vector<Rational> coeffs;
        coeffs.reserve(group.coefficients.size());
        for (const auto& c : group.coefficients) coeffs.push_back(c.value(n));
        terms.push_back({Rational(group.y_exponent), Poly(std::move(coeffs))});
    }
    return ExpPoly(std::move(terms));
}

namespace {

/// min(1, rational over-approximation of sup_{y<=0} e^{k y} |y|^l = (l/(ek))^l),
/// with e under-rated as 2718/1000 so the sup is not under-estimated.
Rational envelope_bound(int k, int l) {
    if (l == 0) return Rational(1);
    const Rational b = rational_pow(Rational(1000 * l, 2718 * k), l);
    if (b > 1)
        throw std::logic_error("envelope bound exceeds 1; the crude minorant would be invalid");
    return b;
}

}  // namespace

Rational crude_minorant(Family f, long long n) {
    if (n < 5) throw std::invalid_argument("crude minorant uses the closed forms, n >= 5");
    Rational lb(0);
    for (const auto& group : detail::family_coefficients(f)) {
        const int k = group.y_exponent;
        for (int l = 0; l < int(group.coefficients.size()); ++l) {
            const Rational c = group.coefficients[std::size_t(l)].value(n);
            if (c == 0) continue;
            const int term_sign = sign(c) * ((l % 2 == 0) ? 1 : -1);  // sign of c y^l, y <= 0
            if (k == 0) {
                if (l == 0)
                    lb += c;
                else if (term_sign < 0)
                    throw std::domain_error("unbounded negative polynomial term on y <= 0");
                // nonnegative polynomial terms are dropped
            } else {
                if (term_sign >= 0) continue;  // term >= 0 on y <= 0, drop it
                lb -= abs(c) * envelope_bound(k, l);
            }
        }
    }
    return lb;
}

FamilyCertificate certify_family(Family f) {
    FamilyCertificate out;
    out.family = f;
    out.small_n_max = small_n_bound(f);
    bool all_proven = true;

    // stage 1: direct expansion certificates for n = 0..small_n_max
    const BivariateExpPoly& form = certification_form(f);
    for (long long n = 0; n <= out.small_n_max; ++n) {
        Certificate c = certify_exp_poly_nonneg(x_taylor_coefficient(form, int(n)));
        if (!c.proven()) all_proven = false;
        out.small_certs.push_back(std::move(c));
    }

    // eventual signs of every coefficient sequence fix where the tail
    // minorant becomes sign-stable
    long long n_star = out.small_n_max + 1;
    bool tail_ok = true;
    std::ostringstream detail;
    ExpPolySequence minorant;
    for (const auto& group : detail::family_coefficients(f)) {
        const int k = group.y_exponent;
        for (int l = 0; l < int(group.coefficients.size()); ++l) {
            const auto& c = group.coefficients[std::size_t(l)];
            const auto es = eventual_sign(c);
            if (!es) {
                tail_ok = false;
                detail << "no eventual sign for group e^{" << k << "y} y^" << l << "; ";
                continue;
            }
            if (es->sign != 0) n_star = std::max(n_star, es->from);
            if (k == 0) {
                if (l == 0) {
                    minorant += c;
                } else if (es->sign * ((l % 2 == 0) ? 1 : -1) < 0) {
                    tail_ok = false;  // unbounded below on y <= 0
                    detail << "polynomial term y^" << l << " eventually negative-signed; ";
                }
            } else {
                const int term_sign = es->sign * ((l % 2 == 0) ? 1 : -1);
                if (term_sign >= 0) continue;  // eventually a nonnegative term, dropped
                minorant += c * (Rational(-es->sign) * envelope_bound(k, l));
            }
        }
    }

    // stage 2: exact minorant checks bridge to the sign-stable regime
    out.direct_check_to = n_star - 1;
    out.min_minorant = {0, Rational(1)};
    bool have_min = false;
    for (long long n = out.small_n_max + 1; n < n_star; ++n) {
        Rational lb;
        bool lb_ok = true;
        try {
            lb = crude_minorant(f, n);
        } catch (const std::domain_error&) {
            lb_ok = false;
        }
        if (!lb_ok || lb < 0) {
            // fall back to a direct expansion certificate for this n
            Certificate c = certify_exp_poly_nonneg(x_taylor_coefficient(form, int(n)));
            if (!c.proven()) {
                all_proven = false;
                detail << "minorant and expansion both fail at n=" << n << "; ";
            }
            continue;
        }
        if (!have_min || lb < out.min_minorant.value) {
            out.min_minorant = {n, lb};
            have_min = true;
        }
    }

    // stage 3: the minorant sequence itself, certified beyond n_star
    if (tail_ok) {
        out.tail_cert = certify_sequence_positive(minorant, n_star);
        out.tail_threshold = out.tail_cert.threshold;
        if (!out.tail_cert.proven()) all_proven = false;
        if (out.tail_cert.witness &&
            (!have_min || out.tail_cert.witness->value < out.min_minorant.value))
            out.min_minorant = *out.tail_cert.witness;
    } else {
        all_proven = false;
        out.tail_cert.status = CertStatus::inconclusive;
        out.tail_cert.detail = "tail minorant not sign-stable";
    }

    out.detail = detail.str();
    out.status = all_proven ? CertStatus::proven : CertStatus::inconclusive;
    for (const auto& c : out.small_certs)
        if (c.status == CertStatus::refuted) out.status = CertStatus::refuted;
    return out;
}

std::vector<FamilyCertificate> certify_all_families(int threads) {
    const std::vector<Family> fams = {Family::P0, Family::P1, Family::P2, Family::P3,
                                      Family::P4};
    std::vector<FamilyCertificate> out(fams.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < fams.size(); ++i) out[i] = certify_family(fams[i]);
        return out;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, int(fams.size())); ++t)
        pool.emplace_back([&fams, &out, t, threads] {
            for (std::size_t i = std::size_t(t); i < fams.size(); i += std::size_t(threads))
                out[i] = certify_family(fams[i]);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace lcentropy
