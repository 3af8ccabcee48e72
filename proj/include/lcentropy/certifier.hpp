#pragma once

#include <optional>
#include <string>

#include "lcentropy/exp_poly.hpp"

namespace lcentropy {

enum class CertStatus { proven, refuted, inconclusive };

const char* to_string(CertStatus s);

struct SequenceWitness {
    long long index = 0;
    Rational value;
};

/// Outcome of an exact positivity certification.  `proven` means every value
/// in [n_min, threshold] was checked nonnegative in exact arithmetic AND the
/// dominant-term argument covers everything beyond the threshold.
struct Certificate {
    CertStatus status = CertStatus::inconclusive;
    long long n_min = 0;
    long long threshold = 0;
    std::optional<SequenceWitness> witness;  // minimal checked value, or the refuting one
    std::string detail;

    bool proven() const { return status == CertStatus::proven; }
};

/// Certify s(n) >= 0 for all n >= n_min.  The tail argument computes N0 such
/// that on [N0, oo) the dominant-base polynomial is positive and nondecreasing
/// (derivative sign via rational root bounding) and every other term's
/// |q_j(n)| (b_j/b_1)^n is nonincreasing (exact ratio test), with the tail sum
/// at N0 strictly below the dominant value; [n_min, N0] is checked exactly.
/// A sequence whose dominant term is not eventually positive is refuted if a
/// negative value shows up in a finite probe window, else inconclusive.
Certificate certify_sequence_positive(const ExpPolySequence& s, long long n_min);

/// Certify f(y) >= 0 for all y <= 0 by Taylor-expanding e^{K t} f(-t) with
/// K = max exponent of f and certifying all coefficients nonnegative.
Certificate certify_exp_poly_nonneg(const ExpPoly& f);

// ---------------------------------------------------------------------------
// the five polynomial families
// ---------------------------------------------------------------------------

enum class Family { P0, P1, P2, P3, P4 };

const char* to_string(Family f);
std::optional<Family> family_from_string(const std::string& name);

/// The form whose x-expansion the coefficient tables describe: e^{-y} P_0 for
/// P0 (positivity is equivalent, the factor is positive) and P_i itself for
/// the others.
const BivariateExpPoly& certification_form(Family f);

/// The actual expansion coefficient P_i of (c-1)^i, used by the floating
/// identity checks.
const BivariateExpPoly& exact_P(Family f);

/// Largest n handled by direct expansion certificates: 9, 8, 6, 5, 4.
int small_n_bound(Family f);

/// Entry point of the large-n regime in the closed-form analysis
/// (10, 11, 13, 14); -1 for P4 which has no case split.
int tail_regime_threshold(Family f);

/// f_n built from the closed-form coefficient tables (valid for n >= 5).
ExpPoly closed_form_coefficients(Family f, long long n);

/// Exact rational lower bound for inf_{y <= 0} f_n(y): keep the constant
/// term, drop terms that are nonnegative on y <= 0, and bound each remaining
/// |coef| e^{ky} |y|^l by |coef| * min(1, (l/(e k))^l) with e under-rated by
/// 2718/1000 so the bound stays rational.  Throws if an unbounded group makes
/// the bound useless (never the case for these families, n >= 5).
Rational crude_minorant(Family f, long long n);

struct FamilyCertificate {
    Family family = Family::P0;
    CertStatus status = CertStatus::inconclusive;
    long long small_n_max = 0;     // stage 1 covered [0, small_n_max] by expansion
    long long direct_check_to = 0; // stage 2 checked minorants on (small_n_max, direct_check_to]
    long long tail_threshold = 0;  // stage 3 exact checks ended here, dominance beyond
    std::vector<Certificate> small_certs;
    SequenceWitness min_minorant;  // smallest exact minorant over stages 2-3
    Certificate tail_cert;
    std::string detail;

    bool proven() const { return status == CertStatus::proven; }
};

/// Mechanized case split: direct expansion certificates for small n, exact
/// minorant checks in the middle range, dominant-term certificate for the
/// minorant sequence beyond.
FamilyCertificate certify_family(Family f);

std::vector<FamilyCertificate> certify_all_families(int threads = 1);

}  // namespace lcentropy
