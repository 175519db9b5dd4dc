#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cft/analyzer.hpp"
#include "cft/eval.hpp"
#include "cft/polynomial.hpp"

namespace cft {

// Three exponent conventions are in circulation for the lower bound
// |P(x)| > 1/2 (H d (d+1))^(-E); a larger E makes the claimed bound
// smaller, hence weaker:
//   Strong:   E =   k d (2d+1)
//   Standard: E = 2 k d (d+1)   (default)
//   Weak:     E = 2 k d (2d+1)
// Certificates always record which variant they were checked against.
enum class BoundVariant { Standard, Weak, Strong };

const char* to_string(BoundVariant v);
BoundVariant bound_variant_from_string(const std::string& s);

struct MeasureBound {
    mpq_class value;
    bool exact = true;  // false: certified upper bound (non-integer exponent)
    BoundVariant variant = BoundVariant::Standard;
    mpq_class exponent;  // the E actually used

    bool operator==(const MeasureBound&) const = default;
};

// 1/2 (H d (d+1))^(-E). Exact when E is an integer; otherwise a
// certified upper bound is returned, and only when allow_inexact is set.
MeasureBound measure_bound(long d, const mpz_class& H, const mpq_class& k,
                           BoundVariant variant = BoundVariant::Standard, bool allow_inexact = false);

enum class Verdict { Holds, Violated, Indeterminate };

const char* to_string(Verdict v);

struct HypothesisStatus {
    bool degree_ok = false;  // d >= 2
    bool height_ok = false;  // H >= a_2^(d+1/2), exact cross-power check
    bool window_ok = false;  // a_n^alpha <= b_{n+1} <= a_{n+1} <= a_n^(k alpha), alpha = 2d+1
    mpq_class alpha;
    mpq_class k;

    bool in_hypothesis() const { return degree_ok && height_ok && window_ok; }
    bool operator==(const HypothesisStatus&) const = default;
};

struct MeasureCertificate {
    IntPolynomial poly;
    QInterval value;  // |P(A^B)|
    long precision_bits = 0;
    MeasureBound bound;
    Verdict verdict = Verdict::Indeterminate;
    std::optional<double> margin_log10;  // log10(value.lo / bound), when value.lo > 0
    HypothesisStatus hypothesis;

    bool operator==(const MeasureCertificate&) const = default;
};

// Certificate for one polynomial. Auto-refines the A^B enclosure until
// the verdict is decided or the budget is exhausted; an exhausted budget
// yields an Indeterminate certificate, never a silent pass.
MeasureCertificate verify_polynomial(const IntPolynomial& P, const QuotientSequence& a_spec,
                                     const QuotientSequence& b_spec, const mpq_class& k,
                                     BoundVariant variant = BoundVariant::Standard);

// --- Batch kernels ------------------------------------------------------
//
// The per-certificate work is embarrassingly parallel over immutable
// inputs. verify_batch_serial is the reference implementation;
// verify_batch_parallel (OpenMP) must produce identical output and is
// checked against it in the tests and the benchmark tool.

struct BatchResult {
    std::vector<MeasureCertificate> certificates;  // poly-major, variant-minor
    int refinement_rounds = 0;
    long final_precision_bits = 0;

    bool all_hold() const;
    long count(Verdict v) const;
};

BatchResult verify_batch_serial(std::span<const IntPolynomial> polys, const QuotientSequence& a_spec,
                                const QuotientSequence& b_spec, const mpq_class& k,
                                std::span<const BoundVariant> variants);

BatchResult verify_batch_parallel(std::span<const IntPolynomial> polys, const QuotientSequence& a_spec,
                                  const QuotientSequence& b_spec, const mpq_class& k,
                                  std::span<const BoundVariant> variants);

// --- Polynomial generators ----------------------------------------------

// Uniform coefficients in [-H, H] with e_d != 0; deterministic in seed.
std::vector<IntPolynomial> sample_polynomials(long d, const mpz_class& H, long count,
                                              unsigned long long seed);

struct SearchHit {
    IntPolynomial poly;
    QInterval value_abs;  // certified |P| over x

    bool operator==(const SearchHit&) const = default;
};

// e_0 = -(nearest integer to sum_{k>=1} e_k mid^k), ties toward zero.
// Returns nullopt when |e_0| would exceed H.
std::optional<IntPolynomial> adversarial_candidate(std::span<const mpz_class> high_coeffs,
                                                   const mpq_class& mid, const mpz_class& H);

// Rounding construction stress search. Draws up to `budget` coefficient
// tuples (stopping early once target_accepted candidates pass the height
// cap, when positive) and returns the surviving polynomials with
// certified |P| enclosures over x, sorted by upper endpoint ascending.
// For d = 2 and H <= 8 the search is exhaustive instead of sampled.
// Requires x.range.width() < 1/4.
std::vector<SearchHit> adversarial_search(long d, const mpz_class& H, const Enclosure& x, long budget,
                                          unsigned long long seed, long target_accepted = -1);

// --- Bound-chain checks ----------------------------------------------------

// Per n in [2, n_max]:
//  * |P(A_n^B_n)| vs (aq_n)^(-d B_n) and (aq_n)^(-d): recorded as data
//    (flags), since the lower bound is not generally true for arbitrary P;
//  * |P'| over the hull of the A^B and A_n^B_n enclosures vs H d(d+1)/2;
//  * |P(A^B) - P(A_n^B_n)| <= 1/2 H d(d+1) |A^B - A_n^B_n|, certified.
HypothesisReport verify_bound_chain(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                                    const IntPolynomial& P, const mpq_class& k, long n_max,
                                    const Limits& limits = {});

// Smallest n1 >= 2 with a_{n1-1} <= (H d (d+1))^2 < a_{n1} (the exponent
// alpha/2 - d is always 1/2 for alpha = 2d+1). Requires
// (H d (d+1))^2 >= a_2.
long find_n1(const QuotientSequence& a_spec, long d, const mpz_class& H, const mpq_class& k);

}  // namespace cft
