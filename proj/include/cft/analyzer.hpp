#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cft/convergents.hpp"
#include "cft/interval.hpp"

namespace cft {

// One row of a hypothesis report: named exact booleans, named certified
// ratios, and free-form flags (skips, degeneracies, equality caveats).
struct IndexReport {
    long n = 0;
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::pair<std::string, CertifiedValue>> ratios;
    std::vector<std::string> flags;

    bool operator==(const IndexReport&) const = default;
};

struct FailsAt {
    long n = 0;
    std::string check;
    bool operator==(const FailsAt&) const = default;
};

struct SupRatio {
    CertifiedValue value;
    long n = -1;  // index attaining the sup (largest upper endpoint)
    bool operator==(const SupRatio&) const = default;
};

enum class Trend { Increasing, Decreasing, Mixed, Unknown };

struct HypothesisReport {
    std::string name;
    std::vector<IndexReport> per_index;
    std::optional<SupRatio> sup_ratio;
    Trend sup_trend = Trend::Unknown;  // slope of the sup'd ratio over the last three indices
    std::vector<std::pair<std::string, CertifiedValue>> constants;
    std::optional<FailsAt> fails_at;          // first false boolean, if any
    std::vector<long> indeterminate_indices;  // rows that could not be decided

    bool all_hold() const { return !fails_at.has_value(); }
    bool operator==(const HypothesisReport&) const = default;
};

struct LiouvilleReport {
    struct Row {
        long n = 0;
        CertifiedValue delta;  // ln(q_n q_{n+1}) / ln q_n
        bool operator==(const Row&) const = default;
    };
    std::vector<Row> per_index;
    CertifiedValue min_delta_tail;  // min over n >= 2, by lower endpoint
    long min_index = -1;
    mpq_class criterion_delta = 2;
    bool exceeds_criterion = false;  // certified: min_delta_tail.lo > 2
    Trend tail_trend = Trend::Unknown;
    // The margin over 2 must not be draining away: bounded-quotient
    // sequences have delta_n > 2 at every finite n yet tend to 2, so the
    // last row must retain at least half of the first row's margin for
    // the exponent evidence to count.
    bool margin_retained = false;
    std::vector<long> skipped;

    bool operator==(const LiouvilleReport&) const = default;
};

// --- Checks -----------------------------------------------------------
//
// Every verdict-relevant comparison is exact (integer cross-powering or
// rational arithmetic); logarithmic quantities are certified intervals
// refined to ratio_width (default 1e-6).

struct AnalyzerOptions {
    mpq_class ratio_width = mpq_class(1, 1000000);
    Limits limits{};
};

// a_{n+1} >= b_{n+1} >= a_n^alpha and a_{n+1} <= a_n^alpha' for n >= 1.
// Also reports the realized exponent window ln b_{n+1}/ln a_n and
// ln a_{n+1}/ln a_n per index.
HypothesisReport check_growth_window(std::span<const mpz_class> a_seq, std::span<const mpz_class> b_seq,
                                     const mpq_class& alpha, const mpq_class& alpha_prime,
                                     const AnalyzerOptions& opt = {});

// r_n = ln(a_n) ln(b_n) / ln(b_{n+1} q_n^2) per n >= 1, certified, with
// the sup over the computed range. When alpha is given the constants
// C2 = supRatio and C3 = (alpha/(alpha-1))^2 C2 are reported.
HypothesisReport check_bigO_ratio(std::span<const mpz_class> a_seq, std::span<const mpz_class> b_seq,
                                  const ConvergentTable& b_table,
                                  const std::optional<mpq_class>& alpha = std::nullopt,
                                  const AnalyzerOptions& opt = {});

// ln(q_{n+1}) / (q_n ln q_n) per n >= 2.
HypothesisReport check_denominator_log_growth(const ConvergentTable& b_table, const AnalyzerOptions& opt = {});

// Per n >= 2: q_n < 2 a_n^(alpha/(alpha-1)) for both tables,
// aq_n >= bq_n (equality flagged), the k-variant
// aq_n < 2 aq_{n-1}^(k alpha^2/(alpha-1)), the log product comparison
// ln(aq_n) ln(bq_n) < (alpha/(alpha-1))^2 ln(a_n) ln(b_n), and the
// hypothesis booleans they rest on. Constants report the empirical
// C1 = min_n bq_n / aq_{n-1}^alpha.
HypothesisReport check_denominator_bounds(const ConvergentTable& a_table, const ConvergentTable& b_table,
                              const mpq_class& alpha, const std::optional<mpq_class>& k = std::nullopt,
                              const AnalyzerOptions& opt = {});

// max(errHigh_a(n), errHigh_b(n)) <= 1/(bq_n bq_{n+1}) < 1/(b_{n+1} bq_n^2)
// per n >= 1, exact. errHigh is an exclusive bound on the true error, so
// "<=" here certifies the strict inequality for the underlying values;
// rows where the bound comparison is an equality are flagged.
HypothesisReport check_error_bound_chain(const ConvergentTable& a_table, const ConvergentTable& b_table,
                                   std::span<const mpz_class> b_seq);

// gamma_n = ln(min(aq_n aq_{n+1}, bq_n bq_{n+1})) / (ln aq_n ln bq_n) per
// included n (both heights >= 4); the reported floor is the min over
// n >= 2. A floor bounded away from 0 over a growing range is evidence
// that the approximation quality required by the criterion recurs
// infinitely often.
HypothesisReport estimate_gamma0(const ConvergentTable& a_table, const ConvergentTable& b_table,
                                 const AnalyzerOptions& opt = {});

// delta_n = ln(q_n q_{n+1}) / ln q_n per n >= 1 with q_n >= 2; the
// criterion needs the tail to stay above 2 with a non-vanishing margin,
// so the trend of the last rows is reported alongside the certified min.
LiouvilleReport liouville_exponents(const ConvergentTable& table, const AnalyzerOptions& opt = {});

}  // namespace cft
