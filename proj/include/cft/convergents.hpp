#pragma once

#include <utility>
#include <vector>

#include "cft/interval.hpp"
#include "cft/quotients.hpp"

namespace cft {

// Exact convergents p_n/q_n of a simple continued fraction
// [a_0; a_1, a_2, ...]. Rows for n = -1 and n = 0 are always present so
// the recurrence identities are testable from n = 1.
//
//   p_n = a_n p_{n-1} + p_{n-2},   p_{-1} = 1,  p_0 = a_0
//   q_n = a_n q_{n-1} + q_{n-2},   q_{-1} = 0,  q_0 = 1
class ConvergentTable {
public:
    explicit ConvergentTable(std::vector<mpz_class> quotients);

    long max_n() const { return static_cast<long>(a_.size()) - 1; }

    const mpz_class& quotient(long n) const;  // a_n, n >= 0
    const mpz_class& p(long n) const;         // n >= -1
    const mpz_class& q(long n) const;         // n >= -1

    mpq_class value(long n) const;  // p_n / q_n, n >= 0

    // (errLow, errHigh) = (1/(q_n (q_{n+1}+q_n)), 1/(q_n q_{n+1})).
    // For a continued fraction extending beyond row n+1 the true value x
    // satisfies errLow < |x - p_n/q_n| < errHigh; errHigh is exclusive.
    std::pair<mpq_class, mpq_class> error_bounds(long n) const;

    // Interval with endpoints value(n), value(n+1), ordered; the value of
    // any extension lies inside. Width is exactly 1/(q_n q_{n+1}).
    QInterval enclose_value(long n) const;  // n >= 1

    void extend(const mpz_class& a_next);

private:
    std::vector<mpz_class> a_;       // a_0..a_N
    std::vector<mpz_class> p_, q_;   // index shifted by 1: [0] is row -1
    void check_range(long n, long needed_up_to) const;
};

ConvergentTable convergents(const std::vector<mpz_class>& quotients);

// Table built from a sequence spec, generated up to `upto`.
ConvergentTable convergents(const QuotientSequence& spec, long upto);

}  // namespace cft
