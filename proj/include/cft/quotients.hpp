#pragma once

#include <variant>
#include <vector>

#include "cft/numeric.hpp"

namespace cft {

// a_{n+1} = round(a_n^exponent); base a1 >= 2, exponent > 1.
struct PowerRule {
    mpz_class a1;
    mpq_class exponent;
    Rounding rounding = Rounding::Ceil;
};

// Terms a_1, a_2, ... given verbatim (a_0 lives in QuotientSequence).
struct ExplicitList {
    std::vector<mpz_class> terms;
};

struct QuotientSequence {
    mpz_class a0;
    std::variant<ExplicitList, PowerRule> rule;
    long max_index = 8;
    Limits limits{};

    void validate() const;  // throws std::invalid_argument
    bool is_power_rule() const { return std::holds_alternative<PowerRule>(rule); }
};

// Returns a_0..a_upto. Deterministic; throws std::invalid_argument on
// precondition violations and budget_error when a term would exceed
// limits.max_digits10 decimal digits.
std::vector<mpz_class> generate_quotients(const QuotientSequence& spec, long upto);

}  // namespace cft
