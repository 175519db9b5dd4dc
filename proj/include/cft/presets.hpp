#pragma once

#include <string>

#include "cft/quotients.hpp"

namespace cft {

// A named pair of quotient sequences plus the growth exponents their
// rule realizes.
struct SequencePair {
    std::string name;
    QuotientSequence a;
    QuotientSequence b;
    mpq_class alpha;
    mpq_class alpha_prime;
};

// a_0 = b_0 = 0, a_1 = b_1 = 3, a_{n+1} = a_n^(1+delta); alpha = alpha' = 1+delta.
SequencePair preset_example1(const mpq_class& delta = 2, long max_index = 8);

// a_0 = b_0 = 0, a_1 = b_1 = 2, a_{n+1} = a_n^5; alpha = alpha' = 5.
SequencePair preset_example2(long max_index = 8);

// Lookup by name ("example1", "example1:delta=p/q", "example2").
SequencePair preset_by_name(const std::string& name, long max_index = 8);

}  // namespace cft
