#pragma once

#include "cft/convergents.hpp"
#include "cft/interval.hpp"
#include "cft/polynomial.hpp"
#include "cft/quotients.hpp"

namespace cft {

// Certified enclosure of a real value. width_achieved is false when the
// requested width could not be met from the input widths; the interval
// is still a valid enclosure.
struct Enclosure {
    QInterval range;
    long precision_bits = 0;
    bool width_achieved = true;

    static Enclosure point(const mpq_class& v) { return Enclosure{QInterval(v), 0, true}; }
    bool operator==(const Enclosure& o) const {
        return range == o.range && precision_bits == o.precision_bits && width_achieved == o.width_achieved;
    }
};

// Enclosure of x^y = exp(y ln x); requires x.range.lo > 0. Escalates
// precision until the width target is met; when the input widths make
// the target unreachable the best achieved enclosure is returned with
// width_achieved = false.
Enclosure power_enclosure(const Enclosure& x, const Enclosure& y, const mpq_class& target_width,
                          const Limits& limits = {});

// Enclosure of P over x; exact rational arithmetic, so a point input
// yields the exact value.
Enclosure poly_enclosure(const IntPolynomial& P, const Enclosure& x);

struct PowerRefinement {
    Enclosure value;  // encloses A^B
    long n_used = 0;
    long precision_bits = 0;
};

// Smallest n (and a sufficient precision) such that the A^B enclosure is
// at most target_width wide. Deterministic; throws budget_error when the
// digit budget or max_index runs out first.
PowerRefinement refine_power(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                             const mpq_class& target_width);

// Like refine_power, but when the budget runs out it returns the best
// enclosure reachable within it (width_achieved = false) instead of
// throwing.
PowerRefinement refine_power_best_effort(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                                         const mpq_class& target_width);

}  // namespace cft
