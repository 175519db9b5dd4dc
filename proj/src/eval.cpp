#include "cft/eval.hpp"

#include <optional>

namespace cft {

namespace {

long highest_index(const QuotientSequence& spec) {
    if (const auto* xs = std::get_if<ExplicitList>(&spec.rule))
        return std::min<long>(spec.max_index, static_cast<long>(xs->terms.size()));
    return spec.max_index;
}

}  // namespace

Enclosure power_enclosure(const Enclosure& x, const Enclosure& y, const mpq_class& target_width,
                          const Limits& limits) {
    if (x.range.lo <= 0) throw std::invalid_argument("power_enclosure requires x > 0");
    if (target_width <= 0) throw std::invalid_argument("target width must be positive");

    long prec = limits.start_prec;
    QInterval r = pow_interval(x.range, y.range, prec);
    mpq_class last_width = r.width();
    if (last_width <= target_width) return Enclosure{r, prec, true};

    constexpr long kPrecCap = 1L << 26;  // ~8 MiB mantissas; far beyond any test target
    for (int i = 0; i < limits.max_prec_doublings && prec <= kPrecCap; ++i) {
        prec *= 2;
        QInterval next = pow_interval(x.range, y.range, prec);
        mpq_class w = next.width();
        if (w <= target_width) return Enclosure{next, prec, true};
        // Stalled: precision is no longer the binding constraint, the
        // input widths are. Report best effort.
        if (i >= 2 && 4 * w > 3 * last_width) return Enclosure{next, prec, false};
        last_width = std::move(w);
        r = std::move(next);
    }
    return Enclosure{r, prec, false};
}

Enclosure poly_enclosure(const IntPolynomial& P, const Enclosure& x) {
    return Enclosure{P.eval_interval(x.range), x.precision_bits, true};
}

namespace {

PowerRefinement refine_power_impl(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                                  const mpq_class& target_width, bool best_effort) {
    if (target_width <= 0) throw std::invalid_argument("target width must be positive");
    a_spec.validate();
    b_spec.validate();

    const long n_cap = std::min(highest_index(a_spec), highest_index(b_spec)) - 1;
    std::optional<PowerRefinement> best;
    for (long n = 1; n <= n_cap; ++n) {
        // Generation enforces the digit budget.
        std::optional<ConvergentTable> at, bt;
        try {
            at.emplace(generate_quotients(a_spec, n + 1));
            bt.emplace(generate_quotients(b_spec, n + 1));
        } catch (const budget_error&) {
            if (best_effort && best) return *best;
            throw;
        }

        Enclosure a{at->enclose_value(n), 0, true};
        Enclosure b{bt->enclose_value(n), 0, true};
        Enclosure p = power_enclosure(a, b, target_width);
        if (p.width_achieved) return PowerRefinement{p, n, p.precision_bits};
        if (!best || p.range.width() < best->value.range.width()) best = PowerRefinement{p, n, p.precision_bits};
    }
    if (best_effort && best) return *best;
    throw budget_error("digit budget exhausted before the enclosure width target was reached");
}

}  // namespace

PowerRefinement refine_power(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                             const mpq_class& target_width) {
    return refine_power_impl(a_spec, b_spec, target_width, false);
}

PowerRefinement refine_power_best_effort(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                                         const mpq_class& target_width) {
    return refine_power_impl(a_spec, b_spec, target_width, true);
}

}  // namespace cft
