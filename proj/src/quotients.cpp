#include "cft/quotients.hpp"

namespace cft {

void QuotientSequence::validate() const {
    if (a0 < 0) throw std::invalid_argument("a0 must be >= 0");
    if (max_index < 1) throw std::invalid_argument("max_index must be >= 1");
    if (const auto* pr = std::get_if<PowerRule>(&rule)) {
        if (pr->a1 < 2) throw std::invalid_argument("power rule base a1 must be >= 2");
        if (pr->exponent <= 1) throw std::invalid_argument("power rule exponent must be > 1");
        (void)RationalExp::from(pr->exponent);
    } else {
        const auto& xs = std::get<ExplicitList>(rule).terms;
        if (xs.empty()) throw std::invalid_argument("explicit quotient list is empty");
        for (const auto& t : xs)
            if (t < 1) throw std::invalid_argument("explicit quotients must be >= 1 from index 1");
    }
}

std::vector<mpz_class> generate_quotients(const QuotientSequence& spec, long upto) {
    spec.validate();
    if (upto < 0) throw std::invalid_argument("upto must be >= 0");
    if (upto > spec.max_index) throw std::invalid_argument("upto exceeds max_index");

    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(upto) + 1);
    out.push_back(spec.a0);
    if (upto == 0) return out;

    if (const auto* pr = std::get_if<PowerRule>(&spec.rule)) {
        const RationalExp e = RationalExp::from(pr->exponent);
        out.push_back(pr->a1);
        for (long n = 2; n <= upto; ++n) {
            const mpz_class& prev = out.back();
            // Predicted size of prev^(p/q) before computing it.
            const long pred = digits10(prev) * static_cast<long>(e.num) / static_cast<long>(e.den) + 1;
            if (pred > spec.limits.max_digits10)
                throw budget_error("quotient a_" + std::to_string(n) + " would exceed the digit budget (" +
                                   std::to_string(pred) + " > " + std::to_string(spec.limits.max_digits10) +
                                   " digits)");
            out.push_back(rounded_power(prev, e, pr->rounding));
        }
        return out;
    }

    const auto& xs = std::get<ExplicitList>(spec.rule).terms;
    if (static_cast<std::size_t>(upto) > xs.size())
        throw std::invalid_argument("explicit list has only " + std::to_string(xs.size()) + " terms");
    for (long n = 1; n <= upto; ++n) out.push_back(xs[static_cast<std::size_t>(n) - 1]);
    return out;
}

}  // namespace cft
