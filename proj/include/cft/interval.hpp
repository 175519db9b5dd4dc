#pragma once

#include "cft/numeric.hpp"

namespace cft {

// Closed interval with exact rational endpoints. Ring operations are
// exact; transcendental endpoints come from directed rounding, so every
// operation preserves containment of the true value.
struct QInterval {
    mpq_class lo, hi;

    QInterval() : lo(0), hi(0) {}
    explicit QInterval(const mpq_class& point) : lo(point), hi(point) {}
    QInterval(mpq_class l, mpq_class h);  // throws std::invalid_argument if l > h

    mpq_class width() const { return hi - lo; }
    mpq_class mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains(const QInterval& inner) const { return lo <= inner.lo && inner.hi <= hi; }

    bool operator==(const QInterval& o) const { return lo == o.lo && hi == o.hi; }
};

QInterval operator+(const QInterval& a, const QInterval& b);
QInterval operator-(const QInterval& a, const QInterval& b);
QInterval operator-(const QInterval& a);
QInterval operator*(const QInterval& a, const QInterval& b);
QInterval operator*(const mpq_class& c, const QInterval& a);
// 0 must not lie in den.
QInterval operator/(const QInterval& num, const QInterval& den);

QInterval abs_interval(const QInterval& a);
QInterval hull(const QInterval& a, const QInterval& b);
QInterval intersect(const QInterval& a, const QInterval& b);  // throws if disjoint

// Comparisons that are true only when provable from the enclosures.
inline bool certainly_lt(const QInterval& a, const QInterval& b) { return a.hi < b.lo; }
inline bool certainly_le(const QInterval& a, const QInterval& b) { return a.hi <= b.lo; }
inline bool certainly_gt(const QInterval& a, const mpq_class& c) { return a.lo > c; }
inline bool certainly_lt(const QInterval& a, const mpq_class& c) { return a.hi < c; }
inline bool certainly_ge(const QInterval& a, const mpq_class& c) { return a.lo >= c; }

// Directed-rounding endpoints. `up == false` rounds toward -inf,
// `up == true` toward +inf; the result is the exact (dyadic) value of
// the rounded MPFR float, so containment survives the conversion back
// to rationals.
mpq_class ln_dir(const mpq_class& x, long prec, bool up);   // x > 0
mpq_class exp_dir(const mpq_class& x, long prec, bool up);

QInterval ln_interval(const QInterval& x, long prec);   // x.lo > 0
QInterval ln_interval(const mpz_class& x, long prec);   // x >= 1
QInterval exp_interval(const QInterval& x, long prec);

// exp(y * ln x) with exact interval product in the middle; x.lo > 0.
QInterval pow_interval(const QInterval& x, const QInterval& y, long prec);

// Independent route via mpfr_pow on rectangle corners; used to
// cross-check pow_interval. x.lo > 0.
QInterval pow_direct_interval(const QInterval& x, const QInterval& y, long prec);

// An interval together with the working precision that produced it.
struct CertifiedValue {
    QInterval value;
    long precision_bits = 0;

    bool operator==(const CertifiedValue& o) const {
        return value == o.value && precision_bits == o.precision_bits;
    }
};

// Escalates precision (doubling from limits.start_prec) until the
// computed interval is at most target_width wide or the doubling cap is
// reached. compute(prec) must be monotone in prec (directed rounding
// composed of monotone steps is).
template <class F>
CertifiedValue refine_to_width(F&& compute, const mpq_class& target_width, const Limits& limits = {}) {
    constexpr long kPrecCap = 1L << 26;
    long prec = limits.start_prec;
    QInterval r = compute(prec);
    for (int i = 0; i < limits.max_prec_doublings && prec <= kPrecCap && r.width() > target_width; ++i) {
        prec *= 2;
        r = compute(prec);
    }
    return CertifiedValue{r, prec};
}

}  // namespace cft
