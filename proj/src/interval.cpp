#include "cft/interval.hpp"

#include <mpfr.h>

#include <algorithm>

namespace cft {

QInterval::QInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("interval endpoints out of order");
}

QInterval operator+(const QInterval& a, const QInterval& b) { return QInterval(a.lo + b.lo, a.hi + b.hi); }

QInterval operator-(const QInterval& a, const QInterval& b) { return QInterval(a.lo - b.hi, a.hi - b.lo); }

QInterval operator-(const QInterval& a) { return QInterval(-a.hi, -a.lo); }

QInterval operator*(const QInterval& a, const QInterval& b) {
    mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return QInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                     std::max(std::max(p1, p2), std::max(p3, p4)));
}

QInterval operator*(const mpq_class& c, const QInterval& a) {
    return c >= 0 ? QInterval(c * a.lo, c * a.hi) : QInterval(c * a.hi, c * a.lo);
}

QInterval operator/(const QInterval& num, const QInterval& den) {
    if (den.lo <= 0 && den.hi >= 0) throw std::invalid_argument("interval division by an interval containing 0");
    QInterval inv(1 / den.hi, 1 / den.lo);
    return num * inv;
}

QInterval abs_interval(const QInterval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return QInterval(-a.hi, -a.lo);
    return QInterval(mpq_class(0), std::max<mpq_class>(-a.lo, a.hi));
}

QInterval hull(const QInterval& a, const QInterval& b) {
    return QInterval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

QInterval intersect(const QInterval& a, const QInterval& b) {
    mpq_class lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw std::invalid_argument("intersecting disjoint intervals");
    return QInterval(lo, hi);
}

namespace {

struct MpfrVal {
    mpfr_t f;
    explicit MpfrVal(long prec) { mpfr_init2(f, prec); }
    ~MpfrVal() { mpfr_clear(f); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
};

mpq_class to_q(const MpfrVal& v) {
    mpq_class out;
    mpfr_get_q(out.get_mpq_t(), v.f);
    return out;
}

mpq_class unary_dir(const mpq_class& x, long prec, bool up, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    const mpfr_rnd_t rnd = up ? MPFR_RNDU : MPFR_RNDD;
    MpfrVal a(prec), r(prec);
    mpfr_set_q(a.f, x.get_mpq_t(), rnd);
    fn(r.f, a.f, rnd);
    return to_q(r);
}

}  // namespace

mpq_class ln_dir(const mpq_class& x, long prec, bool up) {
    if (x <= 0) throw std::invalid_argument("ln requires a positive argument");
    return unary_dir(x, prec, up, mpfr_log);
}

mpq_class exp_dir(const mpq_class& x, long prec, bool up) { return unary_dir(x, prec, up, mpfr_exp); }

QInterval ln_interval(const QInterval& x, long prec) {
    if (x.lo <= 0) throw std::invalid_argument("ln_interval requires x.lo > 0");
    return QInterval(ln_dir(x.lo, prec, false), ln_dir(x.hi, prec, true));
}

QInterval ln_interval(const mpz_class& x, long prec) {
    if (x < 1) throw std::invalid_argument("ln_interval requires x >= 1");
    const mpfr_rnd_t down = MPFR_RNDD, upr = MPFR_RNDU;
    MpfrVal a(prec), r(prec);
    mpfr_set_z(a.f, x.get_mpz_t(), down);
    mpfr_log(r.f, a.f, down);
    mpq_class lo = to_q(r);
    mpfr_set_z(a.f, x.get_mpz_t(), upr);
    mpfr_log(r.f, a.f, upr);
    return QInterval(std::move(lo), to_q(r));
}

QInterval exp_interval(const QInterval& x, long prec) {
    return QInterval(exp_dir(x.lo, prec, false), exp_dir(x.hi, prec, true));
}

QInterval pow_interval(const QInterval& x, const QInterval& y, long prec) {
    QInterval m = y * ln_interval(x, prec);  // exact product of certified logs
    return exp_interval(m, prec);
}

QInterval pow_direct_interval(const QInterval& x, const QInterval& y, long prec) {
    if (x.lo <= 0) throw std::invalid_argument("pow_direct_interval requires x.lo > 0");
    // x^y on a positive-x rectangle attains its extrema at corners. Each
    // corner is evaluated twice with argument and result rounding chosen
    // by the local monotonicity (sign of y for x, position of x vs 1 for y).
    auto corner = [&](const mpq_class& cx, const mpq_class& cy, bool up) {
        const mpfr_rnd_t rnd = up ? MPFR_RNDU : MPFR_RNDD;
        const bool x_up = (cy >= 0) ? up : !up;
        const bool y_up = (cx >= 1) ? up : !up;
        MpfrVal fx(prec), fy(prec), r(prec);
        mpfr_set_q(fx.f, cx.get_mpq_t(), x_up ? MPFR_RNDU : MPFR_RNDD);
        mpfr_set_q(fy.f, cy.get_mpq_t(), y_up ? MPFR_RNDU : MPFR_RNDD);
        mpfr_pow(r.f, fx.f, fy.f, rnd);
        return to_q(r);
    };
    mpq_class lo, hi;
    bool first = true;
    for (const mpq_class& cx : {x.lo, x.hi})
        for (const mpq_class& cy : {y.lo, y.hi}) {
            mpq_class d = corner(cx, cy, false), u = corner(cx, cy, true);
            if (first) {
                lo = d;
                hi = u;
                first = false;
            } else {
                lo = std::min(lo, d);
                hi = std::max(hi, u);
            }
        }
    return QInterval(std::move(lo), std::move(hi));
}

}  // namespace cft
