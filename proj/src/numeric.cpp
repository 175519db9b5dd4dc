#include "cft/numeric.hpp"

#include <cctype>
#include <limits>

namespace cft {

long digits10(const mpz_class& z) {
    // mpz_sizeinbase may overestimate by one; the exact count matters for
    // serialized digit fields, so fall back to the string length.
    if (z == 0) return 1;
    std::string s = z.get_str();
    return static_cast<long>(s.size()) - (s[0] == '-' ? 1 : 0);
}

mpz_class pow_z(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpq_class pow_q(const mpq_class& base, long e) {
    if (e == 0) return mpq_class(1);
    if (base == 0 && e < 0) throw std::invalid_argument("pow_q: zero base with negative exponent");
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), ae);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), ae);
    if (e < 0) mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    // base was canonical, so num^e / den^e is canonical too
    return r;
}

RationalExp RationalExp::from(const mpq_class& e) {
    if (e <= 0) throw std::invalid_argument("exponent must be positive");
    const mpz_class num(e.get_num()), den(e.get_den());
    if (!num.fits_ulong_p() || !den.fits_ulong_p())
        throw std::invalid_argument("exponent numerator/denominator too large");
    return RationalExp{num.get_ui(), den.get_ui()};
}

mpz_class rounded_power(const mpz_class& base, const RationalExp& e, Rounding mode) {
    if (base < 1) throw std::invalid_argument("rounded_power: base must be >= 1");
    mpz_class t = pow_z(base, e.num);
    if (e.den == 1) return t;
    mpz_class r;
    const int exact = mpz_root(r.get_mpz_t(), t.get_mpz_t(), e.den);
    if (exact) return r;
    switch (mode) {
        case Rounding::Floor:
            return r;
        case Rounding::Ceil:
            return r + 1;
        case Rounding::Nearest: {
            // t^(1/q) vs r + 1/2  <=>  2^q t vs (2r+1)^q; never equal (parity)
            mpz_class lhs = t << e.den;
            mpz_class rhs = pow_z(2 * r + 1, e.den);
            return lhs > rhs ? r + 1 : r;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// Exact bit-length window of v^e: bits(v^e) in [e*(bits(v)-1)+1, e*bits(v)].
struct BitRange {
    unsigned long long lo = 0, hi = 0;  // inclusive
};

BitRange pow_bits(const mpz_class& v, unsigned long e) {
    const unsigned long long b = mpz_sizeinbase(v.get_mpz_t(), 2);
    return BitRange{static_cast<unsigned long long>(e) * (b - 1) + 1, static_cast<unsigned long long>(e) * b};
}

}  // namespace

int cmp_scaled_pow(const mpz_class& x, const mpz_class& c, const mpz_class& y,
                   unsigned long b, unsigned long a) {
    if (x < 0 || y < 0 || c < 1) throw std::invalid_argument("cmp_scaled_pow: nonnegative x, y and c >= 1 required");
    if (a == 0 || b == 0) throw std::invalid_argument("cmp_scaled_pow: exponents must be positive");
    if (x == 0) return (y == 0) ? 0 : -1;
    if (y == 0) return 1;

    // Bit-length prefilter: decides without materialising huge powers
    // whenever the magnitudes are far apart (the common case here).
    if (x > 1 && y > 1) {
        BitRange lx = pow_bits(x, a);
        BitRange rhs = pow_bits(y, b);
        const unsigned long long cbits = static_cast<unsigned long long>(a) * (mpz_sizeinbase(c.get_mpz_t(), 2));
        rhs.lo += (c == 1) ? 0 : static_cast<unsigned long long>(a) * (mpz_sizeinbase(c.get_mpz_t(), 2) - 1);
        rhs.hi += (c == 1) ? 0 : cbits;
        if (lx.hi < rhs.lo) return -1;
        if (lx.lo > rhs.hi) return 1;
    }

    mpz_class lhs = pow_z(x, a);
    mpz_class r = pow_z(y, b);
    if (c != 1) r *= pow_z(c, a);
    return cmp(lhs, r);
}

int cmp_pow_frac(const mpz_class& x, const mpz_class& y, unsigned long p, unsigned long q) {
    return cmp_scaled_pow(x, 1, y, p, q);
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find('/') != std::string::npos) {
        mpq_class r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0 || mpz_cmp_ui(mpq_denref(r.get_mpq_t()), 0) == 0)
            throw std::invalid_argument("bad rational literal: " + s);
        r.canonicalize();
        return r;
    }
    // decimal / scientific form
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    std::string digits;
    long frac_len = 0;
    bool saw_digit = false, saw_dot = false;
    for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
        if (s[i] == '.') {
            if (saw_dot) throw std::invalid_argument("bad rational literal: " + s);
            saw_dot = true;
        } else {
            digits.push_back(s[i]);
            saw_digit = true;
            if (saw_dot) ++frac_len;
        }
    }
    if (!saw_digit) throw std::invalid_argument("bad rational literal: " + s);
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        if (i >= s.size()) throw std::invalid_argument("bad rational literal: " + s);
        long v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad rational literal: " + s);
            v = v * 10 + (s[i] - '0');
            if (v > 1'000'000) throw std::invalid_argument("exponent out of range: " + s);
        }
        exp10 = eneg ? -v : v;
    }
    if (i != s.size()) throw std::invalid_argument("bad rational literal: " + s);
    mpq_class r{mpz_class(digits, 10)};
    long net = exp10 - frac_len;
    mpz_class scale = pow_z(10, static_cast<unsigned long>(net < 0 ? -net : net));
    if (net >= 0)
        r *= scale;
    else
        r /= mpq_class(scale);
    if (neg) r = -r;
    r.canonicalize();
    return r;
}

unsigned long long SeededRng::next_u64() {
    // splitmix64
    unsigned long long z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

unsigned long long SeededRng::below(unsigned long long bound) {
    if (bound == 0) throw std::invalid_argument("SeededRng::below(0)");
    const unsigned long long limit = std::numeric_limits<unsigned long long>::max() - (std::numeric_limits<unsigned long long>::max() % bound);
    unsigned long long v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

long long SeededRng::int_in(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("SeededRng::int_in: empty range");
    const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1;
    return lo + static_cast<long long>(span == 0 ? next_u64() : below(span));
}

}  // namespace cft
