#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cft {

// Thrown when a computation would exceed the configured digit or
// precision budget. Callers may catch it and report a resource error;
// it never signals a wrong answer.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Resource knobs shared across modules.
struct Limits {
    long max_digits10 = 1'000'000;  // cap on decimal digits of any generated integer
    int max_prec_doublings = 64;    // precision-escalation cap
    long start_prec = 64;           // initial working precision in bits
};

// Exact decimal digit count (sign excluded).
long digits10(const mpz_class& z);

mpz_class pow_z(const mpz_class& base, unsigned long e);

// base^e for integer e (negative allowed); base != 0 when e < 0.
mpq_class pow_q(const mpq_class& base, long e);

// Positive rational exponent p/q in lowest terms, with both parts
// small enough to be used as mpz_pow_ui exponents.
struct RationalExp {
    unsigned long num = 1;
    unsigned long den = 1;

    static RationalExp from(const mpq_class& e);  // requires e > 0
    mpq_class as_q() const { return mpq_class(num) / mpq_class(den); }
};

enum class Rounding { Ceil, Floor, Nearest };

// Integer rounding of base^(p/q) for base >= 1. Nearest ties cannot
// occur (2^q*t and (2r+1)^q differ in parity), so no tie rule is needed
// beyond rounding the exact value.
mpz_class rounded_power(const mpz_class& base, const RationalExp& e, Rounding mode);

// sign(x^a - c^a * y^b) for x, y >= 0, c >= 1: decides x <=> c * y^(b/a)
// without rational arithmetic. Uses exact bit-length bounds to avoid
// materialising the powers whenever the magnitudes are far apart.
int cmp_scaled_pow(const mpz_class& x, const mpz_class& c, const mpz_class& y,
                   unsigned long b, unsigned long a);

// sign(x - y^(p/q)) for x, y >= 0, via x^q vs y^p.
int cmp_pow_frac(const mpz_class& x, const mpz_class& y, unsigned long p, unsigned long q);

// Accepts "p/q", plain integers, and decimal/scientific literals
// ("0.25", "1e-20", "-3.5e2"), always producing the exact rational.
mpq_class parse_rational(const std::string& s);

// Deterministic RNG for sampled checks: splitmix64 plus rejection
// sampling. Fully specified here so that seeded reports are
// byte-identical across platforms and standard libraries.
class SeededRng {
public:
    explicit SeededRng(unsigned long long seed) : state_(seed) {}

    unsigned long long next_u64();
    unsigned long long below(unsigned long long bound);  // uniform in [0, bound)
    long long int_in(long long lo, long long hi);        // uniform in [lo, hi]

private:
    unsigned long long state_;
};

}  // namespace cft
