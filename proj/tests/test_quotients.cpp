#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cft/quotients.hpp"

using namespace cft;

namespace {

QuotientSequence power_spec(long a1, const mpq_class& e, Rounding r = Rounding::Ceil, long max_index = 8) {
    return QuotientSequence{mpz_class(0), PowerRule{mpz_class(a1), e, r}, max_index, {}};
}

}  // namespace

TEST_CASE("power rule with integer exponent 5") {
    auto q = generate_quotients(power_spec(2, 5), 3);
    REQUIRE(q.size() == 4);
    CHECK(q[0] == 0);
    CHECK(q[1] == 2);
    CHECK(q[2] == 32);
    CHECK(q[3] == 33554432);
}

TEST_CASE("power rule with integer exponent 3") {
    auto q = generate_quotients(power_spec(3, 3), 3);
    CHECK(q == std::vector<mpz_class>{0, 3, 27, 19683});
}

TEST_CASE("explicit list passthrough") {
    QuotientSequence s{mpz_class(0), ExplicitList{{mpz_class(3)}}, 8, {}};
    auto q = generate_quotients(s, 1);
    CHECK(q == std::vector<mpz_class>{0, 3});
}

TEST_CASE("rational exponent rounding modes") {
    // 2^(3/2) = 2.828..., 3^(3/2) = 5.196...
    auto ceil_q = generate_quotients(power_spec(2, mpq_class(3, 2), Rounding::Ceil), 3);
    CHECK(ceil_q == std::vector<mpz_class>{0, 2, 3, 6});
    auto floor_q = generate_quotients(power_spec(2, mpq_class(3, 2), Rounding::Floor), 2);
    CHECK(floor_q == std::vector<mpz_class>{0, 2, 2});
    auto near_q = generate_quotients(power_spec(2, mpq_class(3, 2), Rounding::Nearest), 2);
    CHECK(near_q == std::vector<mpz_class>{0, 2, 3});
}

TEST_CASE("ceil rounding preserves the lower growth bound exactly") {
    // a_{n+1}^den >= a_n^num must hold exactly for every generated step.
    SeededRng rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        const long a1 = static_cast<long>(rng.int_in(2, 10));
        const unsigned long den = static_cast<unsigned long>(rng.int_in(1, 5));
        const unsigned long num = static_cast<unsigned long>(rng.int_in(den + 1, 5 * den));
        const mpq_class e(num, den);
        auto q = generate_quotients(power_spec(a1, e), 5);
        for (std::size_t n = 1; n + 1 < q.size(); ++n) {
            CAPTURE(a1);
            CAPTURE(e.get_str());
            CHECK(cmp_pow_frac(q[n + 1], q[n], RationalExp::from(e).num, RationalExp::from(e).den) >= 0);
            CHECK(q[n + 1] >= q[n]);  // nondecreasing from index 1
        }
    }
}

TEST_CASE("precondition and budget errors") {
    CHECK_THROWS_AS(generate_quotients(power_spec(2, 1), 3), std::invalid_argument);       // exponent <= 1
    CHECK_THROWS_AS(generate_quotients(power_spec(2, mpq_class(1, 2)), 3), std::invalid_argument);
    CHECK_THROWS_AS(generate_quotients(power_spec(1, 5), 3), std::invalid_argument);       // base < 2
    CHECK_THROWS_AS(generate_quotients(power_spec(2, 5), 9), std::invalid_argument);       // upto > max_index

    QuotientSequence bad_explicit{mpz_class(0), ExplicitList{{mpz_class(3), mpz_class(0)}}, 8, {}};
    CHECK_THROWS_AS(generate_quotients(bad_explicit, 2), std::invalid_argument);

    QuotientSequence tight = power_spec(10, 6);
    tight.limits.max_digits10 = 50;  // 10^216 at n = 4 exceeds this
    CHECK_NOTHROW(generate_quotients(tight, 3));
    CHECK_THROWS_AS(generate_quotients(tight, 4), budget_error);
}

TEST_CASE("generation is deterministic") {
    auto a = generate_quotients(power_spec(3, mpq_class(7, 3)), 5);
    auto b = generate_quotients(power_spec(3, mpq_class(7, 3)), 5);
    CHECK(a == b);
}
