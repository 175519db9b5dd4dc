#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cft/convergents.hpp"

using namespace cft;

namespace {

std::vector<mpz_class> zs(std::initializer_list<long> xs) {
    std::vector<mpz_class> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// Independent oracle: fold the fraction bottom-up in exact rationals.
mpq_class fold_value(const std::vector<mpz_class>& a) {
    mpq_class v(a.back());
    for (std::size_t i = a.size() - 1; i-- > 0;) v = mpq_class(a[i]) + 1 / v;
    return v;
}

}  // namespace

TEST_CASE("single recurrence step") {
    auto t = convergents(zs({0, 3}));
    CHECK(t.value(1) == mpq_class(1, 3));
}

TEST_CASE("hand recurrence for [0,3,27]") {
    auto t = convergents(zs({0, 3, 27}));
    CHECK(t.p(2) == 27);
    CHECK(t.q(2) == 82);
    CHECK(t.value(2) == mpq_class(27, 82));
}

TEST_CASE("example2 prefix through n=3") {
    auto t = convergents(zs({0, 2, 32, 33554432}));
    CHECK(t.p(3) == mpz_class("1073741825"));
    CHECK(t.q(3) == mpz_class("2181038082"));
    CHECK(gcd(t.p(3), t.q(3)) == 1);
    CHECK(t.p(3) * t.q(2) - t.p(2) * t.q(3) == 1);  // (-1)^(3-1)
}

TEST_CASE("error bounds") {
    auto t = convergents(zs({0, 3, 27}));
    auto [lo, hi] = t.error_bounds(1);
    CHECK(hi == mpq_class(1, 246));
    CHECK(lo == mpq_class(1, 3 * (82 + 3)));
    CHECK(lo < hi);

    auto t2 = convergents(zs({0, 3, 27, 19683}));
    CHECK(t2.q(3) == 1614009);
    CHECK(t2.error_bounds(2).second == mpq_class(1, mpz_class(82) * 1614009));

    CHECK_THROWS_AS(t.error_bounds(2), std::out_of_range);  // needs q_3
}

TEST_CASE("enclosures bracket and have the determinant width") {
    auto t = convergents(zs({0, 3, 27}));
    QInterval e = t.enclose_value(1);
    CHECK(e.lo == mpq_class(27, 82));
    CHECK(e.hi == mpq_class(1, 3));
    CHECK(e.width() == mpq_class(1, mpz_class(3) * 82));

    auto t2 = convergents(zs({0, 2, 32}));
    QInterval e2 = t2.enclose_value(1);
    CHECK(e2.lo == mpq_class(32, 65));
    CHECK(e2.hi == mpq_class(1, 2));

    CHECK_THROWS_AS(t.enclose_value(0), std::out_of_range);
    CHECK_THROWS_AS(t.enclose_value(2), std::out_of_range);
}

TEST_CASE("table preconditions") {
    CHECK_THROWS_AS(convergents(zs({-1, 3})), std::invalid_argument);
    CHECK_THROWS_AS(convergents(zs({0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(convergents(std::vector<mpz_class>{}), std::invalid_argument);
}

TEST_CASE("random tables: determinant, gcd, monotonicity, nesting, fold oracle") {
    SeededRng rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        const long len = static_cast<long>(rng.int_in(2, 8));
        std::vector<mpz_class> a;
        a.emplace_back(static_cast<long>(rng.int_in(0, 10000)));
        for (long i = 1; i <= len; ++i) a.emplace_back(static_cast<long>(rng.int_in(1, 10000)));
        ConvergentTable t(a);
        const long N = t.max_n();

        for (long n = 0; n <= N; ++n) {
            const int expected = (n % 2 == 0) ? -1 : 1;  // (-1)^(n-1)
            CHECK(t.p(n) * t.q(n - 1) - t.p(n - 1) * t.q(n) == expected);
            CHECK(gcd(t.p(n), t.q(n)) == 1);
        }
        for (long n = 1; n < N; ++n) CHECK(t.q(n + 1) > t.q(n));

        const mpq_class v = fold_value(a);
        CHECK(v == t.value(N));
        for (long n = 1; n + 1 < N; ++n) {
            QInterval outer = t.enclose_value(n);
            // the final value sits strictly inside every earlier enclosure
            CHECK(outer.lo < v);
            CHECK(v < outer.hi);
            if (n + 2 <= N - 1) {
                QInterval inner = t.enclose_value(n + 1);
                CHECK(outer.contains(inner));
                // one endpoint is shared; the other moves strictly inward
                CHECK((inner.lo > outer.lo || inner.hi < outer.hi));
            }
        }
    }
}
