#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>

#include "cft/eval.hpp"
#include "cft/presets.hpp"
#include "oracle_constants.hpp"

using namespace cft;

TEST_CASE("interval ring operations are exact") {
    QInterval a(mpq_class(1, 2), mpq_class(3, 4));
    QInterval b(mpq_class(-2), mpq_class(5));
    QInterval s = a + b;
    CHECK(s.lo == mpq_class(-3, 2));
    CHECK(s.hi == mpq_class(23, 4));
    QInterval p = a * b;
    CHECK(p.lo == mpq_class(-3, 2));
    CHECK(p.hi == mpq_class(15, 4));
    CHECK(abs_interval(QInterval(mpq_class(-3), mpq_class(2))) == QInterval(mpq_class(0), mpq_class(3)));
    CHECK_THROWS_AS(a / b, std::invalid_argument);  // 0 in denominator
    QInterval inv = a / QInterval(mpq_class(2), mpq_class(4));
    CHECK(inv.lo == mpq_class(1, 8));
    CHECK(inv.hi == mpq_class(3, 8));
    CHECK_THROWS_AS(QInterval(mpq_class(1), mpq_class(0)), std::invalid_argument);
}

TEST_CASE("directed ln/exp bracket known values") {
    QInterval l = ln_interval(mpz_class(2), 64);
    CHECK(oracle::contains_approx(l, "0.69314718055994530942"));
    CHECK(l.lo < l.hi);
    QInterval e = exp_interval(QInterval(mpq_class(1)), 64);
    CHECK(oracle::contains_approx(e, "2.71828182845904523536"));
    CHECK_THROWS_AS(ln_interval(QInterval(mpq_class(0), mpq_class(1)), 64), std::invalid_argument);
}

TEST_CASE("ln intervals nest when precision doubles") {
    const mpz_class q3("2181038082");
    QInterval coarse = ln_interval(q3, 64);
    QInterval fine = ln_interval(q3, 128);
    CHECK(coarse.contains(fine));
    QInterval finer = ln_interval(q3, 256);
    CHECK(fine.contains(finer));
}

TEST_CASE("pow_interval on [1,1] is exactly [1,1]") {
    QInterval one(mpq_class(1));
    QInterval y(mpq_class(3, 7), mpq_class(5, 2));
    QInterval r = pow_interval(one, y, 64);
    CHECK(r.lo == 1);
    CHECK(r.hi == 1);
}

TEST_CASE("power_enclosure of the point (1/2, 1/2)") {
    Enclosure x = Enclosure::point(mpq_class(1, 2));
    Enclosure r = power_enclosure(x, x, parse_rational("1e-6"));
    CHECK(r.width_achieved);
    CHECK(r.range.width() <= parse_rational("1e-6"));
    CHECK(oracle::contains_approx(r.range, oracle::kInvSqrt2));

    Enclosure tight = power_enclosure(x, x, parse_rational("1e-30"));
    CHECK(tight.width_achieved);
    CHECK(oracle::contains_approx(tight.range, oracle::kInvSqrt2, "1e-40"));
    CHECK(r.range.contains(tight.range));
}

TEST_CASE("power_enclosure flags unreachable width targets") {
    Enclosure x{QInterval(mpq_class(1, 2), mpq_class(3, 4)), 0, true};
    Enclosure y = Enclosure::point(mpq_class(1, 2));
    Enclosure r = power_enclosure(x, y, parse_rational("1e-9"));
    CHECK(!r.width_achieved);            // image width is ~0.16
    CHECK(r.range.lo < r.range.hi);      // still a valid enclosure
    CHECK(r.range.lo > 0);
    CHECK_THROWS_AS(power_enclosure(Enclosure{QInterval(mpq_class(0), mpq_class(1)), 0, true}, y,
                                    parse_rational("1e-3")),
                    std::invalid_argument);
}

TEST_CASE("poly_enclosure is exact on points and tight on monotone squares") {
    auto sq_minus_x = IntPolynomial::from_coeffs({mpz_class(0), mpz_class(-1), mpz_class(1)});
    Enclosure one = Enclosure::point(mpq_class(1));
    CHECK(poly_enclosure(sq_minus_x, one).range == QInterval(mpq_class(0)));

    auto p = IntPolynomial::from_coeffs({mpz_class(1), mpz_class(3), mpz_class(2)});
    CHECK(poly_enclosure(p, Enclosure::point(mpq_class(1, 2))).range == QInterval(mpq_class(3)));

    auto sq = IntPolynomial::from_coeffs({mpz_class(0), mpz_class(0), mpz_class(1)});
    Enclosure xr{QInterval(mpq_class(7, 10), mpq_class(71, 100)), 0, true};
    QInterval r = poly_enclosure(sq, xr).range;
    CHECK(r.lo == mpq_class(49, 100));
    CHECK(r.hi == mpq_class(5041, 10000));
}

TEST_CASE("containment cross-check on random rational points") {
    SeededRng rng(77);
    for (int i = 0; i < 100; ++i) {
        const long xd = static_cast<long>(rng.int_in(2, 1000));
        const long xn = static_cast<long>(rng.int_in(1, xd - 1));
        const long yd = static_cast<long>(rng.int_in(2, 1000));
        const long yn = static_cast<long>(rng.int_in(1, yd - 1));
        QInterval x{mpq_class(xn, xd)}, y{mpq_class(yn, yd)};

        QInterval mine = pow_interval(x, y, 128);
        QInterval direct = pow_direct_interval(x, y, 192);
        // Both enclose the same true value, so they must overlap, and the
        // tighter direct route must not escape the composed one by more
        // than its own width.
        CHECK(mine.hi >= direct.lo);
        CHECK(direct.hi >= mine.lo);
        QInterval finer = pow_interval(x, y, 384);
        CHECK(mine.contains(finer));
        CHECK(finer.width() < mine.width());
    }
}

TEST_CASE("monotone refinement under precision doubling") {
    QInterval x(mpq_class(32, 65), mpq_class(1, 2));
    QInterval y(mpq_class(32, 65), mpq_class(1, 2));
    QInterval prev = pow_interval(x, y, 64);
    for (long prec = 128; prec <= 1024; prec *= 2) {
        QInterval next = pow_interval(x, y, prec);
        CHECK(prev.contains(next));
        prev = next;
    }
}

TEST_CASE("refine_power on the presets") {
    const SequencePair ex2 = preset_example2(8);
    PowerRefinement r = refine_power(ex2.a, ex2.b, parse_rational("1e-6"));
    CHECK(r.n_used <= 3);
    CHECK(oracle::contains_approx(r.value.range, oracle::kEx2PowAA, "1e-6"));

    const auto t0 = std::chrono::steady_clock::now();
    PowerRefinement tight = refine_power(ex2.a, ex2.b, parse_rational("1e-20"));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(tight.value.range.width() <= parse_rational("1e-20"));
    CHECK(oracle::contains_approx(tight.value.range, oracle::kEx2PowAA, "1e-30"));
    CHECK(secs < 1.0);

    const SequencePair ex1 = preset_example1(2, 8);
    PowerRefinement r1 = refine_power(ex1.a, ex1.b, parse_rational("1e-30"));
    CHECK(r1.n_used <= 4);
    CHECK(oracle::contains_approx(r1.value.range, oracle::kEx1PowAA, "1e-40"));
}

TEST_CASE("refine_power reports budget exhaustion") {
    SequencePair ex2 = preset_example2(4);
    const mpq_class impossible = pow_q(mpq_class(1, 10), 1000000);
    CHECK_THROWS_AS(refine_power(ex2.a, ex2.b, impossible), budget_error);
}

TEST_CASE("nested input enclosures give nested power enclosures") {
    const SequencePair ex2 = preset_example2(8);
    auto t = convergents(ex2.a, 5);
    QInterval outer = t.enclose_value(2), inner = t.enclose_value(3);
    REQUIRE(outer.contains(inner));
    QInterval pow_outer = pow_interval(outer, outer, 128);
    QInterval pow_inner = pow_interval(inner, inner, 128);
    CHECK(pow_outer.contains(pow_inner));
}

TEST_CASE("best-effort refinement survives budget exhaustion") {
    SequencePair ex2 = preset_example2(4);
    const mpq_class impossible = pow_q(mpq_class(1, 10), 1000000);
    PowerRefinement r = refine_power_best_effort(ex2.a, ex2.b, impossible);
    CHECK(!r.value.width_achieved);
    CHECK(r.value.range.lo > 0);
    CHECK(oracle::contains_approx(r.value.range, oracle::kEx2PowAA, "1e-6"));
}
