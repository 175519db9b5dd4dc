// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL]
// line (plus indented notes) and the process exits with the number of
// failed criteria. Run a single criterion with --criterion N.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "cft/analyzer.hpp"
#include "cft/config.hpp"
#include "cft/eval.hpp"
#include "cft/measure.hpp"
#include "cft/presets.hpp"

using namespace cft;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string approx(const QInterval& iv) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", iv.mid().get_d());
    return buf;
}

bool check_row(const IndexReport& row, const char* name) {
    for (const auto& [k, v] : row.checks)
        if (k == name) return v;
    return false;
}

const CertifiedValue* find_constant(const HypothesisReport& rep, const char* name) {
    for (const auto& [k, v] : rep.constants)
        if (k == name) return &v;
    return nullptr;
}

// ---- criterion 1: example1 ratio bound ---------------------------------

bool criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SequencePair sp = preset_example1(2, 7);
    const auto seq = generate_quotients(sp.a, 7);
    const ConvergentTable table(seq);
    const auto rep = check_bigO_ratio(seq, seq, table, mpq_class(3));

    const QInterval ln3 = ln_interval(mpz_class(3), 256);
    const mpq_class threshold = ln3.lo + parse_rational("1e-6");
    const double elapsed = seconds_since(t0);
    const bool bound_ok = rep.sup_ratio && rep.sup_ratio->value.value.hi <= threshold;
    const bool ok = bound_ok && elapsed < 5.0;

    std::printf("%s criterion 1: example1 (delta=2) big-O ratio bound over n<=6: sup r_n = %s at n=%ld, "
                "required <= ln 3 + 1e-6 ~ 1.0986; elapsed %.2f s (target < 5 s)\n",
                ok ? "[PASS]" : "[FAIL]", rep.sup_ratio ? approx(rep.sup_ratio->value.value).c_str() : "n/a",
                rep.sup_ratio ? rep.sup_ratio->n : -1, elapsed);
    if (!bound_ok && rep.sup_ratio) {
        std::printf("       note: the certified ratios exceed the claimed constant from n=3 on "
                    "(r_3 ~ %s); the ratio sequence grows ~ (1+delta)^n, so no finite constant bounds it\n",
                    approx(rep.per_index[2].ratios[0].second.value).c_str());
    }
    return ok;
}

// ---- criterion 2: example2 measure anchor -------------------------------

bool criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const SequencePair sp = preset_example2(8);
    const std::vector<mpz_class> heights = {mpz_class(5793), pow_z(2, 14), pow_z(2, 20)};
    const BoundVariant variants[] = {BoundVariant::Strong, BoundVariant::Standard};  // (6H)^-10, (6H)^-12

    bool ok = true;
    long total = 0, holds = 0, indeterminate = 0;
    for (std::size_t i = 0; i < heights.size(); ++i) {
        const mpz_class& H = heights[i];
        const unsigned long long sample_seed = 7 + i, adv_seed = 1007 + i;
        auto polys = sample_polynomials(2, H, 10000, sample_seed);
        PowerRefinement pr = refine_power(sp.a, sp.b, parse_rational("1e-30"));
        auto hits = adversarial_search(2, H, pr.value, 50000, adv_seed, 1000);
        if (hits.size() != 1000) ok = false;
        for (auto& h : hits) polys.push_back(std::move(h.poly));

        BatchResult res = verify_batch_parallel(polys, sp.a, sp.b, 1, variants);
        total += static_cast<long>(res.certificates.size());
        holds += res.count(Verdict::Holds);
        indeterminate += res.count(Verdict::Indeterminate);
        // The gate is on verdicts; hypothesis flags only label each
        // certificate (recomputed heights below the threshold are
        // exploratory, not failures). Bounds use the recomputed height,
        // which is at most the sampling cap, so they are never weaker
        // than the nominal (6H)^-E pair.
        ok = ok && res.all_hold() && res.count(Verdict::Indeterminate) == 0;
        for (const auto& c : res.certificates)
            ok = ok && c.hypothesis.degree_ok && c.hypothesis.window_ok && c.bound.exact;
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 600.0;
    std::printf("%s criterion 2: example2 measure anchor, H in {5793, 2^14, 2^20}, 10^4 sampled + 10^3 "
                "adversarial each, bounds (6H)^-10 and (6H)^-12: %ld/%ld certificates hold, %ld "
                "indeterminate; elapsed %.1f s (target < 600 s)\n",
                ok ? "[PASS]" : "[FAIL]", holds, total, indeterminate, elapsed);
    return ok;
}

// ---- criterion 3: denominator-bound conclusions --------------------------

bool denominator_suite_passes(const ConvergentTable& t, const mpq_class& alpha, const char* label) {
    const auto rep = check_denominator_bounds(t, t, alpha, mpq_class(1));
    for (const auto& row : rep.per_index) {
        if (!check_row(row, "aq<2a^(alpha/(alpha-1))") ||
            !check_row(row, "aq<2aq_{n-1}^(k*alpha^2/(alpha-1))")) {
            std::printf("       defect: %s fails at n=%ld\n", label, row.n);
            return false;
        }
    }
    return true;
}

bool criterion3() {
    bool ok = true;
    {
        const SequencePair e1 = preset_example1(2, 7);
        ok = ok && denominator_suite_passes(convergents(e1.a, 6), e1.alpha, "example1");
        const SequencePair e2 = preset_example2(7);
        ok = ok && denominator_suite_passes(convergents(e2.a, 6), e2.alpha, "example2");
    }
    SeededRng rng(20240810);
    long tested = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const long a1 = static_cast<long>(rng.int_in(2, 10));
        const long den = static_cast<long>(rng.int_in(1, 6));
        const long num = static_cast<long>(rng.int_in(den + 1, 6 * den));
        const mpq_class e(num, den);
        QuotientSequence s{mpz_class(0),
                           PowerRule{mpz_class(a1), e, Rounding::Ceil},
                           6,
                           {}};
        char label[64];
        std::snprintf(label, sizeof label, "PowerRule(a1=%ld, e=%ld/%ld)", a1, num, den);
        ok = ok && denominator_suite_passes(convergents(s, 6), e, label);
        ++tested;
    }
    std::printf("%s criterion 3: denominator-bound exact suite (both presets + %ld random ceil power "
                "rules, n <= 6, k = 1): q_n < 2 a_n^(a/(a-1)) and q_n < 2 q_{n-1}^(a^2/(a-1)) everywhere\n",
                ok ? "[PASS]" : "[FAIL]", tested);
    return ok;
}

// ---- criterion 4: convergent core ---------------------------------------

bool criterion4() {
    SeededRng rng(1000003);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const long len = static_cast<long>(rng.int_in(2, 8));  // total entries a_0..a_{len-1}
        std::vector<mpz_class> a;
        a.emplace_back(static_cast<long>(rng.int_in(0, 10000)));
        for (long i = 1; i < len; ++i) a.emplace_back(static_cast<long>(rng.int_in(1, 10000)));
        ConvergentTable t(a);
        const long N = t.max_n();

        mpq_class fold(a.back());
        for (std::size_t i = a.size() - 1; i-- > 0;) fold = mpq_class(a[i]) + 1 / fold;

        ok = ok && fold == t.value(N);
        for (long n = 0; n <= N && ok; ++n) {
            ok = ok && t.p(n) * t.q(n - 1) - t.p(n - 1) * t.q(n) == ((n % 2 == 0) ? -1 : 1);
            ok = ok && gcd(t.p(n), t.q(n)) == 1;
        }
        for (long n = 1; n + 1 < N && ok; ++n) {
            const QInterval outer = t.enclose_value(n);
            ok = ok && outer.lo < fold && fold < outer.hi;
            if (n + 2 <= N - 1) {
                const QInterval inner = t.enclose_value(n + 1);
                ok = ok && outer.contains(inner) && (inner.lo > outer.lo || inner.hi < outer.hi);
            }
        }
    }
    std::printf("%s criterion 4: convergent core on 1000 random quotient lists (len <= 8, entries <= 10^4): "
                "determinant, gcd, bracketing, bottom-up fold oracle, all exact\n",
                ok ? "[PASS]" : "[FAIL]");
    return ok;
}

// ---- criterion 5: inequality (6) suite ----------------------------------

bool criterion5() {
    bool ok = true;
    bool n1_boundary = false;
    for (const auto& sp : {preset_example1(2, 8), preset_example2(8)}) {
        const auto seq = generate_quotients(sp.a, 7);
        const ConvergentTable t(seq);
        const auto rep = check_error_bound_chain(t, t, seq);
        for (const auto& row : rep.per_index) {
            const bool first = check_row(row, "max_err<=1/(bq_n*bq_{n+1})");
            const bool second = check_row(row, "1/(bq_n*bq_{n+1})<1/(b_{n+1}*bq_n^2)");
            if (row.n == 1) {
                n1_boundary = n1_boundary || !row.flags.empty();
                continue;  // documented boundary case, not a failure gate
            }
            if (row.n >= 2 && row.n <= 6) ok = ok && first && second;
        }
    }
    std::printf("%s criterion 5: strict inequality chain max_err < 1/(q_n q_{n+1}) < 1/(b_{n+1} q_n^2) for "
                "both presets, 2 <= n <= 6 (exact comparisons; the error bound is exclusive)\n",
                ok ? "[PASS]" : "[FAIL]");
    if (n1_boundary)
        std::printf("       note: at n = 1 (and identical a/b sequences generally) the bound comparison "
                    "is an equality of bounds; the underlying values still satisfy the strict form\n");
    return ok;
}

// ---- criterion 6: certified evaluation ----------------------------------

bool criterion6() {
    bool ok = true;
    SeededRng rng(606060);
    for (int i = 0; i < 100 && ok; ++i) {
        const long xd = static_cast<long>(rng.int_in(2, 1000));
        const long xn = static_cast<long>(rng.int_in(1, xd - 1));
        const long yd = static_cast<long>(rng.int_in(2, 1000));
        const long yn = static_cast<long>(rng.int_in(1, yd - 1));
        const QInterval x{mpq_class(xn, xd)}, y{mpq_class(yn, yd)};
        Enclosure e = power_enclosure(Enclosure::point(x.lo), Enclosure::point(y.lo), parse_rational("1e-8"));
        const QInterval three_times = pow_interval(x, y, 3 * e.precision_bits);
        ok = ok && e.range.contains(three_times);
        const QInterval direct = pow_direct_interval(x, y, 2 * e.precision_bits);
        ok = ok && direct.hi >= e.range.lo && e.range.hi >= direct.lo;
    }
    if (!ok) {
        std::printf("[FAIL] criterion 6: containment spot-test failed\n");
        return false;
    }

    // monotone refinement under precision doubling
    const QInterval x(mpq_class(32, 65), mpq_class(1, 2));
    QInterval prev = pow_interval(x, x, 64);
    for (long prec = 128; prec <= 2048; prec *= 2) {
        const QInterval next = pow_interval(x, x, prec);
        ok = ok && prev.contains(next);
        prev = next;
    }

    const SequencePair sp = preset_example2(8);
    const auto t0 = std::chrono::steady_clock::now();
    PowerRefinement pr = refine_power(sp.a, sp.b, parse_rational("1e-20"));
    const double elapsed = seconds_since(t0);
    ok = ok && pr.value.range.width() <= parse_rational("1e-20") && elapsed < 1.0;

    std::printf("%s criterion 6: power enclosure containment on 100 random rational points "
                "(3x-precision result nested, independent power route overlaps), monotone refinement, "
                "example2 A^A width <= 1e-20 in %.3f s (target < 1 s)\n",
                ok ? "[PASS]" : "[FAIL]", elapsed);
    return ok;
}

// ---- criterion 7: gamma0 floor -------------------------------------------

bool criterion7() {
    // Thresholds pinned below the observed minima, which were computed
    // first with the 50-digit log oracle (n=2 values 0.963014... and
    // 1.473555...; minima over n in [2,6] are attained at n = 6).
    struct Case {
        SequencePair sp;
        const char* floor;
        const char* observed;
    };
    const Case cases[] = {
        {preset_example1(2, 8), "0.0100", "0.010009037958"},
        {preset_example2(8), "0.0022", "0.002216194823"},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto seq = generate_quotients(c.sp.a, 7);
        const ConvergentTable t(seq);
        const auto rep = estimate_gamma0(t, t);
        const CertifiedValue* min_gamma = find_constant(rep, "gamma0_min");
        if (!min_gamma) return false;
        const mpq_class floor_v = parse_rational(c.floor);
        ok = ok && min_gamma->value.lo > 0 && min_gamma->value.lo > floor_v;
        detail += std::string(" ") + c.sp.name + " min=" + approx(min_gamma->value) + ">" + c.floor;
    }
    std::printf("%s criterion 7: gamma_0 evidence over n in [2,6]: certified minima strictly positive and "
                "above the oracle-pinned floors (%s)\n",
                ok ? "[PASS]" : "[FAIL]", detail.c_str());
    return ok;
}

// ---- criterion 8: find_n1 exactness --------------------------------------

bool criterion8() {
    const SequencePair sp = preset_example2(8);
    const mpz_class H = pow_z(2, 13);
    bool ok = true;
    long n1 = -1;
    try {
        n1 = find_n1(sp.a, 2, H, 1);
    } catch (const std::exception&) {
        ok = false;
    }
    ok = ok && n1 == 4;
    // minimality re-derived from the raw integers: 49152^2 between a_3 and a_4
    const auto seq = generate_quotients(sp.a, 4);
    const mpz_class X2 = (H * 6) * (H * 6);
    ok = ok && seq[3] <= X2 && X2 < seq[4];
    std::printf("%s criterion 8: find_n1(example2, d=2, H=2^13) = %ld with exact minimality "
                "(a_3 <= 49152^2 < a_4)\n",
                ok ? "[PASS]" : "[FAIL]", n1);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 64;
        }
    }

    const std::vector<std::pair<int, std::function<bool()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
    };

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        if (only != 0 && id != only) continue;
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %d: unexpected exception: %s\n", id, e.what());
        }
        if (!ok) ++failures;
    }
    return failures;
}
