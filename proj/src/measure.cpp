#include "cft/measure.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cft {

const char* to_string(BoundVariant v) {
    switch (v) {
        case BoundVariant::Standard: return "standard";
        case BoundVariant::Weak: return "weak";
        case BoundVariant::Strong: return "strong";
    }
    throw std::logic_error("unreachable");
}

BoundVariant bound_variant_from_string(const std::string& s) {
    if (s == "standard") return BoundVariant::Standard;
    if (s == "weak") return BoundVariant::Weak;
    if (s == "strong") return BoundVariant::Strong;
    throw std::invalid_argument("unknown bound variant: " + s);
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Indeterminate: return "indeterminate";
    }
    throw std::logic_error("unreachable");
}

namespace {

mpq_class bound_exponent(BoundVariant variant, long d, const mpq_class& k) {
    switch (variant) {
        case BoundVariant::Standard: return 2 * k * d * (d + 1);
        case BoundVariant::Weak: return 2 * k * d * (2 * d + 1);
        case BoundVariant::Strong: return k * d * (2 * d + 1);
    }
    throw std::logic_error("unreachable");
}

double log10_of(const mpq_class& v) {
    mpfr_t f;
    mpfr_init2(f, 96);
    mpfr_set_q(f, v.get_mpq_t(), MPFR_RNDN);
    mpfr_log10(f, f, MPFR_RNDN);
    double r = mpfr_get_d(f, MPFR_RNDN);
    mpfr_clear(f);
    return r;
}

unsigned long checked_mul_ul(unsigned long a, unsigned long b) {
    unsigned long long r = static_cast<unsigned long long>(a) * b;
    if (b != 0 && r / b != a) throw std::invalid_argument("exponent product overflows");
    return static_cast<unsigned long>(r);
}

}  // namespace

MeasureBound measure_bound(long d, const mpz_class& H, const mpq_class& k, BoundVariant variant,
                           bool allow_inexact) {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (H < 1) throw std::invalid_argument("H must be >= 1");
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    const mpq_class E = bound_exponent(variant, d, k);
    const mpz_class M = H * d * (d + 1);
    MeasureBound out;
    out.variant = variant;
    out.exponent = E;
    if (E.get_den() == 1) {
        if (!E.get_num().fits_ulong_p()) throw std::invalid_argument("bound exponent too large");
        out.value = mpq_class(1, 2 * pow_z(M, E.get_num().get_ui()));
        out.value.canonicalize();
        out.exact = true;
        return out;
    }
    if (!allow_inexact)
        throw std::invalid_argument(
            "bound exponent is not an integer; pass allow_inexact to accept a certified upper bound");
    // Certified upper bound of 1/2 M^(-E): exp rounded up on -E ln M
    // with ln M rounded down (the -E factor flips the direction).
    const long prec = 192;
    const mpq_class ln_lo = ln_dir(mpq_class(M), prec, false);
    out.value = exp_dir(-E * ln_lo, prec, true) / 2;
    out.exact = false;
    return out;
}

namespace {

// Exact checks of the conditions under which the measure bound is
// claimed, over the generated range; the height flag depends on the
// polynomial and is filled in by the caller.
HypothesisStatus make_hypothesis(long d, const mpq_class& k, std::span<const mpz_class> a_seq,
                                 std::span<const mpz_class> b_seq) {
    HypothesisStatus hs;
    hs.alpha = 2 * d + 1;
    hs.k = k;
    hs.degree_ok = d >= 2;
    const RationalExp ek = RationalExp::from(k);
    const unsigned long alpha_ul = static_cast<unsigned long>(2 * d + 1);
    bool window = a_seq.size() >= 3 && a_seq.size() == b_seq.size();
    for (std::size_t n = 1; window && n + 1 < a_seq.size(); ++n) {
        const mpz_class& an = a_seq[n];
        window = cmp_pow_frac(b_seq[n + 1], an, alpha_ul, 1) >= 0 && b_seq[n + 1] <= a_seq[n + 1] &&
                 cmp_pow_frac(a_seq[n + 1], an, checked_mul_ul(ek.num, alpha_ul), ek.den) <= 0;
    }
    hs.window_ok = window;
    return hs;
}

MeasureCertificate make_certificate(const IntPolynomial& P, const QInterval& power_range,
                                    long precision_bits, const MeasureBound& bound,
                                    const HypothesisStatus& hyp) {
    MeasureCertificate cert{P, abs_interval(P.eval_interval(power_range)), precision_bits, bound,
                            Verdict::Indeterminate, std::nullopt, hyp};
    if (cert.value.lo > bound.value)
        cert.verdict = Verdict::Holds;
    else if (cert.value.hi < bound.value)
        cert.verdict = Verdict::Violated;
    if (cert.value.lo > 0) cert.margin_log10 = log10_of(cert.value.lo / bound.value);
    return cert;
}

constexpr int kMaxRefineRounds = 8;

mpq_class initial_target(const mpq_class& min_bound) {
    mpq_class t = parse_rational("1e-30");
    mpq_class b4 = min_bound / 4;
    return std::min(t, b4);
}

mpq_class next_target(const mpq_class& t) { return t * pow_q(mpq_class(1, 10), 30); }

BatchResult verify_batch_impl(std::span<const IntPolynomial> polys, const QuotientSequence& a_spec,
                              const QuotientSequence& b_spec, const mpq_class& k,
                              std::span<const BoundVariant> variants, bool parallel) {
    if (polys.empty() || variants.empty()) throw std::invalid_argument("empty batch");
    const long nv = static_cast<long>(variants.size());
    const long total = static_cast<long>(polys.size()) * nv;

    // The bound is decreasing in d, H and the exponent, so the smallest
    // bound in the batch comes from the largest degree and height; that
    // pins the initial enclosure target without materialising per-pair
    // bounds up front (those are computed inside the parallel kernel).
    long max_d = 2;
    mpz_class max_h = 1;
    for (const auto& P : polys) {
        if (P.degree() < 2) throw std::invalid_argument("polynomial degree must be >= 2");
        max_d = std::max(max_d, P.degree());
        max_h = std::max(max_h, P.height());
    }
    mpq_class min_bound;
    for (long v = 0; v < nv; ++v) {
        MeasureBound b = measure_bound(max_d, max_h, k, variants[static_cast<std::size_t>(v)], true);
        if (v == 0)
            min_bound = b.value;
        else
            min_bound = std::min(min_bound, b.value);
    }

    const long max_gen = std::min(a_spec.max_index, b_spec.max_index);
    const auto a_seq = generate_quotients(a_spec, max_gen);
    const auto b_seq = generate_quotients(b_spec, max_gen);
    std::map<long, HypothesisStatus> hyp_by_shape;
    for (const auto& P : polys) {
        const long key = P.degree();
        if (!hyp_by_shape.count(key)) hyp_by_shape.emplace(key, make_hypothesis(key, k, a_seq, b_seq));
    }

    BatchResult out;
    std::vector<std::optional<MeasureCertificate>> certs(static_cast<std::size_t>(total));
    std::vector<long> unresolved(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) unresolved[static_cast<std::size_t>(i)] = i;

    // Best effort here: if the digit budget cannot reach the target, the
    // loop below still decides what it can and leaves the rest
    // Indeterminate rather than failing the whole batch.
    mpq_class target = initial_target(min_bound);
    PowerRefinement power = refine_power_best_effort(a_spec, b_spec, target);
    for (int round = 0;; ++round) {
        out.refinement_rounds = round + 1;
        out.final_precision_bits = power.precision_bits;
        const long m = static_cast<long>(unresolved.size());

        auto work = [&](long j) {
            const long idx = unresolved[static_cast<std::size_t>(j)];
            const IntPolynomial& P = polys[static_cast<std::size_t>(idx / nv)];
            HypothesisStatus hyp = hyp_by_shape.at(P.degree());
            const mpz_class H = P.height();
            hyp.height_ok = a_seq.size() > 2 &&
                            cmp_pow_frac(H, a_seq[2], static_cast<unsigned long>(2 * P.degree() + 1), 2) >= 0;
            MeasureBound bound =
                measure_bound(P.degree(), H, k, variants[static_cast<std::size_t>(idx % nv)], true);
            certs[static_cast<std::size_t>(idx)] =
                make_certificate(P, power.value.range, power.precision_bits, std::move(bound), hyp);
        };
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
            for (long j = 0; j < m; ++j) work(j);
        } else {
            for (long j = 0; j < m; ++j) work(j);
        }

        std::vector<long> still;
        for (long idx : unresolved)
            if (certs[static_cast<std::size_t>(idx)]->verdict == Verdict::Indeterminate) still.push_back(idx);
        unresolved = std::move(still);
        if (unresolved.empty() || round + 1 >= kMaxRefineRounds) break;
        target = next_target(target);
        try {
            power = refine_power(a_spec, b_spec, target);
        } catch (const budget_error&) {
            break;  // leave the rest Indeterminate; never a silent pass
        }
    }

    out.certificates.reserve(static_cast<std::size_t>(total));
    for (auto& c : certs) out.certificates.push_back(std::move(*c));
    return out;
}

}  // namespace

bool BatchResult::all_hold() const {
    return std::all_of(certificates.begin(), certificates.end(),
                       [](const MeasureCertificate& c) { return c.verdict == Verdict::Holds; });
}

long BatchResult::count(Verdict v) const {
    return std::count_if(certificates.begin(), certificates.end(),
                         [v](const MeasureCertificate& c) { return c.verdict == v; });
}

BatchResult verify_batch_serial(std::span<const IntPolynomial> polys, const QuotientSequence& a_spec,
                                const QuotientSequence& b_spec, const mpq_class& k,
                                std::span<const BoundVariant> variants) {
    return verify_batch_impl(polys, a_spec, b_spec, k, variants, false);
}

BatchResult verify_batch_parallel(std::span<const IntPolynomial> polys, const QuotientSequence& a_spec,
                                  const QuotientSequence& b_spec, const mpq_class& k,
                                  std::span<const BoundVariant> variants) {
    return verify_batch_impl(polys, a_spec, b_spec, k, variants, true);
}

MeasureCertificate verify_polynomial(const IntPolynomial& P, const QuotientSequence& a_spec,
                                     const QuotientSequence& b_spec, const mpq_class& k,
                                     BoundVariant variant) {
    const IntPolynomial polys[] = {P};
    const BoundVariant variants[] = {variant};
    BatchResult r = verify_batch_impl(polys, a_spec, b_spec, k, variants, false);
    return std::move(r.certificates.front());
}

std::vector<IntPolynomial> sample_polynomials(long d, const mpz_class& H, long count,
                                              unsigned long long seed) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (H < 1) throw std::invalid_argument("H must be >= 1");
    if (!H.fits_slong_p()) throw std::invalid_argument("sampling height too large");
    const long long h = H.get_si();

    SeededRng rng(seed);
    std::vector<IntPolynomial> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        std::vector<mpz_class> coeffs(static_cast<std::size_t>(d) + 1);
        for (long j = 0; j < d; ++j) coeffs[static_cast<std::size_t>(j)] = mpz_class(static_cast<long>(rng.int_in(-h, h)));
        long long lead = 0;
        while (lead == 0) lead = rng.int_in(-h, h);
        coeffs[static_cast<std::size_t>(d)] = mpz_class(static_cast<long>(lead));
        out.push_back(IntPolynomial::from_coeffs(std::move(coeffs)));
    }
    return out;
}

namespace {

// Nearest integer with ties toward zero.
mpz_class round_nearest_toward_zero(const mpq_class& v) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    const mpq_class frac = v - mpq_class(f);
    const mpq_class half(1, 2);
    if (frac > half) return f + 1;
    if (frac < half) return f;
    return v > 0 ? f : f + 1;
}

}  // namespace

std::optional<IntPolynomial> adversarial_candidate(std::span<const mpz_class> high_coeffs,
                                                   const mpq_class& mid, const mpz_class& H) {
    if (high_coeffs.empty() || high_coeffs.back() == 0)
        throw std::invalid_argument("need coefficients e_1..e_d with e_d != 0");
    mpq_class s = 0;
    mpq_class xk = 1;
    for (const auto& e : high_coeffs) {
        xk *= mid;
        s += mpq_class(e) * xk;
    }
    mpz_class e0 = -round_nearest_toward_zero(s);
    mpz_class a0 = abs(e0);
    if (a0 > H) return std::nullopt;
    std::vector<mpz_class> coeffs;
    coeffs.reserve(high_coeffs.size() + 1);
    coeffs.push_back(std::move(e0));
    for (const auto& e : high_coeffs) coeffs.push_back(e);
    return IntPolynomial::from_coeffs(std::move(coeffs));
}

std::vector<SearchHit> adversarial_search(long d, const mpz_class& H, const Enclosure& x, long budget,
                                          unsigned long long seed, long target_accepted) {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (H < 1) throw std::invalid_argument("H must be >= 1");
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (!(x.range.width() < mpq_class(1, 4)))
        throw std::invalid_argument("enclosure too wide for rounding to be well-defined (need width < 1/4)");

    std::vector<SearchHit> hits;
    auto push = [&](IntPolynomial P) {
        QInterval v = abs_interval(P.eval_interval(x.range));
        hits.push_back(SearchHit{std::move(P), std::move(v)});
    };

    if (d == 2 && H <= 8) {
        // Small heights are fully enumerable; the sampled construction is
        // pointless there.
        const long h = static_cast<long>(H.get_si());
        for (long e2 = -h; e2 <= h; ++e2) {
            if (e2 == 0) continue;
            for (long e1 = -h; e1 <= h; ++e1)
                for (long e0 = -h; e0 <= h; ++e0)
                    push(IntPolynomial::from_coeffs({mpz_class(e0), mpz_class(e1), mpz_class(e2)}));
        }
    } else {
        if (!H.fits_slong_p()) throw std::invalid_argument("sampling height too large");
        const long long h = H.get_si();
        const mpq_class mid = x.range.mid();
        SeededRng rng(seed);
        long accepted = 0;
        for (long draw = 0; draw < budget && (target_accepted < 0 || accepted < target_accepted); ++draw) {
            // e_d first, then down to e_1
            std::vector<mpz_class> high(static_cast<std::size_t>(d));
            long long lead = 0;
            while (lead == 0) lead = rng.int_in(-h, h);
            high[static_cast<std::size_t>(d) - 1] = mpz_class(static_cast<long>(lead));
            for (long j = d - 1; j >= 1; --j) high[static_cast<std::size_t>(j) - 1] = mpz_class(static_cast<long>(rng.int_in(-h, h)));
            auto cand = adversarial_candidate(high, mid, H);
            if (!cand) continue;
            push(std::move(*cand));
            ++accepted;
        }
    }

    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.value_abs.hi != b.value_abs.hi) return a.value_abs.hi < b.value_abs.hi;
        if (a.value_abs.lo != b.value_abs.lo) return a.value_abs.lo < b.value_abs.lo;
        return std::lexicographical_compare(a.poly.coeffs().begin(), a.poly.coeffs().end(),
                                            b.poly.coeffs().begin(), b.poly.coeffs().end());
    });
    if (static_cast<long>(hits.size()) > budget)
        hits.erase(hits.begin() + static_cast<std::ptrdiff_t>(budget), hits.end());
    return hits;
}

namespace {

enum class Cmp3 { True, False, Indeterminate };

// hi(L) <= lo(R) proves the claim; lo(L) > hi(R) refutes it.
template <class FL, class FR>
Cmp3 certified_le(FL&& lhs, FR&& rhs, const Limits& lim) {
    long prec = lim.start_prec;
    for (int i = 0; i <= lim.max_prec_doublings && prec <= (1L << 26); ++i, prec *= 2) {
        QInterval l = lhs(prec), r = rhs(prec);
        if (l.hi <= r.lo) return Cmp3::True;
        if (l.lo > r.hi) return Cmp3::False;
    }
    return Cmp3::Indeterminate;
}

std::string outcome_flag(const char* name, Cmp3 c) {
    switch (c) {
        case Cmp3::True: return std::string(name) + ":holds";
        case Cmp3::False: return std::string(name) + ":fails";
        case Cmp3::Indeterminate: return std::string(name) + ":indeterminate";
    }
    throw std::logic_error("unreachable");
}

}  // namespace

HypothesisReport verify_bound_chain(const QuotientSequence& a_spec, const QuotientSequence& b_spec,
                                    const IntPolynomial& P, const mpq_class& k, long n_max,
                                    const Limits& limits) {
    const long d = P.degree();
    if (d < 2) throw std::invalid_argument("polynomial degree must be >= 2");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");

    const auto at = convergents(a_spec, n_max + 1);
    const auto bt = convergents(b_spec, n_max + 1);
    const mpz_class H = P.height();
    const mpq_class deriv_cap = mpq_class(H) * d * (d + 1) / 2;

    // The A^B enclosure must be far narrower than the smallest
    // |A^B - A_n^B_n| gap in range, which is on the order of the CF error
    // at n_max; square it for headroom.
    const mpq_class gap = at.error_bounds(n_max).first * bt.error_bounds(n_max).first;
    PowerRefinement power = refine_power(a_spec, b_spec, gap);
    const QInterval U = power.value.range;
    const QInterval PU = P.eval_interval(U);

    HypothesisReport rep;
    rep.name = "bound_chain";
    for (long n = 2; n <= n_max; ++n) {
        IndexReport row;
        row.n = n;
        const QInterval An{at.value(n)}, Bn{bt.value(n)};
        auto vn_at = [&](long prec) { return pow_interval(An, Bn, prec); };

        // (data) |P(A_n^B_n)| >= aq_n^(-d B_n)
        const mpq_class neg_d_bn = mpq_class(-d) * Bn.lo;
        const Cmp3 weak = certified_le(
            [&](long prec) { return exp_interval(neg_d_bn * ln_interval(at.q(n), prec), prec); },
            [&](long prec) { return abs_interval(P.eval_interval(vn_at(prec))); }, limits);
        row.flags.push_back(outcome_flag("P(AnBn)>=aq^-dBn", weak));

        // (data) |P(A_n^B_n)| > aq_n^(-d), exact rational right-hand side
        mpq_class rhs_strong(1, pow_z(at.q(n), static_cast<unsigned long>(d)));
        rhs_strong.canonicalize();
        Cmp3 strong = Cmp3::Indeterminate;
        {
            long prec = limits.start_prec;
            for (int i = 0; i <= limits.max_prec_doublings && prec <= (1L << 26); ++i, prec *= 2) {
                QInterval v = abs_interval(P.eval_interval(vn_at(prec)));
                if (v.lo > rhs_strong) {
                    strong = Cmp3::True;
                    break;
                }
                if (v.hi < rhs_strong) {
                    strong = Cmp3::False;
                    break;
                }
            }
        }
        row.flags.push_back(outcome_flag("P(AnBn)>aq^-d", strong));

        // derivative bound over the hull of both enclosures
        Cmp3 deriv = Cmp3::Indeterminate;
        {
            long prec = limits.start_prec;
            for (int i = 0; i <= limits.max_prec_doublings && prec <= (1L << 26); ++i, prec *= 2) {
                QInterval dp = abs_interval(P.eval_derivative_interval(hull(U, vn_at(prec))));
                if (dp.hi <= deriv_cap) {
                    deriv = Cmp3::True;
                    break;
                }
                if (dp.lo > deriv_cap) {
                    deriv = Cmp3::False;
                    break;
                }
            }
        }
        if (deriv == Cmp3::Indeterminate) {
            rep.indeterminate_indices.push_back(n);
            row.flags.push_back("derivative bound undecided at precision cap");
        } else {
            row.checks.emplace_back("|P'|<=H*d*(d+1)/2", deriv == Cmp3::True);
        }

        // |P(A^B) - P(A_n^B_n)| <= 1/2 H d (d+1) |A^B - A_n^B_n|
        const Cmp3 mv = certified_le(
            [&](long prec) { return abs_interval(PU - P.eval_interval(vn_at(prec))); },
            [&](long prec) { return deriv_cap * abs_interval(U - vn_at(prec)); }, limits);
        if (mv == Cmp3::Indeterminate) {
            rep.indeterminate_indices.push_back(n);
            row.flags.push_back("mean-value bound undecided at precision cap");
        } else {
            row.checks.emplace_back("|P(A^B)-P(AnBn)|<=1/2*H*d*(d+1)*|A^B-AnBn|", mv == Cmp3::True);
        }
        rep.per_index.push_back(std::move(row));
    }
    for (auto& row : rep.per_index)
        for (auto& [name, ok] : row.checks)
            if (!ok && !rep.fails_at) rep.fails_at = FailsAt{row.n, name};
    return rep;
}

long find_n1(const QuotientSequence& a_spec, long d, const mpz_class& H, const mpq_class& k) {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (H < 1) throw std::invalid_argument("H must be >= 1");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    a_spec.validate();

    // alpha = 2d+1 makes the exponent alpha/2 - d equal to 1/2, so the
    // crossing condition compares a_n against (H d (d+1))^2 exactly.
    const mpz_class threshold = [&] {
        mpz_class x = H * d * (d + 1);
        return mpz_class(x * x);
    }();

    auto a2 = generate_quotients(a_spec, 2);
    if (threshold < a2[2])
        throw std::invalid_argument("H d(d+1) is below sqrt(a_2); no valid n_1 >= 2 exists");

    for (long n = 2; n <= a_spec.max_index; ++n) {
        const auto seq = generate_quotients(a_spec, n);
        if (seq[static_cast<std::size_t>(n)] > threshold) return n;
    }
    throw budget_error("n_1 not reached within max_index");
}

}  // namespace cft
