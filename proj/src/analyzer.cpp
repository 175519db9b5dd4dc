#include "cft/analyzer.hpp"

#include <algorithm>

namespace cft {

namespace {

std::optional<FailsAt> first_failure(const std::vector<IndexReport>& rows) {
    for (const auto& row : rows)
        for (const auto& [name, ok] : row.checks)
            if (!ok) return FailsAt{row.n, name};
    return std::nullopt;
}

// Sup of a named ratio by exact comparison of upper endpoints; the first
// index attaining the maximum wins, so the result is deterministic.
std::optional<SupRatio> sup_of(const std::vector<IndexReport>& rows, const std::string& key) {
    std::optional<SupRatio> best;
    for (const auto& row : rows)
        for (const auto& [name, cv] : row.ratios)
            if (name == key && (!best || cv.value.hi > best->value.value.hi)) best = SupRatio{cv, row.n};
    return best;
}

// A big-O condition admits no finite verdict, so the sup is reported
// together with the slope of the last three computed ratios.
Trend trend_of(const std::vector<IndexReport>& rows, const std::string& key) {
    std::vector<mpq_class> mids;
    for (const auto& row : rows)
        for (const auto& [name, cv] : row.ratios)
            if (name == key) mids.push_back(cv.value.mid());
    if (mids.size() < 3) return Trend::Unknown;
    const mpq_class &a = mids[mids.size() - 3], &b = mids[mids.size() - 2], &c = mids.back();
    if (a < b && b < c) return Trend::Increasing;
    if (a > b && b > c) return Trend::Decreasing;
    return Trend::Mixed;
}

enum class CmpOutcome { Lt, Ge, Indeterminate };

// Certified strict comparison lhs < rhs with precision escalation.
template <class FL, class FR>
CmpOutcome certified_lt(FL&& lhs, FR&& rhs, const Limits& lim) {
    long prec = lim.start_prec;
    for (int i = 0; i <= lim.max_prec_doublings && prec <= (1L << 26); ++i, prec *= 2) {
        QInterval l = lhs(prec), r = rhs(prec);
        if (certainly_lt(l, r)) return CmpOutcome::Lt;
        if (l.lo >= r.hi) return CmpOutcome::Ge;
    }
    return CmpOutcome::Indeterminate;
}

// (num_exp, den_exp) of a positive rational exponent product, guarded
// against unsigned overflow.
unsigned long checked_mul(unsigned long a, unsigned long b) {
    unsigned long long r = static_cast<unsigned long long>(a) * b;
    if (b != 0 && r / b != a) throw std::invalid_argument("exponent product overflows");
    if (r > 0x7fffffffUL) throw std::invalid_argument("exponent product too large to cross-power");
    return static_cast<unsigned long>(r);
}

void require_consistent(const ConvergentTable& table, std::span<const mpz_class> seq) {
    const long upto = std::min<long>(table.max_n(), static_cast<long>(seq.size()) - 1);
    for (long n = 0; n <= upto; ++n)
        if (table.quotient(n) != seq[static_cast<std::size_t>(n)])
            throw std::invalid_argument("table is not consistent with the quotient sequence at n=" +
                                        std::to_string(n));
}

}  // namespace

HypothesisReport check_growth_window(std::span<const mpz_class> a_seq, std::span<const mpz_class> b_seq,
                                     const mpq_class& alpha, const mpq_class& alpha_prime,
                                     const AnalyzerOptions& opt) {
    if (a_seq.size() != b_seq.size()) throw std::invalid_argument("sequence length mismatch");
    if (a_seq.size() < 3) throw std::invalid_argument("need quotients through index 2");
    if (alpha <= 1) throw std::invalid_argument("alpha must be > 1");
    if (alpha > alpha_prime) throw std::invalid_argument("alpha must be <= alpha'");
    const RationalExp ea = RationalExp::from(alpha);
    const RationalExp eap = RationalExp::from(alpha_prime);

    HypothesisReport rep;
    rep.name = "growth_window";
    const long last = static_cast<long>(a_seq.size()) - 1;
    for (long n = 1; n + 1 <= last; ++n) {
        const mpz_class& an = a_seq[static_cast<std::size_t>(n)];
        const mpz_class& a1 = a_seq[static_cast<std::size_t>(n) + 1];
        const mpz_class& b1 = b_seq[static_cast<std::size_t>(n) + 1];
        IndexReport row;
        row.n = n;
        row.checks.emplace_back("a>=b", a1 >= b1);
        row.checks.emplace_back("b>=a^alpha", cmp_pow_frac(b1, an, ea.num, ea.den) >= 0);
        row.checks.emplace_back("a<=a^alpha'", cmp_pow_frac(a1, an, eap.num, eap.den) <= 0);
        if (an == 1) {
            row.flags.push_back("effective exponents undefined: a_n = 1");
        } else {
            auto eff = [&](const mpz_class& num) {
                return refine_to_width(
                    [&](long prec) { return ln_interval(num, prec) / ln_interval(an, prec); },
                    opt.ratio_width, opt.limits);
            };
            row.ratios.emplace_back("alpha_eff", eff(b1));
            row.ratios.emplace_back("alphaPrime_eff", eff(a1));
        }
        rep.per_index.push_back(std::move(row));
    }
    rep.sup_ratio = sup_of(rep.per_index, "alphaPrime_eff");
    rep.sup_trend = trend_of(rep.per_index, "alphaPrime_eff");
    rep.fails_at = first_failure(rep.per_index);
    return rep;
}

HypothesisReport check_bigO_ratio(std::span<const mpz_class> a_seq, std::span<const mpz_class> b_seq,
                                  const ConvergentTable& b_table, const std::optional<mpq_class>& alpha,
                                  const AnalyzerOptions& opt) {
    if (a_seq.size() != b_seq.size()) throw std::invalid_argument("sequence length mismatch");
    if (a_seq.size() < 3) throw std::invalid_argument("need quotients through index 2");
    require_consistent(b_table, b_seq);

    HypothesisReport rep;
    rep.name = "bigO_ratio";
    const long last = std::min<long>(static_cast<long>(a_seq.size()) - 1, b_table.max_n() + 1);
    for (long n = 1; n + 1 <= last; ++n) {
        const mpz_class& an = a_seq[static_cast<std::size_t>(n)];
        const mpz_class& bn = b_seq[static_cast<std::size_t>(n)];
        const mpz_class& b1 = b_seq[static_cast<std::size_t>(n) + 1];
        const mpz_class qn = b_table.q(n);
        IndexReport row;
        row.n = n;
        const mpz_class denom_arg = b1 * qn * qn;
        if (denom_arg == 1) {
            row.flags.push_back("indeterminate: ln(b_{n+1} q_n^2) = 0");
            rep.indeterminate_indices.push_back(n);
            rep.per_index.push_back(std::move(row));
            continue;
        }
        if (an == 1 || bn == 1) row.flags.push_back("zero numerator: ln 1");
        row.ratios.emplace_back(
            "r", refine_to_width(
                     [&](long prec) {
                         return (ln_interval(an, prec) * ln_interval(bn, prec)) / ln_interval(denom_arg, prec);
                     },
                     opt.ratio_width, opt.limits));
        rep.per_index.push_back(std::move(row));
    }
    rep.sup_ratio = sup_of(rep.per_index, "r");
    rep.sup_trend = trend_of(rep.per_index, "r");
    rep.fails_at = first_failure(rep.per_index);
    if (alpha && rep.sup_ratio) {
        if (*alpha <= 1) throw std::invalid_argument("alpha must be > 1");
        rep.constants.emplace_back("C2", rep.sup_ratio->value);
        const mpq_class c = (*alpha / (*alpha - 1)) * (*alpha / (*alpha - 1));
        rep.constants.emplace_back(
            "C3", CertifiedValue{c * rep.sup_ratio->value.value, rep.sup_ratio->value.precision_bits});
    }
    return rep;
}

HypothesisReport check_denominator_log_growth(const ConvergentTable& b_table, const AnalyzerOptions& opt) {
    if (b_table.max_n() < 2) throw std::invalid_argument("table too short: need rows through n = 2");

    HypothesisReport rep;
    rep.name = "denominator_log_growth";
    for (long n = 2; n + 1 <= b_table.max_n(); ++n) {
        const mpz_class qn = b_table.q(n);
        IndexReport row;
        row.n = n;
        if (qn == 1) {
            row.flags.push_back("skipped: q_n = 1");
            rep.per_index.push_back(std::move(row));
            continue;
        }
        const mpz_class qn1 = b_table.q(n + 1);
        row.ratios.emplace_back(
            "r", refine_to_width(
                     [&](long prec) {
                         return ln_interval(qn1, prec) / (mpq_class(qn) * ln_interval(qn, prec));
                     },
                     opt.ratio_width, opt.limits));
        rep.per_index.push_back(std::move(row));
    }
    rep.sup_ratio = sup_of(rep.per_index, "r");
    rep.sup_trend = trend_of(rep.per_index, "r");
    rep.fails_at = first_failure(rep.per_index);
    return rep;
}

HypothesisReport check_denominator_bounds(const ConvergentTable& a_table, const ConvergentTable& b_table,
                              const mpq_class& alpha, const std::optional<mpq_class>& k,
                              const AnalyzerOptions& opt) {
    if (alpha == 1) throw std::invalid_argument("alpha = 1 divides by zero in the exponent");
    if (alpha < 1) throw std::invalid_argument("alpha must be > 1");
    const RationalExp ea = RationalExp::from(alpha);      // p/q
    const unsigned long p = ea.num, q = ea.den;
    const unsigned long pq_diff = p - q;                  // alpha/(alpha-1) = p/(p-q)
    std::optional<RationalExp> ek;
    unsigned long k_alpha_num = 0, k_alpha_den = 0;       // k*alpha
    unsigned long l3_num = 0, l3_den = 0;                 // k*alpha^2/(alpha-1)
    if (k) {
        if (*k < 1) throw std::invalid_argument("k must be >= 1");
        ek = RationalExp::from(*k);
        k_alpha_num = checked_mul(ek->num, p);
        k_alpha_den = checked_mul(ek->den, q);
        l3_num = checked_mul(ek->num, checked_mul(p, p));
        l3_den = checked_mul(ek->den, checked_mul(q, pq_diff));
    }

    const long last = std::min(a_table.max_n(), b_table.max_n());
    if (last < 2) throw std::invalid_argument("tables too short: need rows through n = 2");

    HypothesisReport rep;
    rep.name = "denominator_bounds";
    const mpq_class cc = (alpha / (alpha - 1)) * (alpha / (alpha - 1));
    long c1_at = -1;  // minimizing index of bq_n / aq_{n-1}^alpha, by exact cross-comparison

    for (long n = 2; n <= last; ++n) {
        const mpz_class &an = a_table.quotient(n), &bn = b_table.quotient(n);
        const mpz_class &an_prev = a_table.quotient(n - 1);
        const mpz_class &aq = a_table.q(n), &bq = b_table.q(n), &aq_prev = a_table.q(n - 1);
        IndexReport row;
        row.n = n;
        row.checks.emplace_back("hyp:a_n>=a_{n-1}^alpha", cmp_pow_frac(an, an_prev, p, q) >= 0);
        row.checks.emplace_back("hyp:a_n>=b_n", an >= bn);
        row.checks.emplace_back("hyp:b_n>=a_{n-1}^alpha", cmp_pow_frac(bn, an_prev, p, q) >= 0);
        row.checks.emplace_back("aq<2a^(alpha/(alpha-1))", cmp_scaled_pow(aq, 2, an, p, pq_diff) < 0);
        row.checks.emplace_back("bq<2b^(alpha/(alpha-1))", cmp_scaled_pow(bq, 2, bn, p, pq_diff) < 0);
        row.checks.emplace_back("aq>=bq", aq >= bq);
        if (aq == bq) row.flags.push_back("equality: aq_n = bq_n (strict form not attained)");
        if (ek) {
            row.checks.emplace_back("hyp:a_n<=a_{n-1}^(k*alpha)",
                                    cmp_pow_frac(an, an_prev, k_alpha_num, k_alpha_den) <= 0);
            row.checks.emplace_back("aq<2aq_{n-1}^(k*alpha^2/(alpha-1))",
                                    cmp_scaled_pow(aq, 2, aq_prev, l3_num, l3_den) < 0);
        }
        // log-product comparison ln(aq) ln(bq) < (alpha/(alpha-1))^2 ln(a_n) ln(b_n)
        const CmpOutcome eq7 = certified_lt(
            [&](long prec) { return ln_interval(aq, prec) * ln_interval(bq, prec); },
            [&](long prec) { return cc * (ln_interval(an, prec) * ln_interval(bn, prec)); }, opt.limits);
        if (eq7 == CmpOutcome::Indeterminate) {
            row.flags.push_back("indeterminate: log-product comparison undecided at precision cap");
            rep.indeterminate_indices.push_back(n);
        } else {
            row.checks.emplace_back("ln(aq)ln(bq)<(alpha/(alpha-1))^2*ln(a)ln(b)", eq7 == CmpOutcome::Lt);
        }

        // C1 candidate: bq_n / aq_{n-1}^alpha, exact cross-comparison
        // bq_n (aq_{m-1})^alpha <  bq_m (aq_{n-1})^alpha  via q-th powers.
        if (c1_at < 0) {
            c1_at = n;
        } else {
            const mpz_class lhs = pow_z(bq, q) * pow_z(a_table.q(c1_at - 1), p);
            const mpz_class rhs = pow_z(b_table.q(c1_at), q) * pow_z(aq_prev, p);
            if (lhs < rhs) c1_at = n;
        }
        rep.per_index.push_back(std::move(row));
    }

    // Empirical C1 from the minimizing index; exact when alpha is an integer.
    {
        const mpz_class &bqm = b_table.q(c1_at), &aqm_prev = a_table.q(c1_at - 1);
        CertifiedValue c1;
        if (q == 1) {
            mpq_class v(bqm, pow_z(aqm_prev, p));
            v.canonicalize();
            c1 = CertifiedValue{QInterval(v), 0};
        } else {
            c1 = refine_to_width(
                [&](long prec) {
                    return exp_interval(ln_interval(bqm, prec) - alpha * ln_interval(aqm_prev, prec), prec);
                },
                opt.ratio_width, opt.limits);
        }
        rep.constants.emplace_back("C1", c1);
        rep.constants.emplace_back("C1_at_n", CertifiedValue{QInterval(mpq_class(c1_at)), 0});
    }
    rep.fails_at = first_failure(rep.per_index);
    return rep;
}

HypothesisReport check_error_bound_chain(const ConvergentTable& a_table, const ConvergentTable& b_table,
                                   std::span<const mpz_class> b_seq) {
    require_consistent(b_table, b_seq);
    const long last = std::min(a_table.max_n(), b_table.max_n());
    if (last < 2) throw std::invalid_argument("tables too short: need rows through n = 2");

    HypothesisReport rep;
    rep.name = "error_bound_chain";
    for (long n = 1; n + 1 <= last && static_cast<std::size_t>(n + 1) < b_seq.size(); ++n) {
        const mpz_class t1 = b_table.q(n) * b_table.q(n + 1);
        const mpz_class lhs_a = a_table.q(n) * a_table.q(n + 1);
        const mpz_class& b1 = b_seq[static_cast<std::size_t>(n) + 1];
        IndexReport row;
        row.n = n;
        // errHigh is an exclusive bound on the true approximation error, so
        // "<=" on the bounds certifies the strict inequality for the values.
        const bool le = lhs_a >= t1;  // b-side holds with equality by construction
        row.checks.emplace_back("max_err<=1/(bq_n*bq_{n+1})", le);
        if (lhs_a == t1) row.flags.push_back("boundary: bound comparison is an equality");
        row.checks.emplace_back("1/(bq_n*bq_{n+1})<1/(b_{n+1}*bq_n^2)", b1 * b_table.q(n) < b_table.q(n + 1));
        rep.per_index.push_back(std::move(row));
    }
    rep.fails_at = first_failure(rep.per_index);
    return rep;
}

HypothesisReport estimate_gamma0(const ConvergentTable& a_table, const ConvergentTable& b_table,
                                 const AnalyzerOptions& opt) {
    const long last = std::min(a_table.max_n(), b_table.max_n());
    if (last < 3) throw std::invalid_argument("tables too short: need rows through n = 3");

    HypothesisReport rep;
    rep.name = "gamma0";
    std::optional<CertifiedValue> min_gamma;
    long min_at = -1;
    for (long n = 1; n + 1 <= last; ++n) {
        const mpz_class &ha = a_table.q(n), &hb = b_table.q(n);
        IndexReport row;
        row.n = n;
        if (ha < 4 || hb < 4) {
            row.flags.push_back("excluded: height < 4");
            rep.per_index.push_back(std::move(row));
            continue;
        }
        const mpz_class inv_err = std::min(mpz_class(ha * a_table.q(n + 1)), mpz_class(hb * b_table.q(n + 1)));
        CertifiedValue g = refine_to_width(
            [&](long prec) {
                return ln_interval(inv_err, prec) / (ln_interval(ha, prec) * ln_interval(hb, prec));
            },
            opt.ratio_width, opt.limits);
        if (n >= 2 && (min_at < 0 || g.value.lo < min_gamma->value.lo)) {
            min_gamma = g;
            min_at = n;
        }
        row.ratios.emplace_back("gamma", std::move(g));
        rep.per_index.push_back(std::move(row));
    }
    if (min_gamma) {
        rep.constants.emplace_back("gamma0_min", *min_gamma);
        rep.constants.emplace_back("gamma0_min_at_n", CertifiedValue{QInterval(mpq_class(min_at)), 0});
    }
    rep.fails_at = first_failure(rep.per_index);
    return rep;
}

LiouvilleReport liouville_exponents(const ConvergentTable& table, const AnalyzerOptions& opt) {
    if (table.max_n() < 3) throw std::invalid_argument("table too short: need rows through n = 3");

    LiouvilleReport rep;
    for (long n = 1; n + 1 <= table.max_n(); ++n) {
        const mpz_class qn = table.q(n);
        if (qn == 1) {
            rep.skipped.push_back(n);
            continue;
        }
        const mpz_class prod = qn * table.q(n + 1);
        CertifiedValue d = refine_to_width(
            [&](long prec) { return ln_interval(prod, prec) / ln_interval(qn, prec); }, opt.ratio_width,
            opt.limits);
        if (n >= 2 && (rep.min_index < 0 || d.value.lo < rep.min_delta_tail.value.lo)) {
            rep.min_delta_tail = d;
            rep.min_index = n;
        }
        rep.per_index.push_back(LiouvilleReport::Row{n, std::move(d)});
    }
    if (rep.min_index < 0) throw std::invalid_argument("no computable row with n >= 2");
    rep.exceeds_criterion = rep.min_delta_tail.value.lo > rep.criterion_delta;

    if (!rep.per_index.empty()) {
        const mpq_class first_margin = rep.per_index.front().delta.value.lo - rep.criterion_delta;
        const mpq_class last_margin = rep.per_index.back().delta.value.lo - rep.criterion_delta;
        rep.margin_retained = last_margin > 0 && 2 * last_margin >= first_margin;
    }

    if (rep.per_index.size() >= 3) {
        const auto& r = rep.per_index;
        const std::size_t m = r.size();
        const mpq_class d0 = r[m - 3].delta.value.mid(), d1 = r[m - 2].delta.value.mid(),
                        d2 = r[m - 1].delta.value.mid();
        if (d0 < d1 && d1 < d2)
            rep.tail_trend = Trend::Increasing;
        else if (d0 > d1 && d1 > d2)
            rep.tail_trend = Trend::Decreasing;
        else
            rep.tail_trend = Trend::Mixed;
    }
    return rep;
}

}  // namespace cft
