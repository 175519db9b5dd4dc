#include "cft/config.hpp"

#include <fstream>
#include <set>

namespace cft {

namespace {

const std::set<std::string> kKnownChecks = {
    "growth_window", "bigO_ratio",  "denominator_log_growth",  "denominator_bounds",     "error_bound_chain", "gamma0",
    "liouville",     "convergents", "measure", "bound_chain", "find_n1",    "power"};

mpq_class param_rat(const ordered_json& p, const std::string& key) {
    try {
        const auto& v = p.at(key);
        if (v.is_number_integer()) return mpq_class(v.get<long>());
        return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw config_error("parameter '" + key + "': " + e.what());
    } catch (const ordered_json::exception&) {
        throw config_error("missing or malformed parameter '" + key + "'");
    }
}

mpz_class param_int(const ordered_json& p, const std::string& key) {
    mpq_class q = param_rat(p, key);
    if (q.get_den() != 1) throw config_error("parameter '" + key + "' must be an integer");
    return mpz_class(q.get_num());
}

long param_long(const ordered_json& p, const std::string& key, std::optional<long> fallback = {}) {
    if (!p.contains(key)) {
        if (fallback) return *fallback;
        throw config_error("missing parameter '" + key + "'");
    }
    if (!p.at(key).is_number_integer()) throw config_error("parameter '" + key + "' must be an integer");
    return p.at(key).get<long>();
}

QuotientSequence sequence_from_json(const ordered_json& js) {
    QuotientSequence s;
    s.a0 = js.contains("a0") ? param_int(js, "a0") : mpz_class(0);
    s.max_index = param_long(js, "maxIndex", 8);
    if (js.contains("maxDigits")) s.limits.max_digits10 = param_long(js, "maxDigits");
    const auto& jr = js.at("rule");
    const std::string type = jr.at("type").get<std::string>();
    if (type == "power") {
        PowerRule pr;
        pr.a1 = param_int(jr, "a1");
        pr.exponent = param_rat(jr, "exponent");
        const std::string rounding = jr.value("rounding", std::string("ceil"));
        if (rounding == "ceil")
            pr.rounding = Rounding::Ceil;
        else if (rounding == "floor")
            pr.rounding = Rounding::Floor;
        else if (rounding == "nearest")
            pr.rounding = Rounding::Nearest;
        else
            throw config_error("unknown rounding mode: " + rounding);
        s.rule = pr;
    } else if (type == "explicit") {
        ExplicitList xs;
        for (const auto& t : jr.at("terms")) {
            if (t.is_number_integer())
                xs.terms.emplace_back(t.get<long>());
            else
                xs.terms.emplace_back(t.get<std::string>(), 10);
        }
        s.rule = xs;
    } else {
        throw config_error("unknown rule type: " + type);
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid sequence: ") + e.what());
    }
    return s;
}

bool check_is_sampled(const CheckSpec& c) {
    return c.name == "measure" &&
           (c.params.value("sampled", 0) > 0 || c.params.value("adversarial", 0) > 0);
}

// Realized growth exponent of a power-rule pair, if any; used for the
// default alpha of preset checks.
std::optional<mpq_class> rule_exponent(const SequencePair& sp) {
    if (const auto* pr = std::get_if<PowerRule>(&sp.a.rule)) return pr->exponent;
    return std::nullopt;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const ordered_json& doc) {
    ExperimentConfig cfg;
    cfg.echo = doc;
    try {
        if (doc.value("schemaVersion", 1) != 1) throw config_error("unsupported schemaVersion");
        const auto& seqs = doc.at("sequences");
        cfg.sequences.name = doc.value("name", std::string("custom"));
        cfg.sequences.a = sequence_from_json(seqs.at("a"));
        if (seqs.contains("b") && seqs.at("b").is_object())
            cfg.sequences.b = sequence_from_json(seqs.at("b"));
        else
            cfg.sequences.b = cfg.sequences.a;  // "same-as-a"
        if (auto e = rule_exponent(cfg.sequences)) {
            cfg.sequences.alpha = *e;
            cfg.sequences.alpha_prime = *e;
        }
        cfg.upto = doc.value("upto", 6L);
        if (cfg.upto < 2) throw config_error("upto must be >= 2");
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<unsigned long long>();
        if (!doc.contains("checks") || !doc.at("checks").is_array() || doc.at("checks").empty())
            throw config_error("config must list at least one check");
        for (const auto& jc : doc.at("checks")) {
            CheckSpec c;
            c.name = jc.at("check").get<std::string>();
            if (!kKnownChecks.count(c.name)) throw config_error("unknown check name: " + c.name);
            c.params = jc;
            cfg.checks.push_back(std::move(c));
        }
        if (doc.contains("output")) {
            cfg.output.format = doc.at("output").value("format", std::string("json"));
            cfg.output.path = doc.at("output").value("path", std::string());
        }
        if (cfg.output.format != "json" && cfg.output.format != "csv")
            throw config_error("output format must be json or csv");
        for (const auto& c : cfg.checks)
            if (check_is_sampled(c) && !cfg.seed && !c.params.contains("seed"))
                throw config_error("a seed is required when sampled checks are requested");
    } catch (const ordered_json::exception& e) {
        throw config_error(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const ordered_json::exception& e) {
        throw config_error(std::string("config parse error in ") + path + ": " + e.what());
    }
    return from_json(doc);
}

ExperimentConfig ExperimentConfig::from_preset(const std::string& preset_name, long upto) {
    SequencePair sp = preset_by_name(preset_name, upto + 1);
    ordered_json doc;
    doc["schemaVersion"] = 1;
    doc["name"] = sp.name;
    doc["preset"] = preset_name;
    doc["upto"] = upto;
    const std::string alpha = rat_str(sp.alpha);
    doc["checks"] = ordered_json::array({
        ordered_json{{"check", "convergents"}},
        ordered_json{{"check", "growth_window"}, {"alpha", alpha}, {"alphaPrime", alpha}},
        ordered_json{{"check", "bigO_ratio"}, {"alpha", alpha}},
        ordered_json{{"check", "denominator_log_growth"}},
        ordered_json{{"check", "denominator_bounds"}, {"alpha", alpha}, {"k", "1"}},
        ordered_json{{"check", "error_bound_chain"}},
        ordered_json{{"check", "gamma0"}},
        ordered_json{{"check", "liouville"}},
    });

    ExperimentConfig cfg;
    cfg.echo = doc;
    cfg.sequences = std::move(sp);
    cfg.upto = upto;
    for (const auto& jc : doc.at("checks")) cfg.checks.push_back(CheckSpec{jc.at("check").get<std::string>(), jc});
    return cfg;
}

namespace {

struct CheckOutcome {
    ordered_json json;
    RunStatus status = RunStatus::Ok;
};

RunStatus status_of(const HypothesisReport& r) {
    if (r.fails_at) return RunStatus::Failed;
    if (!r.indeterminate_indices.empty()) return RunStatus::Indeterminate;
    return RunStatus::Ok;
}

CheckOutcome run_check(const ExperimentConfig& cfg, const CheckSpec& check,
                       const std::vector<mpz_class>& a_seq, const std::vector<mpz_class>& b_seq,
                       const ConvergentTable& at, const ConvergentTable& bt) {
    const ordered_json& p = check.params;
    const SequencePair& sp = cfg.sequences;

    auto alpha_param = [&](const char* key) -> mpq_class {
        if (p.contains(key)) return param_rat(p, key);
        if (auto e = rule_exponent(sp)) return *e;
        throw config_error(std::string(check.name) + ": parameter '" + key +
                           "' required for explicit sequences");
    };

    if (check.name == "convergents") {
        ordered_json j;
        j["check"] = "convergents";
        j["a"] = to_json(at);
        j["b"] = to_json(bt);
        return {j, RunStatus::Ok};
    }
    if (check.name == "growth_window") {
        auto r = check_growth_window(a_seq, b_seq, alpha_param("alpha"), alpha_param("alphaPrime"));
        return {to_json(r), status_of(r)};
    }
    if (check.name == "bigO_ratio") {
        std::optional<mpq_class> alpha;
        if (p.contains("alpha")) alpha = param_rat(p, "alpha");
        auto r = check_bigO_ratio(a_seq, b_seq, bt, alpha);
        return {to_json(r), status_of(r)};
    }
    if (check.name == "denominator_log_growth") {
        auto r = check_denominator_log_growth(bt);
        return {to_json(r), status_of(r)};
    }
    if (check.name == "denominator_bounds") {
        std::optional<mpq_class> k;
        if (p.contains("k")) k = param_rat(p, "k");
        auto r = check_denominator_bounds(at, bt, alpha_param("alpha"), k);
        return {to_json(r), status_of(r)};
    }
    if (check.name == "error_bound_chain") {
        auto r = check_error_bound_chain(at, bt, b_seq);
        return {to_json(r), status_of(r)};
    }
    if (check.name == "gamma0") {
        auto r = estimate_gamma0(at, bt);
        return {to_json(r), status_of(r)};
    }
    if (check.name == "liouville") {
        auto r = liouville_exponents(bt);
        return {to_json(r), RunStatus::Ok};
    }
    if (check.name == "power") {
        const mpq_class w = p.contains("targetWidth") ? param_rat(p, "targetWidth") : parse_rational("1e-20");
        PowerRefinement pr = refine_power(sp.a, sp.b, w);
        ordered_json j;
        j["check"] = "power";
        j["targetWidth"] = rat_str(w);
        j["value"] = json_interval(CertifiedValue{pr.value.range, pr.precision_bits});
        j["nUsed"] = pr.n_used;
        j["widthAchieved"] = pr.value.width_achieved;
        return {j, RunStatus::Ok};
    }
    if (check.name == "find_n1") {
        const long d = param_long(p, "d");
        const mpz_class H = param_int(p, "H");
        const mpq_class k = p.contains("k") ? param_rat(p, "k") : mpq_class(1);
        const long n1 = find_n1(sp.a, d, H, k);
        ordered_json j;
        j["check"] = "find_n1";
        j["d"] = d;
        j["H"] = json_int(H);
        j["k"] = rat_str(k);
        j["n1"] = n1;
        return {j, RunStatus::Ok};
    }
    if (check.name == "bound_chain") {
        std::vector<mpz_class> coeffs;
        for (const auto& e : p.at("poly")) {
            if (e.is_number_integer())
                coeffs.emplace_back(e.get<long>());
            else
                coeffs.emplace_back(e.get<std::string>(), 10);
        }
        const mpq_class k = p.contains("k") ? param_rat(p, "k") : mpq_class(1);
        const long n_max = param_long(p, "nMax", std::min<long>(cfg.upto, 4));
        auto r = verify_bound_chain(sp.a, sp.b, IntPolynomial::from_coeffs(std::move(coeffs)), k, n_max);
        return {to_json(r), status_of(r)};
    }
    if (check.name == "measure") {
        const long d = param_long(p, "d");
        const mpz_class H = param_int(p, "H");
        const mpq_class k = p.contains("k") ? param_rat(p, "k") : mpq_class(1);
        const long sampled = param_long(p, "sampled", 100);
        const long adversarial = param_long(p, "adversarial", 100);
        const long budget = param_long(p, "budget", adversarial > 0 ? adversarial * 20 : 1);
        const unsigned long long seed =
            p.contains("seed") ? p.at("seed").get<unsigned long long>() : cfg.seed.value_or(0);

        std::vector<BoundVariant> variants;
        if (p.contains("variants"))
            for (const auto& v : p.at("variants")) variants.push_back(bound_variant_from_string(v.get<std::string>()));
        else
            variants = {BoundVariant::Standard, BoundVariant::Strong};

        std::vector<IntPolynomial> polys = sample_polynomials(d, H, sampled, seed);
        long discarded = 0;
        if (adversarial > 0) {
            // Rounding construction needs an enclosure of A^B first.
            PowerRefinement pr = refine_power(sp.a, sp.b, parse_rational("1e-30"));
            auto hits = adversarial_search(d, H, pr.value, budget, seed + 1, adversarial);
            discarded = budget - static_cast<long>(hits.size());
            for (auto& h : hits) polys.push_back(std::move(h.poly));
        }
        if (polys.empty()) throw config_error("measure: no polynomials to verify");
        BatchResult res = verify_batch_parallel(polys, sp.a, sp.b, k, variants);

        ordered_json j;
        j["check"] = "measure";
        j["d"] = d;
        j["H"] = json_int(H);
        j["k"] = rat_str(k);
        j["seed"] = seed;
        j["sampled"] = sampled;
        j["adversarial"] = static_cast<long>(polys.size()) - sampled;
        j["discardedByHeightCap"] = discarded;
        j["refinementRounds"] = res.refinement_rounds;
        ordered_json certs = ordered_json::array();
        for (const auto& c : res.certificates) certs.push_back(to_json(c));
        j["certificates"] = certs;
        j["holds"] = res.count(Verdict::Holds);
        j["violated"] = res.count(Verdict::Violated);
        j["indeterminate"] = res.count(Verdict::Indeterminate);
        RunStatus st = RunStatus::Ok;
        if (res.count(Verdict::Violated) > 0)
            st = RunStatus::Failed;
        else if (res.count(Verdict::Indeterminate) > 0)
            st = RunStatus::Indeterminate;
        return {j, st};
    }
    throw config_error("unknown check name: " + check.name);
}

}  // namespace

namespace {

long gen_upto(const QuotientSequence& s, long want) {
    long cap = std::min(want, s.max_index);
    if (const auto* xs = std::get_if<ExplicitList>(&s.rule))
        cap = std::min<long>(cap, static_cast<long>(xs->terms.size()));
    return cap;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
    const auto a_seq = generate_quotients(cfg.sequences.a, gen_upto(cfg.sequences.a, cfg.upto + 1));
    const auto b_seq = generate_quotients(cfg.sequences.b, gen_upto(cfg.sequences.b, cfg.upto + 1));
    const ConvergentTable at(a_seq), bt(b_seq);

    std::vector<ordered_json> checks;
    bool failed = false, indeterminate = false, resource = false;
    for (const auto& check : cfg.checks) {
        try {
            CheckOutcome out = run_check(cfg, check, a_seq, b_seq, at, bt);
            checks.push_back(std::move(out.json));
            failed |= out.status == RunStatus::Failed;
            indeterminate |= out.status == RunStatus::Indeterminate;
        } catch (const budget_error& e) {
            ordered_json j;
            j["check"] = check.name;
            j["error"] = std::string("budget: ") + e.what();
            checks.push_back(std::move(j));
            resource = true;
        }
    }
    RunResult r;
    r.report = emit_report(cfg.echo, std::move(checks));
    if (failed)
        r.exit_code = static_cast<int>(RunStatus::Failed);
    else if (resource)
        r.exit_code = static_cast<int>(RunStatus::Resource);
    else if (indeterminate)
        r.exit_code = static_cast<int>(RunStatus::Indeterminate);
    return r;
}

std::string render_output(const ExperimentConfig& cfg, const ordered_json& report) {
    if (cfg.output.format == "csv") return render_csv(report);
    return report.dump(2) + "\n";
}

}  // namespace cft
