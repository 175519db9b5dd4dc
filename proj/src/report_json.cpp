#include "cft/report_json.hpp"

#include <chrono>
#include <sstream>

namespace cft {

ordered_json json_int(const mpz_class& z) {
    ordered_json j;
    j["dec"] = z.get_str();
    j["digitCount"] = digits10(z);
    return j;
}

mpz_class int_from_json(const ordered_json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
    return mpz_class(j.at("dec").get<std::string>(), 10);
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

mpq_class rat_from_json(const ordered_json& j) { return parse_rational(j.get<std::string>()); }

ordered_json json_interval(const CertifiedValue& v) {
    ordered_json j;
    j["lo"] = rat_str(v.value.lo);
    j["hi"] = rat_str(v.value.hi);
    j["precisionBits"] = v.precision_bits;
    j["approx"] = v.value.mid().get_d();
    return j;
}

CertifiedValue interval_from_json(const ordered_json& j) {
    return CertifiedValue{QInterval(parse_rational(j.at("lo").get<std::string>()),
                                    parse_rational(j.at("hi").get<std::string>())),
                          j.at("precisionBits").get<long>()};
}

const char* to_string(Trend t) {
    switch (t) {
        case Trend::Increasing: return "increasing";
        case Trend::Decreasing: return "decreasing";
        case Trend::Mixed: return "mixed";
        case Trend::Unknown: return "unknown";
    }
    throw std::logic_error("unreachable");
}

Trend trend_from_string(const std::string& s) {
    if (s == "increasing") return Trend::Increasing;
    if (s == "decreasing") return Trend::Decreasing;
    if (s == "mixed") return Trend::Mixed;
    if (s == "unknown") return Trend::Unknown;
    throw std::invalid_argument("unknown trend: " + s);
}

ordered_json to_json(const HypothesisReport& r) {
    ordered_json j;
    j["check"] = r.name;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.per_index) {
        ordered_json jr;
        jr["n"] = row.n;
        ordered_json checks = ordered_json::object();
        for (const auto& [name, ok] : row.checks) checks[name] = ok;
        jr["checks"] = checks;
        ordered_json ratios = ordered_json::object();
        for (const auto& [name, cv] : row.ratios) ratios[name] = json_interval(cv);
        jr["ratios"] = ratios;
        jr["flags"] = row.flags;
        rows.push_back(jr);
    }
    j["perIndex"] = rows;
    if (r.sup_ratio) {
        ordered_json s;
        s["value"] = json_interval(r.sup_ratio->value);
        s["n"] = r.sup_ratio->n;
        j["supRatio"] = s;
    } else {
        j["supRatio"] = nullptr;
    }
    j["supTrend"] = to_string(r.sup_trend);
    ordered_json consts = ordered_json::object();
    for (const auto& [name, cv] : r.constants) consts[name] = json_interval(cv);
    j["constants"] = consts;
    if (r.fails_at) {
        ordered_json f;
        f["n"] = r.fails_at->n;
        f["check"] = r.fails_at->check;
        j["verdict"] = ordered_json{{"failsAt", f}};
    } else {
        j["verdict"] = "AllHold";
    }
    j["indeterminate"] = r.indeterminate_indices;
    return j;
}

HypothesisReport hypothesis_from_json(const ordered_json& j) {
    HypothesisReport r;
    r.name = j.at("check").get<std::string>();
    for (const auto& jr : j.at("perIndex")) {
        IndexReport row;
        row.n = jr.at("n").get<long>();
        for (const auto& [name, v] : jr.at("checks").items()) row.checks.emplace_back(name, v.get<bool>());
        for (const auto& [name, v] : jr.at("ratios").items()) row.ratios.emplace_back(name, interval_from_json(v));
        for (const auto& f : jr.at("flags")) row.flags.push_back(f.get<std::string>());
        r.per_index.push_back(std::move(row));
    }
    if (!j.at("supRatio").is_null()) {
        r.sup_ratio = SupRatio{interval_from_json(j.at("supRatio").at("value")),
                               j.at("supRatio").at("n").get<long>()};
    }
    r.sup_trend = trend_from_string(j.at("supTrend").get<std::string>());
    for (const auto& [name, v] : j.at("constants").items()) r.constants.emplace_back(name, interval_from_json(v));
    if (j.at("verdict").is_object()) {
        const auto& f = j.at("verdict").at("failsAt");
        r.fails_at = FailsAt{f.at("n").get<long>(), f.at("check").get<std::string>()};
    }
    for (const auto& n : j.at("indeterminate")) r.indeterminate_indices.push_back(n.get<long>());
    return r;
}

ordered_json to_json(const LiouvilleReport& r) {
    ordered_json j;
    j["check"] = "liouville";
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.per_index) {
        ordered_json jr;
        jr["n"] = row.n;
        jr["delta"] = json_interval(row.delta);
        rows.push_back(jr);
    }
    j["perIndex"] = rows;
    j["minDeltaTail"] = json_interval(r.min_delta_tail);
    j["minIndex"] = r.min_index;
    j["criterionDelta"] = rat_str(r.criterion_delta);
    j["exceedsCriterion"] = r.exceeds_criterion;
    j["tailTrend"] = to_string(r.tail_trend);
    j["marginRetained"] = r.margin_retained;
    j["skipped"] = r.skipped;
    return j;
}

LiouvilleReport liouville_from_json(const ordered_json& j) {
    LiouvilleReport r;
    for (const auto& jr : j.at("perIndex"))
        r.per_index.push_back(LiouvilleReport::Row{jr.at("n").get<long>(), interval_from_json(jr.at("delta"))});
    r.min_delta_tail = interval_from_json(j.at("minDeltaTail"));
    r.min_index = j.at("minIndex").get<long>();
    r.criterion_delta = parse_rational(j.at("criterionDelta").get<std::string>());
    r.exceeds_criterion = j.at("exceedsCriterion").get<bool>();
    r.tail_trend = trend_from_string(j.at("tailTrend").get<std::string>());
    r.margin_retained = j.at("marginRetained").get<bool>();
    for (const auto& n : j.at("skipped")) r.skipped.push_back(n.get<long>());
    return r;
}

ordered_json to_json(const MeasureCertificate& c) {
    ordered_json j;
    ordered_json poly;
    ordered_json coeffs = ordered_json::array();
    for (const auto& e : c.poly.coeffs()) coeffs.push_back(e.get_str());
    poly["coeffs"] = coeffs;
    poly["degree"] = c.poly.degree();
    poly["height"] = json_int(c.poly.height());
    j["poly"] = poly;
    j["value"] = json_interval(CertifiedValue{c.value, c.precision_bits});
    ordered_json b;
    b["value"] = rat_str(c.bound.value);
    b["exact"] = c.bound.exact;
    b["variant"] = to_string(c.bound.variant);
    b["exponent"] = rat_str(c.bound.exponent);
    j["bound"] = b;
    j["verdict"] = to_string(c.verdict);
    if (c.margin_log10)
        j["marginLog10"] = *c.margin_log10;
    else
        j["marginLog10"] = nullptr;
    ordered_json h;
    h["degreeOk"] = c.hypothesis.degree_ok;
    h["heightOk"] = c.hypothesis.height_ok;
    h["windowOk"] = c.hypothesis.window_ok;
    h["alpha"] = rat_str(c.hypothesis.alpha);
    h["k"] = rat_str(c.hypothesis.k);
    j["hypothesis"] = h;
    return j;
}

MeasureCertificate certificate_from_json(const ordered_json& j) {
    std::vector<mpz_class> coeffs;
    for (const auto& e : j.at("poly").at("coeffs")) coeffs.emplace_back(e.get<std::string>(), 10);
    CertifiedValue v = interval_from_json(j.at("value"));
    const auto& jb = j.at("bound");
    MeasureBound bound{parse_rational(jb.at("value").get<std::string>()), jb.at("exact").get<bool>(),
                       bound_variant_from_string(jb.at("variant").get<std::string>()),
                       parse_rational(jb.at("exponent").get<std::string>())};
    const auto& jh = j.at("hypothesis");
    HypothesisStatus hyp{jh.at("degreeOk").get<bool>(), jh.at("heightOk").get<bool>(),
                         jh.at("windowOk").get<bool>(),
                         parse_rational(jh.at("alpha").get<std::string>()),
                         parse_rational(jh.at("k").get<std::string>())};
    std::optional<double> margin;
    if (!j.at("marginLog10").is_null()) margin = j.at("marginLog10").get<double>();
    Verdict verdict;
    const std::string vs = j.at("verdict").get<std::string>();
    if (vs == "holds")
        verdict = Verdict::Holds;
    else if (vs == "violated")
        verdict = Verdict::Violated;
    else if (vs == "indeterminate")
        verdict = Verdict::Indeterminate;
    else
        throw std::invalid_argument("unknown verdict: " + vs);
    return MeasureCertificate{IntPolynomial::from_coeffs(std::move(coeffs)), v.value, v.precision_bits,
                              std::move(bound), verdict, margin, std::move(hyp)};
}

ordered_json to_json(const ConvergentTable& t) {
    ordered_json j;
    j["check"] = "convergents";
    ordered_json rows = ordered_json::array();
    for (long n = -1; n <= t.max_n(); ++n) {
        ordered_json jr;
        jr["n"] = n;
        if (n >= 0) jr["a"] = json_int(t.quotient(n));
        jr["p"] = json_int(t.p(n));
        jr["q"] = json_int(t.q(n));
        rows.push_back(jr);
    }
    j["rows"] = rows;
    return j;
}

ordered_json emit_report(const ordered_json& config_echo, std::vector<ordered_json> checks) {
    if (checks.empty()) throw std::invalid_argument("emit_report: no check results");
    ordered_json doc;
    doc["schemaVersion"] = 1;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    doc["generatedAt"] = buf;
    doc["config"] = config_echo;
    doc["checks"] = std::move(checks);
    return doc;
}

namespace {

void csv_row(std::ostringstream& out, const std::string& check, const std::string& index,
             const std::string& field, const std::string& lo, const std::string& hi) {
    out << check << ',' << index << ',' << field << ',' << lo << ',' << hi << '\n';
}

std::string cell(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

std::string render_csv(const ordered_json& report) {
    std::ostringstream out;
    out << "check,index,field,lo,hi\n";
    for (const auto& chk : report.at("checks")) {
        const std::string name = chk.value("check", std::string("?"));
        if (chk.contains("perIndex")) {
            for (const auto& row : chk.at("perIndex")) {
                const std::string n = std::to_string(row.at("n").get<long>());
                if (row.contains("checks"))
                    for (const auto& [f, v] : row.at("checks").items())
                        csv_row(out, name, n, f, v.get<bool>() ? "true" : "false", "");
                if (row.contains("ratios"))
                    for (const auto& [f, v] : row.at("ratios").items())
                        csv_row(out, name, n, f, cell(v.at("lo")), cell(v.at("hi")));
                if (row.contains("delta"))
                    csv_row(out, name, n, "delta", cell(row.at("delta").at("lo")),
                            cell(row.at("delta").at("hi")));
                if (row.contains("flags"))
                    for (const auto& f : row.at("flags")) csv_row(out, name, n, "flag", cell(f), "");
            }
        }
        if (chk.contains("certificates")) {
            long i = 0;
            for (const auto& c : chk.at("certificates")) {
                const std::string n = std::to_string(i++);
                std::string coeffs;
                for (const auto& e : c.at("poly").at("coeffs")) {
                    if (!coeffs.empty()) coeffs += ';';
                    coeffs += e.get<std::string>();
                }
                csv_row(out, name, n, "coeffs", coeffs, "");
                csv_row(out, name, n, "verdict", cell(c.at("verdict")), "");
                csv_row(out, name, n, "value", cell(c.at("value").at("lo")), cell(c.at("value").at("hi")));
                csv_row(out, name, n, "bound", cell(c.at("bound").at("value")),
                        cell(c.at("bound").at("variant")));
            }
        }
        if (chk.contains("rows")) {
            for (const auto& row : chk.at("rows")) {
                const std::string n = std::to_string(row.at("n").get<long>());
                csv_row(out, name, n, "p", cell(row.at("p").at("dec")), "");
                csv_row(out, name, n, "q", cell(row.at("q").at("dec")), "");
            }
        }
    }
    return out.str();
}

}  // namespace cft
