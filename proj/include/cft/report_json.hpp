#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cft/analyzer.hpp"
#include "cft/convergents.hpp"
#include "cft/eval.hpp"
#include "cft/measure.hpp"

namespace cft {

using ordered_json = nlohmann::ordered_json;

// Exact integers are serialized as decimal strings with an exact digit
// count; rationals as canonical "p/q" strings; certified intervals as
// {lo, hi, precisionBits}. Nothing numeric goes through floating point
// except the advisory "approx" fields.
ordered_json json_int(const mpz_class& z);
mpz_class int_from_json(const ordered_json& j);

std::string rat_str(const mpq_class& q);
mpq_class rat_from_json(const ordered_json& j);

ordered_json json_interval(const CertifiedValue& v);
CertifiedValue interval_from_json(const ordered_json& j);

const char* to_string(Trend t);
Trend trend_from_string(const std::string& s);

ordered_json to_json(const HypothesisReport& r);
HypothesisReport hypothesis_from_json(const ordered_json& j);

ordered_json to_json(const LiouvilleReport& r);
LiouvilleReport liouville_from_json(const ordered_json& j);

ordered_json to_json(const MeasureCertificate& c);
MeasureCertificate certificate_from_json(const ordered_json& j);

ordered_json to_json(const ConvergentTable& t);

// Top-level document: {schemaVersion, generatedAt, config, checks}.
// generatedAt is the only non-deterministic field. Throws on empty
// check lists.
ordered_json emit_report(const ordered_json& config_echo, std::vector<ordered_json> checks);

// Long-format flattening of per-index tables and certificates:
// check,index,field,lo,hi
std::string render_csv(const ordered_json& report);

}  // namespace cft
