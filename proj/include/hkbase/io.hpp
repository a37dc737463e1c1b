#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hkbase/configuration.hpp"
#include "hkbase/deduction.hpp"
#include "hkbase/enumerator.hpp"
#include "hkbase/fixtures.hpp"

namespace hkbase {

using nlohmann::json;

/// Parses a configuration document. Unknown fields, malformed rationals and
/// inconsistent structure raise InputError naming the offending field.
Configuration parse_config_document(const json& doc);
Configuration load_config_document(const std::string& path);

json to_json(const ClassificationResult& r, const Configuration& c);
json to_json(const Configuration& c);
json to_json(const Certificate& cert);
json to_json(const FixtureResult& f);
json to_json(const SearchBounds& b);

/// Report written by `classify`: classification, certificate, the parsed
/// configuration, and per-branch results when primitivity is unknown.
json classification_report(const Configuration& c);

json enumeration_summary(const EnumerationReport& report, const SearchBounds& bounds);

/// Survivor table with header gram,mults,class,k,d,q_last.
void write_survivor_csv(std::ostream& out, const EnumerationReport& report);

/// Pretty JSON with sorted keys and a trailing newline.
std::string dump(const json& j);

} // namespace hkbase
