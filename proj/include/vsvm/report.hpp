#pragma once

#include <string>

#include <json.hpp>

namespace vsvm {

using Json = nlohmann::ordered_json;

// Deterministic JSON text: keys in insertion order, two-space indent, reals
// with 17 significant digits, non-finite reals as the strings "inf", "-inf",
// "nan". Re-serializing a parsed document reproduces it byte for byte.
std::string dump_report(const Json& doc);
Json parse_report(const std::string& text);

std::string format_fixed17(double value);

// Non-finite reals become strings; finite ones pass through.
Json real_to_json(double value);

}  // namespace vsvm
