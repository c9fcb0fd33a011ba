#pragma once

#include <string>

#include <json.hpp>

#include "conemod/cone_operator.hpp"
#include "conemod/moduli.hpp"
#include "conemod/p2_cohomology.hpp"

namespace conemod {

inline constexpr int kSchemaVersion = 1;

// Serialization rules: rationals as "p/q" strings, algebraic floats as
// {"float": x, "label": "..."}. Reports carry no timestamps so identical
// inputs produce identical bytes.
nlohmann::json rate_to_json(const Rate& r);
Rate rate_from_json(const nlohmann::json& j);
nlohmann::json window_to_json(const Window& w);

ConeOperatorSpec operator_from_json(const nlohmann::json& j);
nlohmann::json operator_to_json(const ConeOperatorSpec& op);

ModuliConfig moduli_config_from_json(const nlohmann::json& j);
nlohmann::json moduli_config_to_json(const ModuliConfig& config);

nlohmann::json rates_report(const ConeOperatorSpec& op, const CriticalRateSet& set);
nlohmann::json cohomology_report(const std::string& expr_text);
nlohmann::json dimension_report_json(const ModuliConfig& config, const VirtualDimensionReport& report);

// Canonical text form (sorted keys, 2-space indent, trailing newline).
std::string dump_report(const nlohmann::json& j);

}  // namespace conemod
