#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dgs/dgs_engine.hpp"

namespace dgs {

inline constexpr const char* certificate_schema = "dgs-cert/1";

/// Serialize a certificate as a "dgs-cert/1" document. Integers are
/// decimal strings (no precision loss), rationals are "num/den" strings
/// in lowest terms, vertex labels are 1-based. `generated_at` is embedded
/// verbatim when present and ignored by verification.
nlohmann::json certificate_to_json(
    const DgsCertificate& cert,
    const std::optional<std::string>& generated_at = std::nullopt);

/// Parse a "dgs-cert/1" document. Throws ParseError on schema violations.
DgsCertificate certificate_from_json(const nlohmann::json& doc);

std::string format_rational(const Rat& r);
Rat parse_rational(const std::string& text);

}  // namespace dgs
