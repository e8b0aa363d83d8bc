#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "rsdps/core.hpp"

namespace rsdps {

/// Parses the text profile format:
///
///     n m
///     a c b
///     a b c
///     b a c
///
/// Blank lines and `#` comments are ignored. Object names come from the
/// first ranking; matrix columns follow their natural order (numeric names
/// compare numerically, anything else lexicographically).
[[nodiscard]] Profile parse_profile_text(std::string_view text);

/// Parses `{"agents": [...], "objects": [...], "prefs": [[...], ...]}`.
/// `agents` is optional; column order follows `objects`.
[[nodiscard]] Profile parse_profile_json(const nlohmann::json& doc);

/// Dispatches on the first non-blank character: `{` selects JSON.
[[nodiscard]] Profile parse_profile(std::string_view text);

[[nodiscard]] std::string format_profile_text(const Profile& profile);
[[nodiscard]] nlohmann::json profile_to_json(const Profile& profile);

/// Rows of "p/q" strings.
[[nodiscard]] nlohmann::json matrix_to_json(const AssignmentMatrix& matrix);
[[nodiscard]] AssignmentMatrix matrix_from_json(const nlohmann::json& rows);

}  // namespace rsdps
