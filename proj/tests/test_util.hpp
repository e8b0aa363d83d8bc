#pragma once

#include <string>
#include <vector>

#include "rsdps/core.hpp"

namespace rsdps::testing {

inline Rational R(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> row(std::initializer_list<const char*> cells) {
    std::vector<Rational> out;
    for (auto c : cells) out.push_back(Rational::parse(c));
    return out;
}

inline AssignmentMatrix matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<std::vector<std::string>> cells;
    for (auto r : rows) cells.emplace_back(r.begin(), r.end());
    return matrix_from_strings(cells);
}

/// Ranking over objects named a, b, c, ... written as a string, e.g. "acb".
inline PreferenceOrder pref(const std::string& ranking) {
    std::vector<ObjectId> ids;
    for (char c : ranking) ids.emplace_back(static_cast<std::size_t>(c - 'a'));
    return PreferenceOrder(std::move(ids));
}

inline ObjectId obj(char c) { return ObjectId(static_cast<std::size_t>(c - 'a')); }

}  // namespace rsdps::testing
