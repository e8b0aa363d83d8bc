#include "rsdps/io.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace rsdps {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool natural_less(const std::string& a, const std::string& b) {
    if (all_digits(a) && all_digits(b)) {
        if (a.size() != b.size()) return a.size() < b.size();
    }
    return a < b;
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

PreferenceOrder ranking_from_names(const std::vector<std::string>& names,
                                   const std::unordered_map<std::string, std::size_t>& index,
                                   std::size_t line) {
    std::vector<ObjectId> ids;
    std::vector<bool> seen(index.size(), false);
    for (const auto& name : names) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(line, "unknown object '" + name + "'");
        if (seen[it->second]) throw ParseError(line, "object '" + name + "' appears twice in ranking");
        seen[it->second] = true;
        ids.emplace_back(it->second);
    }
    if (ids.size() != index.size()) {
        throw ParseError(line, "ranking lists " + std::to_string(ids.size()) + " objects, expected " +
                                   std::to_string(index.size()));
    }
    return PreferenceOrder(std::move(ids));
}

}  // namespace

Profile parse_profile_text(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split_ws(line);
        if (!tokens.empty()) lines.emplace_back(lineno, std::move(tokens));
        start = end + 1;
    }
    if (lines.empty()) throw ParseError(0, "empty profile");

    const auto& [header_line, header] = lines.front();
    if (header.size() != 2 || !all_digits(header[0]) || !all_digits(header[1])) {
        throw ParseError(header_line, "expected header 'n m'");
    }
    const std::size_t n = std::stoul(header[0]);
    const std::size_t m = std::stoul(header[1]);
    if (n == 0 || m == 0) throw ParseError(header_line, "n and m must be positive");
    if (lines.size() - 1 < n) {
        throw ParseError(lines.back().first, "expected " + std::to_string(n) + " rankings, found " +
                                                  std::to_string(lines.size() - 1));
    }
    if (lines.size() - 1 > n) throw ParseError(lines[n + 1].first, "unexpected extra ranking");

    std::vector<std::string> objects = lines[1].second;
    if (objects.size() != m) {
        throw ParseError(lines[1].first, "ranking lists " + std::to_string(objects.size()) + " objects, expected " +
                                             std::to_string(m));
    }
    std::sort(objects.begin(), objects.end(), natural_less);
    if (auto dup = std::adjacent_find(objects.begin(), objects.end()); dup != objects.end()) {
        throw ParseError(lines[1].first, "object '" + *dup + "' appears twice in ranking");
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < m; ++j) index.emplace(objects[j], j);

    std::vector<PreferenceOrder> prefs;
    std::vector<std::string> agents;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [line, tokens] = lines[i + 1];
        prefs.push_back(ranking_from_names(tokens, index, line));
        agents.push_back(default_agent_name(i));
    }
    return Profile(std::move(prefs), std::move(agents), std::move(objects));
}

Profile parse_profile_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError(0, "profile JSON must be an object");
    if (!doc.contains("objects") || !doc["objects"].is_array()) throw ParseError(0, "missing 'objects' array");
    if (!doc.contains("prefs") || !doc["prefs"].is_array()) throw ParseError(0, "missing 'prefs' array");

    std::vector<std::string> objects;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& o : doc["objects"]) {
        if (!o.is_string()) throw ParseError(0, "object names must be strings");
        auto name = o.get<std::string>();
        if (!index.emplace(name, objects.size()).second) throw ParseError(0, "duplicate object '" + name + "'");
        objects.push_back(std::move(name));
    }
    if (objects.empty()) throw ParseError(0, "profile needs at least one object");

    std::vector<PreferenceOrder> prefs;
    for (std::size_t i = 0; i < doc["prefs"].size(); ++i) {
        const auto& row = doc["prefs"][i];
        if (!row.is_array()) throw ParseError(0, "prefs[" + std::to_string(i) + "] must be an array");
        std::vector<std::string> names;
        for (const auto& o : row) {
            if (!o.is_string()) throw ParseError(0, "prefs[" + std::to_string(i) + "] must hold object names");
            names.push_back(o.get<std::string>());
        }
        try {
            prefs.push_back(ranking_from_names(names, index, 0));
        } catch (const ParseError& e) {
            throw ParseError(0, "prefs[" + std::to_string(i) + "]: " + e.what());
        }
    }
    if (prefs.empty()) throw ParseError(0, "profile needs at least one agent");

    std::vector<std::string> agents;
    if (doc.contains("agents")) {
        for (const auto& a : doc["agents"]) agents.push_back(a.is_string() ? a.get<std::string>() : a.dump());
        if (agents.size() != prefs.size()) throw ParseError(0, "'agents' and 'prefs' differ in length");
    } else {
        for (std::size_t i = 0; i < prefs.size(); ++i) agents.push_back(default_agent_name(i));
    }
    return Profile(std::move(prefs), std::move(agents), std::move(objects));
}

Profile parse_profile(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(0, std::string("invalid JSON: ") + e.what());
        }
        return parse_profile_json(doc);
    }
    return parse_profile_text(text);
}

std::string format_profile_text(const Profile& profile) {
    std::ostringstream os;
    os << profile.n() << ' ' << profile.m() << '\n';
    for (const auto& pref : profile.prefs()) {
        for (std::size_t pos = 0; pos < pref.size(); ++pos) {
            if (pos) os << ' ';
            os << profile.object_name(pref[pos]);
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::json profile_to_json(const Profile& profile) {
    nlohmann::json prefs = nlohmann::json::array();
    for (const auto& pref : profile.prefs()) {
        nlohmann::json row = nlohmann::json::array();
        for (auto obj : pref.ranking()) row.push_back(profile.object_name(obj));
        prefs.push_back(std::move(row));
    }
    return {{"agents", profile.agent_names()}, {"objects", profile.object_names()}, {"prefs", std::move(prefs)}};
}

nlohmann::json matrix_to_json(const AssignmentMatrix& matrix) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < matrix.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : matrix.row(i)) row.push_back(v.str());
        rows.push_back(std::move(row));
    }
    return rows;
}

AssignmentMatrix matrix_from_json(const nlohmann::json& rows) {
    if (!rows.is_array()) throw ParseError(0, "matrix must be an array of rows");
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        if (!row.is_array()) throw ParseError(0, "matrix rows must be arrays");
        auto& out = cells.emplace_back();
        for (const auto& v : row) {
            if (!v.is_string()) throw ParseError(0, "matrix entries must be 'p/q' strings");
            out.push_back(v.get<std::string>());
        }
    }
    try {
        return matrix_from_strings(cells);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

}  // namespace rsdps
