// Copyright 2026 The eppflags Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eppflags/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace eppflags {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(const std::string& key, int line) {
    std::string out = "key '" + key + "'";
    if (line > 0) {
        out += " (line " + std::to_string(line) + ")";
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

Config Config::parse(std::string_view text) {
    Config config;
    int line_number = 0;
    while (!text.empty()) {
        ++line_number;
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);

        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_number);
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) {
            throw ConfigError("empty key", line_number);
        }
        if (config.entries_.contains(key)) {
            throw ConfigError("duplicate key '" + key + "'", line_number);
        }
        config.entries_[key] = value;
        config.lines_[key] = line_number;
    }
    return config;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

void Config::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
    lines_.erase(key);
}

void Config::set_assignment(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override must look like key=value, got '" + std::string(assignment) + "'");
    }
    const std::string key{trim(assignment.substr(0, eq))};
    if (key.empty()) {
        throw ConfigError("override has an empty key");
    }
    set(key, std::string(trim(assignment.substr(eq + 1))));
}

bool Config::contains(const std::string& key) const { return entries_.contains(key); }

std::optional<std::string> Config::find(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return find(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto value = find(key);
    if (!value) {
        return fallback;
    }
    double out = 0.0;
    const char* begin = value->data();
    const char* end = begin + value->size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        const auto line = lines_.find(key);
        throw ConfigError(where(key, 0) + ": '" + *value + "' is not a number",
                          line == lines_.end() ? 0 : line->second);
    }
    return out;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
    const auto value = find(key);
    if (!value) {
        return fallback;
    }
    std::uint64_t out = 0;
    const char* begin = value->data();
    const char* end = begin + value->size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        const auto line = lines_.find(key);
        throw ConfigError(where(key, 0) + ": '" + *value + "' is not a non-negative integer",
                          line == lines_.end() ? 0 : line->second);
    }
    return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto value = find(key);
    if (!value) {
        return fallback;
    }
    if (*value == "true" || *value == "1" || *value == "yes") {
        return true;
    }
    if (*value == "false" || *value == "0" || *value == "no") {
        return false;
    }
    const auto line = lines_.find(key);
    throw ConfigError(where(key, 0) + ": '" + *value + "' is not a boolean",
                      line == lines_.end() ? 0 : line->second);
}

std::string Config::require_string(const std::string& key) const {
    const auto value = find(key);
    if (!value) {
        throw ConfigError("missing required key '" + key + "'");
    }
    return *value;
}

double Config::require_double(const std::string& key) const {
    if (!contains(key)) {
        throw ConfigError("missing required key '" + key + "'");
    }
    return get_double(key, 0.0);
}

std::string Config::to_text() const {
    std::string out;
    for (const auto& [key, value] : entries_) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

}  // namespace eppflags
