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

#ifndef EPPFLAGS_CONFIG_HPP
#define EPPFLAGS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eppflags {

/// Raised for malformed config text or values. `line()` is 0 when the
/// problem is not tied to a line of a file.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string& message, int line = 0);
    int line() const { return line_; }

   private:
    int line_;
};

/// Flat `key = value` configuration. Lines starting with `#` are comments.
/// Keys are unique; later `set` calls override earlier values.
class Config {
   public:
    static Config parse(std::string_view text);
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    /// Accepts "key=value".
    void set_assignment(std::string_view assignment);

    bool contains(const std::string& key) const;
    std::optional<std::string> find(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    std::string require_string(const std::string& key) const;
    double require_double(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

    /// Serialized with sorted keys, one assignment per line.
    std::string to_text() const;

   private:
    std::map<std::string, std::string> entries_;
    std::map<std::string, int> lines_;
};

/// Locale-independent shortest round-trip formatting of a double.
std::string format_double(double value);

}  // namespace eppflags

#endif  // EPPFLAGS_CONFIG_HPP
