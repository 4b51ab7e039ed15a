#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tslasso/matrix.hpp"

namespace tslasso {

/// Minimal structured-text format used for DGM specs and experiment
/// configs: `key = value` lines plus `[nested.table]` headers. Values are
/// strings ("..."), integers, floats, booleans, and single-line (possibly
/// nested) arrays. Every document written by write_config() parses back
/// to an equal table.
struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;
using ConfigTable = std::map<std::string, ConfigValue>;

struct ConfigValue {
    std::variant<bool, std::int64_t, double, std::string, ConfigArray, ConfigTable> v;

    ConfigValue() : v(std::int64_t{0}) {}
    ConfigValue(bool b) : v(b) {}
    ConfigValue(std::int64_t i) : v(i) {}
    ConfigValue(int i) : v(static_cast<std::int64_t>(i)) {}
    ConfigValue(std::size_t i) : v(static_cast<std::int64_t>(i)) {}
    ConfigValue(double d) : v(d) {}
    ConfigValue(const char* s) : v(std::string(s)) {}
    ConfigValue(std::string s) : v(std::move(s)) {}
    ConfigValue(ConfigArray a) : v(std::move(a)) {}
    ConfigValue(ConfigTable t) : v(std::move(t)) {}

    bool is_table() const { return std::holds_alternative<ConfigTable>(v); }
    bool is_array() const { return std::holds_alternative<ConfigArray>(v); }

    bool as_bool() const;
    std::int64_t as_int() const;
    double as_double() const;  // accepts int values too
    const std::string& as_string() const;
    const ConfigArray& as_array() const;
    const ConfigTable& as_table() const;

    bool operator==(const ConfigValue& other) const { return v == other.v; }
};

ConfigTable parse_config(const std::string& text);
std::string write_config(const ConfigTable& table);

// Typed lookup helpers; `required` lookups throw std::runtime_error with
// the key name when missing.
bool config_has(const ConfigTable& t, const std::string& key);
std::int64_t config_int(const ConfigTable& t, const std::string& key);
std::int64_t config_int_or(const ConfigTable& t, const std::string& key, std::int64_t fallback);
double config_double(const ConfigTable& t, const std::string& key);
double config_double_or(const ConfigTable& t, const std::string& key, double fallback);
std::string config_string(const ConfigTable& t, const std::string& key);
std::string config_string_or(const ConfigTable& t, const std::string& key, std::string fallback);
std::vector<double> config_double_list(const ConfigTable& t, const std::string& key);
std::vector<std::int64_t> config_int_list(const ConfigTable& t, const std::string& key);
const ConfigTable& config_table(const ConfigTable& t, const std::string& key);

Matrix config_matrix(const ConfigTable& t, const std::string& key);
ConfigValue matrix_to_config(const Matrix& m);

}  // namespace tslasso
