#include "tslasso/config_text.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace tslasso {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("config parse error at line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Drops a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (c == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

class ValueParser {
public:
    ValueParser(const std::string& text, std::size_t line) : text_(text), line_(line) {}

    ConfigValue parse() {
        skip_ws();
        ConfigValue v = parse_value();
        skip_ws();
        if (pos_ != text_.size()) fail(line_, "trailing characters after value");
        return v;
    }

private:
    ConfigValue parse_value() {
        if (pos_ >= text_.size()) fail(line_, "missing value");
        const char c = text_[pos_];
        if (c == '"') return parse_string();
        if (c == '[') return parse_array();
        return parse_scalar();
    }

    ConfigValue parse_string() {
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            char c = text_[pos_++];
            if (c == '\\' && pos_ < text_.size()) {
                const char n = text_[pos_++];
                if (n == 'n') c = '\n';
                else if (n == 't') c = '\t';
                else c = n;  // \" and \\ pass through
            }
            out.push_back(c);
        }
        if (pos_ >= text_.size()) fail(line_, "unterminated string");
        ++pos_;  // closing quote
        return ConfigValue(std::move(out));
    }

    ConfigValue parse_array() {
        ++pos_;  // '['
        ConfigArray arr;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return ConfigValue(std::move(arr));
        }
        for (;;) {
            skip_ws();
            arr.push_back(parse_value());
            skip_ws();
            if (pos_ >= text_.size()) fail(line_, "unterminated array");
            if (text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (text_[pos_] == ']') {
                ++pos_;
                return ConfigValue(std::move(arr));
            }
            fail(line_, "expected ',' or ']' in array");
        }
    }

    ConfigValue parse_scalar() {
        std::size_t end = pos_;
        while (end < text_.size() && text_[end] != ',' && text_[end] != ']') ++end;
        std::string tok = trim(text_.substr(pos_, end - pos_));
        pos_ = end;
        if (tok.empty()) fail(line_, "empty value");
        if (tok == "true") return ConfigValue(true);
        if (tok == "false") return ConfigValue(false);

        bool looks_float = false;
        for (char c : tok)
            if (c == '.' || c == 'e' || c == 'E' || c == 'n' || c == 'i') looks_float = true;
        char* endp = nullptr;
        if (!looks_float) {
            const long long i = std::strtoll(tok.c_str(), &endp, 10);
            if (endp && *endp == '\0') return ConfigValue(static_cast<std::int64_t>(i));
        }
        const double d = std::strtod(tok.c_str(), &endp);
        if (!endp || *endp != '\0') fail(line_, "cannot parse value '" + tok + "'");
        return ConfigValue(d);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    const std::string& text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

ConfigTable* descend(ConfigTable& root, const std::string& path, std::size_t line) {
    ConfigTable* cur = &root;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t dot = path.find('.', start);
        const std::string part =
            trim(dot == std::string::npos ? path.substr(start) : path.substr(start, dot - start));
        if (part.empty()) fail(line, "empty table name");
        auto it = cur->find(part);
        if (it == cur->end()) it = cur->emplace(part, ConfigValue(ConfigTable{})).first;
        if (!it->second.is_table()) fail(line, "key '" + part + "' is not a table");
        cur = &std::get<ConfigTable>(it->second.v);
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return cur;
}

std::string format_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    std::string s(buf);
    // Keep a float marker so the reader preserves the type.
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find('n') == std::string::npos && s.find('i') == std::string::npos)
        s += ".0";
    return s;
}

void write_value(std::ostringstream& out, const ConfigValue& v) {
    if (std::holds_alternative<bool>(v.v)) {
        out << (std::get<bool>(v.v) ? "true" : "false");
    } else if (std::holds_alternative<std::int64_t>(v.v)) {
        out << std::get<std::int64_t>(v.v);
    } else if (std::holds_alternative<double>(v.v)) {
        out << format_double(std::get<double>(v.v));
    } else if (std::holds_alternative<std::string>(v.v)) {
        out << '"';
        for (char c : std::get<std::string>(v.v)) {
            if (c == '"' || c == '\\') out << '\\';
            out << c;
        }
        out << '"';
    } else if (v.is_array()) {
        out << '[';
        const auto& arr = std::get<ConfigArray>(v.v);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (i) out << ", ";
            write_value(out, arr[i]);
        }
        out << ']';
    } else {
        throw std::runtime_error("write_config: nested table used as inline value");
    }
}

void write_table(std::ostringstream& out, const ConfigTable& t, const std::string& prefix) {
    for (const auto& [key, value] : t) {
        if (value.is_table()) continue;
        out << key << " = ";
        write_value(out, value);
        out << '\n';
    }
    for (const auto& [key, value] : t) {
        if (!value.is_table()) continue;
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        out << '\n' << '[' << path << "]\n";
        write_table(out, std::get<ConfigTable>(value.v), path);
    }
}

[[noreturn]] void missing(const std::string& key) {
    throw std::runtime_error("config: missing key '" + key + "'");
}

}  // namespace

bool ConfigValue::as_bool() const {
    if (!std::holds_alternative<bool>(v)) throw std::runtime_error("config: expected bool");
    return std::get<bool>(v);
}

std::int64_t ConfigValue::as_int() const {
    if (!std::holds_alternative<std::int64_t>(v)) throw std::runtime_error("config: expected integer");
    return std::get<std::int64_t>(v);
}

double ConfigValue::as_double() const {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<std::int64_t>(v))
        return static_cast<double>(std::get<std::int64_t>(v));
    throw std::runtime_error("config: expected number");
}

const std::string& ConfigValue::as_string() const {
    if (!std::holds_alternative<std::string>(v)) throw std::runtime_error("config: expected string");
    return std::get<std::string>(v);
}

const ConfigArray& ConfigValue::as_array() const {
    if (!is_array()) throw std::runtime_error("config: expected array");
    return std::get<ConfigArray>(v);
}

const ConfigTable& ConfigValue::as_table() const {
    if (!is_table()) throw std::runtime_error("config: expected table");
    return std::get<ConfigTable>(v);
}

ConfigTable parse_config(const std::string& text) {
    ConfigTable root;
    ConfigTable* current = &root;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "expected ']'");
            current = descend(root, line.substr(1, line.size() - 2), line_no);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(line_no, "empty key");
        ValueParser parser(line.substr(eq + 1), line_no);
        (*current)[key] = parser.parse();
    }
    return root;
}

std::string write_config(const ConfigTable& table) {
    std::ostringstream out;
    write_table(out, table, "");
    return out.str();
}

bool config_has(const ConfigTable& t, const std::string& key) { return t.count(key) > 0; }

std::int64_t config_int(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    return it->second.as_int();
}

std::int64_t config_int_or(const ConfigTable& t, const std::string& key, std::int64_t fallback) {
    const auto it = t.find(key);
    return it == t.end() ? fallback : it->second.as_int();
}

double config_double(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    return it->second.as_double();
}

double config_double_or(const ConfigTable& t, const std::string& key, double fallback) {
    const auto it = t.find(key);
    return it == t.end() ? fallback : it->second.as_double();
}

std::string config_string(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    return it->second.as_string();
}

std::string config_string_or(const ConfigTable& t, const std::string& key, std::string fallback) {
    const auto it = t.find(key);
    return it == t.end() ? std::move(fallback) : it->second.as_string();
}

std::vector<double> config_double_list(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    std::vector<double> out;
    for (const auto& v : it->second.as_array()) out.push_back(v.as_double());
    return out;
}

std::vector<std::int64_t> config_int_list(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    std::vector<std::int64_t> out;
    for (const auto& v : it->second.as_array()) out.push_back(v.as_int());
    return out;
}

const ConfigTable& config_table(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    return it->second.as_table();
}

Matrix config_matrix(const ConfigTable& t, const std::string& key) {
    const auto it = t.find(key);
    if (it == t.end()) missing(key);
    const ConfigArray& rows = it->second.as_array();
    const std::size_t nrows = rows.size();
    const std::size_t ncols = nrows == 0 ? 0 : rows.front().as_array().size();
    std::vector<double> entries;
    entries.reserve(nrows * ncols);
    for (const auto& r : rows) {
        const ConfigArray& row = r.as_array();
        if (row.size() != ncols) throw std::runtime_error("config: ragged matrix '" + key + "'");
        for (const auto& v : row) entries.push_back(v.as_double());
    }
    return Matrix(nrows, ncols, std::move(entries));
}

ConfigValue matrix_to_config(const Matrix& m) {
    ConfigArray rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ConfigArray row;
        row.reserve(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row.emplace_back(m(i, j));
        rows.emplace_back(std::move(row));
    }
    return ConfigValue(std::move(rows));
}

}  // namespace tslasso
