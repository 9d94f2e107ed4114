#include "fermiscatter/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fermiscatter/errors.hpp"

namespace fermiscatter {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text,
                                            const std::string& origin) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": empty section name");
            cfg.sections_[section];  // register even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key=value or [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key,
                                       const std::string& fallback) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

double KeyValueConfig::get_number(const std::string& section, const std::string& key,
                                  double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key, "");
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: [" + section + "] " + key + ": bad number '" + v + "'");
    }
}

bool KeyValueConfig::get_bool(const std::string& section, const std::string& key,
                              bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key, "");
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: [" + section + "] " + key + ": bad boolean '" + v + "'");
}

void KeyValueConfig::set(const std::string& section, const std::string& key,
                         const std::string& value) {
    sections_[section][key] = value;
}

std::string KeyValueConfig::serialize() const {
    std::string out;
    bool first = true;
    for (const auto& [section, kv] : sections_) {
        if (!first) out += "\n";
        first = false;
        out += "[" + section + "]\n";
        for (const auto& [key, value] : kv) out += key + " = " + value + "\n";
    }
    return out;
}

std::uint64_t KeyValueConfig::hash() const {
    // FNV-1a 64
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : serialize()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string KeyValueConfig::hash_hex() const {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = hash();
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

GridSpec GridSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("grid: expected min:max:count[:log], got '" + text + "'");
    GridSpec g;
    try {
        g.min = std::stod(parts[0]);
        g.max = std::stod(parts[1]);
        g.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ConfigError("grid: bad number in '" + text + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log")
            g.log = true;
        else if (parts[3] == "linear")
            g.log = false;
        else
            throw ConfigError("grid: unknown spacing '" + parts[3] + "'");
    }
    if (g.count < 1 || !(g.max > g.min))
        throw ConfigError("grid: need max > min and count >= 1 in '" + text + "'");
    if (g.log && !(g.min > 0)) throw ConfigError("grid: log spacing needs min > 0");
    return g;
}

std::string GridSpec::str() const {
    std::ostringstream ss;
    ss.precision(17);
    ss << min << ":" << max << ":" << count << (log ? ":log" : "");
    return ss.str();
}

std::vector<double> GridSpec::points() const {
    std::vector<double> pts(count);
    if (count == 1) {
        pts[0] = min;
        return pts;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        pts[i] = log ? min * std::exp(f * std::log(max / min)) : min + f * (max - min);
    }
    pts.back() = max;
    return pts;
}

}  // namespace fermiscatter
