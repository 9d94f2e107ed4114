#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fermiscatter {

// Plain key=value configuration with [section] headers and '#' comments.
// Values are kept as strings; typed getters parse on demand. serialize()
// emits a canonical form (sections and keys sorted) so parse/serialize is
// idempotent and hashable.
class KeyValueConfig {
  public:
    static KeyValueConfig parse_string(const std::string& text,
                                       const std::string& origin = "<string>");
    static KeyValueConfig parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_number(const std::string& section, const std::string& key,
                      double fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    void set(const std::string& section, const std::string& key,
             const std::string& value);

    std::string serialize() const;
    std::uint64_t hash() const;      // FNV-1a over the canonical form
    std::string hash_hex() const;

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Sweep grid "min:max:count[:log]".
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;

    static GridSpec parse(const std::string& text);
    std::string str() const;
    std::vector<double> points() const;  // strictly increasing
};

}  // namespace fermiscatter
