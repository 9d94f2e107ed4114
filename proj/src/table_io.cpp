#include "fermiscatter/table_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "fermiscatter/errors.hpp"

namespace fermiscatter {

std::string format_float(double value) {
    char buf[48];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    if (res.ec != std::errc{}) throw std::runtime_error("format_float: to_chars failed");
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::invalid_argument("to_csv: row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_float(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table, const std::string& config_hash,
                    const std::string& tool_version) {
    nlohmann::ordered_json j;
    j["meta"] = {{"tool", "fermiscatter"},
                 {"version", tool_version},
                 {"config_hash", config_hash}};
    j["columns"] = table.columns;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
    for (std::size_t ci = 0; ci < table.columns.size(); ++ci) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) arr.push_back(row[ci]);
        data[table.columns[ci]] = std::move(arr);
    }
    j["data"] = std::move(data);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace fermiscatter
