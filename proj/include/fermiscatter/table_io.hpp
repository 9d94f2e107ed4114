#pragma once

#include <string>
#include <vector>

namespace fermiscatter {

// Locale-independent float formatting: 9 significant digits, '.' radix.
std::string format_float(double value);

// Column-oriented numeric table for the CLI outputs.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // each row matches columns
};

// Header row + 9-significant-digit values, '\n' line endings.
std::string to_csv(const Table& table);

// CSV columns mirrored as arrays plus a metadata block.
std::string to_json(const Table& table, const std::string& config_hash,
                    const std::string& tool_version);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fermiscatter
