#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "run_config.hpp"

namespace tricycle::harness {

inline constexpr int kFormatVersion = 1;

/// Empty cells become blank in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::string>;
using Row = std::vector<Cell>;

/// %.17g; non-finite values print as nan / inf / -inf.
std::string format_number(double x);

/// Streams rows for one command. CSV starts with a versioned comment line and
/// the column header; JSON lines carry the same field names.
class TableWriter {
public:
    TableWriter(std::ostream& out, OutputFormat format, std::string command, std::vector<std::string> columns);

    void write(const Row& row);

private:
    std::ostream& out_;
    OutputFormat format_;
    std::vector<std::string> columns_;
};

}  // namespace tricycle::harness
