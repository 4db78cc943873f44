#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace tricycle::harness {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

TableWriter::TableWriter(std::ostream& out, OutputFormat format, std::string command,
                         std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
    if (format_ != OutputFormat::csv) return;
    out_ << "# tricycle " << command << " format=" << kFormatVersion << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
}

void TableWriter::write(const Row& row) {
    if (row.size() != columns_.size()) throw std::logic_error("TableWriter: row width does not match header");

    if (format_ == OutputFormat::csv) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out_ << ',';
            if (const auto* d = std::get_if<double>(&row[i])) out_ << format_number(*d);
            else if (const auto* s = std::get_if<std::string>(&row[i])) out_ << *s;
        }
        out_ << '\n';
        return;
    }

    // Hand-built so numbers keep 17 significant digits; strings go through the
    // JSON library for escaping.
    out_ << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out_ << ',';
        out_ << nlohmann::json(columns_[i]).dump() << ':';
        if (const auto* d = std::get_if<double>(&row[i])) {
            if (std::isfinite(*d)) out_ << format_number(*d);
            else out_ << "null";
        } else if (const auto* s = std::get_if<std::string>(&row[i])) {
            out_ << nlohmann::json(*s).dump();
        } else {
            out_ << "null";
        }
    }
    out_ << "}\n";
}

}  // namespace tricycle::harness
