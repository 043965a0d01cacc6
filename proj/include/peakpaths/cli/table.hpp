#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "peakpaths/errors.hpp"

namespace peakpaths::cli {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw IoError("format_number: conversion failed");
    return std::string(buf, end);
}

inline double parse_number(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw UsageError("not a number: '" + s + "'");
    }
    return v;
}

/// Column-named numeric rows plus free-form metadata.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    Json meta = Json::object();

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) throw UsageError("Table: row width mismatch");
        rows.push_back(std::move(row));
    }

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return i;
        }
        throw UsageError("Table: no column " + name);
    }
};

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw UsageError("unknown format '" + s + "' (expected csv or json)");
}

// `# key: value` comment lines, header row, one line per row.
inline void write_csv(std::ostream& os, const Table& table) {
    for (const auto& [key, value] : table.meta.items()) {
        os << "# " << key << ": " << value.dump() << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_number(row[i]);
        }
        os << '\n';
    }
}

inline Json to_json(const Table& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = std::isfinite(row[i]) ? Json(row[i]) : Json(nullptr);
        }
        rows.push_back(std::move(obj));
    }
    return Json{{"meta", table.meta}, {"rows", std::move(rows)}};
}

inline void write_json(std::ostream& os, const Table& table) {
    os << to_json(table).dump(2) << '\n';
}

inline void write_table(std::ostream& os, const Table& table, Format format) {
    if (format == Format::csv) {
        write_csv(os, table);
    } else {
        write_json(os, table);
    }
}

/// Parse text produced by write_csv back into a Table (metadata included).
inline Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            if (colon == std::string::npos) continue;
            t.meta[line.substr(2, colon - 2)] = Json::parse(line.substr(colon + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header) {
            t.columns = cells;
            header = true;
        } else {
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(parse_number(c));
            t.add_row(std::move(row));
        }
    }
    return t;
}

} // namespace peakpaths::cli
