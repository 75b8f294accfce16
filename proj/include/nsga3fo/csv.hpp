#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "nsga3fo/core.hpp"

namespace nsga3fo::csv {

// Shortest decimal text that round-trips to the same double.
inline std::string format(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse(std::string const& field) {
    if (field == "nan" || field.empty()) {
        return std::nan("");
    }
    double v = 0.0;
    auto const* first = field.data();
    auto const* last = field.data() + field.size();
    if (*first == '+') {
        ++first;
    }
    auto const res = std::from_chars(first, last, v);
    if (res.ec != std::errc {} || res.ptr != last) {
        throw std::invalid_argument("csv: not a number: '" + field + "'");
    }
    return v;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    [[nodiscard]] std::size_t column(std::string const& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        throw std::invalid_argument("csv: no column '" + name + "'");
    }

    [[nodiscard]] bool hasColumn(std::string const& name) const {
        for (auto const& h : header) {
            if (h == name) {
                return true;
            }
        }
        return false;
    }
};

inline std::vector<std::string> splitLine(std::string const& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
            field.pop_back();
        }
        while (!field.empty() && field.front() == ' ') {
            field.erase(field.begin());
        }
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

inline void write(std::ostream& out, Table const& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << table.header[i];
    }
    out << '\n';
    for (auto const& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format(row[i]);
        }
        out << '\n';
    }
}

inline void writeFile(std::string const& path, Table const& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write(out, table);
}

inline Table read(std::istream& in, std::string const& origin = "csv") {
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(origin + ": empty file");
    }
    table.header = splitLine(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        auto const fields = splitLine(line);
        if (fields.size() != table.header.size()) {
            throw std::invalid_argument(origin + ": row has " + std::to_string(fields.size()) + " fields, header has "
                                        + std::to_string(table.header.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto const& f : fields) {
            row.push_back(parse(f));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline Table readFile(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read(in, path);
}

// Objective columns f1..fm when present, otherwise every column.
inline PointSet objectiveColumns(Table const& table) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 1; table.hasColumn("f" + std::to_string(k)); ++k) {
        cols.push_back(table.column("f" + std::to_string(k)));
    }
    if (cols.empty()) {
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            cols.push_back(i);
        }
    }
    PointSet out;
    for (auto const& row : table.rows) {
        Point p;
        for (auto c : cols) {
            p.push_back(row[c]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace nsga3fo::csv
