#include "depcov/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "depcov/errors.hpp"

namespace depcov {

namespace {

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::file_not_found, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t row, std::size_t col,
                             const std::string& what) {
    fail(ErrorCode::parse_error, path + ": row " + std::to_string(row) + ", column " +
                                     std::to_string(col) + ": " + what);
}

double parse_field(const std::string& path, std::size_t row, std::size_t col,
                   const std::string& field) {
    if (field.empty()) parse_fail(path, row, col, "empty field");
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        parse_fail(path, row, col, "'" + field + "' is not a number");
    return v;
}

// Rows of exactly `header` shape; returns data rows only.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  const std::string& header) {
    const std::string text = read_whole_file(path);
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty())
        fail(ErrorCode::parse_error, path + ": empty file, expected header '" + header + "'");
    if (lines[0] != header)
        parse_fail(path, 1, 1, "expected header '" + header + "', got '" + lines[0] + "'");
    const std::size_t ncols = split_fields(header).size();

    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t row = i + 1;
        if (lines[i].empty()) parse_fail(path, row, 1, "blank line");
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != ncols)
            parse_fail(path, row, 1,
                       "expected " + std::to_string(ncols) + " fields, got " +
                           std::to_string(fields.size()));
        std::vector<double> parsed(ncols);
        for (std::size_t c = 0; c < ncols; ++c)
            parsed[c] = parse_field(path, row, c + 1, fields[c]);
        rows.push_back(std::move(parsed));
    }
    return rows;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::file_not_found, "cannot write " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        fail(ErrorCode::internal_error, "double formatting failed");
    return std::string(buf, ptr);
}

DiscreteBivariate read_distribution_csv(const std::string& path) {
    DiscreteBivariate dist;
    for (const auto& row : read_numeric_csv(path, "x,y,p"))
        dist.atoms.push_back(Atom{row[0], row[1], row[2]});
    dist.validate();
    return dist;
}

PairedSample read_sample_csv(const std::string& path) {
    PairedSample sample;
    for (const auto& row : read_numeric_csv(path, "x,y")) {
        sample.x.push_back(row[0]);
        sample.y.push_back(row[1]);
    }
    sample.validate();
    return sample;
}

void write_distribution_csv(const std::string& path, const DiscreteBivariate& dist) {
    std::ofstream out = open_for_write(path);
    out << "x,y,p\n";
    for (const Atom& a : dist.atoms)
        out << format_double(a.x) << ',' << format_double(a.y) << ','
            << format_double(a.p) << '\n';
}

void write_sample_csv(const std::string& path, const PairedSample& sample) {
    std::ofstream out = open_for_write(path);
    out << "x,y\n";
    for (std::size_t i = 0; i < sample.size(); ++i)
        out << format_double(sample.x[i]) << ',' << format_double(sample.y[i]) << '\n';
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_for_write(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
}

}  // namespace depcov
