#include "mvgcca/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mvgcca {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    // ignore a single trailing blank line
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_cell(const std::string& path, std::size_t row, std::size_t col,
                  const char* begin, const char* end) {
    double value = 0.0;
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw IoError(path + ": row " + std::to_string(row + 1) + ", column " +
                      std::to_string(col + 1) + ": cannot parse '" +
                      std::string(begin, end) + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw IoError(path + ": row " + std::to_string(row + 1) + ", column " +
                      std::to_string(col + 1) + ": non-finite value");
    }
    return value;
}

std::vector<double> parse_row(const std::string& path, std::size_t row,
                              const std::string& line) {
    std::vector<double> cells;
    const char* p = line.data();
    const char* line_end = line.data() + line.size();
    std::size_t col = 0;
    while (true) {
        const char* cell_end = p;
        while (cell_end != line_end && *cell_end != ',') ++cell_end;
        cells.push_back(parse_cell(path, row, col, p, cell_end));
        ++col;
        if (cell_end == line_end) break;
        p = cell_end + 1;
    }
    return cells;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

Matrix load_csv_matrix(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw IoError(path + ": file is empty");
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].empty()) {
            throw IoError(path + ": row " + std::to_string(r + 1) + " is empty");
        }
        rows.push_back(parse_row(path, r, lines[r]));
        if (rows.back().size() != rows.front().size()) {
            throw IoError(path + ": row " + std::to_string(r + 1) + " has " +
                          std::to_string(rows.back().size()) + " cells, expected " +
                          std::to_string(rows.front().size()));
        }
    }
    Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            out(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    return out;
}

void save_csv_matrix(const Matrix& values, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            if (c > 0) out << ',';
            out << format_double(values(r, c));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

MultiviewDataset load_dataset(const std::vector<std::string>& paths) {
    if (paths.empty()) throw IoError("no view files given");
    std::vector<Matrix> views;
    views.reserve(paths.size());
    Index n = -1;
    for (const std::string& path : paths) {
        Matrix samples_by_rows = load_csv_matrix(path);
        if (n < 0) {
            n = samples_by_rows.rows();
        } else if (samples_by_rows.rows() != n) {
            throw IoError(path + ": has " + std::to_string(samples_by_rows.rows()) +
                          " samples, the first view has " + std::to_string(n));
        }
        views.push_back(samples_by_rows.transpose());
    }
    return MultiviewDataset::from_views(std::move(views));
}

void save_dataset(const MultiviewDataset& data, const std::vector<std::string>& paths) {
    if (paths.size() != data.views.size()) {
        throw IoError("got " + std::to_string(paths.size()) + " paths for " +
                      std::to_string(data.views.size()) + " views");
    }
    for (std::size_t m = 0; m < paths.size(); ++m) {
        save_csv_matrix(data.views[m].transpose(), paths[m]);
    }
}

std::vector<int> load_labels(const std::string& path, Index expected_n) {
    const auto lines = read_lines(path);
    std::vector<int> labels(static_cast<std::size_t>(expected_n));
    std::vector<bool> seen(static_cast<std::size_t>(expected_n), false);
    for (std::size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].empty()) continue;
        const char* p = lines[r].data();
        const char* end = lines[r].data() + lines[r].size();
        long long id = 0;
        int label = 0;
        auto r1 = std::from_chars(p, end, id);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',') {
            throw IoError(path + ": row " + std::to_string(r + 1) +
                          ": expected 'id,label'");
        }
        auto r2 = std::from_chars(r1.ptr + 1, end, label);
        if (r2.ec != std::errc{} || r2.ptr != end) {
            throw IoError(path + ": row " + std::to_string(r + 1) +
                          ": expected an integer label");
        }
        if (id < 0 || id >= expected_n) {
            throw IoError(path + ": row " + std::to_string(r + 1) + ": sample id " +
                          std::to_string(id) + " out of range for N=" +
                          std::to_string(expected_n));
        }
        if (seen[static_cast<std::size_t>(id)]) {
            throw IoError(path + ": duplicate sample id " + std::to_string(id));
        }
        seen[static_cast<std::size_t>(id)] = true;
        labels[static_cast<std::size_t>(id)] = label;
    }
    for (Index i = 0; i < expected_n; ++i) {
        if (!seen[static_cast<std::size_t>(i)]) {
            throw IoError(path + ": missing label for sample " + std::to_string(i));
        }
    }
    return labels;
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << i << ',' << labels[i] << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::uint64_t matrix_hash(const Matrix& values) {
    constexpr std::uint64_t kOffset = 1469598103934665603ULL;
    constexpr std::uint64_t kPrime = 1099511628211ULL;
    std::uint64_t hash = kOffset;
    auto mix = [&hash](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            hash ^= bytes[i];
            hash *= kPrime;
        }
    };
    const std::int64_t rows = values.rows();
    const std::int64_t cols = values.cols();
    mix(&rows, sizeof(rows));
    mix(&cols, sizeof(cols));
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            const double v = values(r, c);
            mix(&v, sizeof(v));
        }
    }
    return hash;
}

std::string hash_string(std::uint64_t hash) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace mvgcca
