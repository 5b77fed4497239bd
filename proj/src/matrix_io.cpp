#include "rowsketch/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rowsketch {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& why) {
    throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + why);
}

std::string lowercased(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_value(const std::string& token, const std::string& path, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) parse_fail(path, line, "trailing characters in '" + token + "'");
        if (!std::isfinite(v)) parse_fail(path, line, "non-finite entry '" + token + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(path, line, "expected a number, got '" + token + "'");
    } catch (const std::out_of_range&) {
        parse_fail(path, line, "value out of range: '" + token + "'");
    }
}

DenseMatrix load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_matrix: cannot open " + path);

    std::string header;
    std::size_t lineno = 1;
    if (!std::getline(in, header)) parse_fail(path, lineno, "empty file");
    std::istringstream hs(lowercased(header));
    std::string banner, object, layout, field, symmetry;
    hs >> banner >> object >> layout >> field >> symmetry;
    if (banner != "%%matrixmarket" || object != "matrix")
        parse_fail(path, 1, "not a MatrixMarket header");
    if (layout != "array" && layout != "coordinate")
        parse_fail(path, 1, "unsupported layout '" + layout + "'");
    if (field != "real" && field != "integer")
        parse_fail(path, 1, "unsupported field '" + field + "'");
    if (symmetry != "general")
        parse_fail(path, 1, "unsupported symmetry '" + symmetry + "'");

    // Skip comments, read the size line.
    std::string line;
    std::size_t rows = 0, cols = 0, nnz = 0;
    bool have_size = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (layout == "array") {
            if (!(ls >> rows >> cols)) parse_fail(path, lineno, "bad size line");
        } else {
            if (!(ls >> rows >> cols >> nnz)) parse_fail(path, lineno, "bad size line");
        }
        have_size = true;
        break;
    }
    if (!have_size) parse_fail(path, lineno, "missing size line");
    if (rows == 0 || cols == 0) parse_fail(path, lineno, "dimensions must be positive");

    DenseMatrix out(rows, cols);
    if (layout == "array") {
        // Array format lists entries in column-major order.
        std::size_t count = 0;
        std::string token;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '%') continue;
            std::istringstream ls(line);
            while (ls >> token) {
                if (count >= rows * cols) parse_fail(path, lineno, "more entries than rows*cols");
                const double v = parse_value(token, path, lineno);
                out(count % rows, count / rows) = v;
                ++count;
            }
        }
        if (count != rows * cols) parse_fail(path, lineno, "fewer entries than rows*cols");
    } else {
        std::size_t seen = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '%') continue;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::istringstream ls(line);
            std::size_t i = 0, j = 0;
            std::string token;
            if (!(ls >> i >> j >> token)) parse_fail(path, lineno, "bad coordinate entry");
            if (i < 1 || i > rows || j < 1 || j > cols)
                parse_fail(path, lineno, "coordinate out of range");
            out(i - 1, j - 1) = parse_value(token, path, lineno);
            ++seen;
        }
        if (seen != nnz) parse_fail(path, lineno, "entry count differs from header nnz");
    }
    return out;
}

DenseMatrix load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_matrix: cannot open " + path);

    std::vector<double> data;
    std::size_t rows = 0, cols = 0, lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::size_t row_cols = 0;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            // Trim surrounding whitespace.
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            if (b == std::string::npos) parse_fail(path, lineno, "empty cell");
            data.push_back(parse_value(cell.substr(b, e - b + 1), path, lineno));
            ++row_cols;
        }
        if (rows == 0) {
            cols = row_cols;
        } else if (row_cols != cols) {
            parse_fail(path, lineno, "ragged row");
        }
        ++rows;
    }
    if (rows == 0) throw std::invalid_argument(path + ": no data rows");
    return DenseMatrix(rows, cols, std::move(data));
}

}  // namespace

DenseMatrix load_matrix(const std::string& path, MatrixFormat format) {
    return format == MatrixFormat::matrix_market ? load_matrix_market(path) : load_csv(path);
}

void save_matrix(const DenseMatrix& a, const std::string& path, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_matrix: cannot open " + path);
    out.precision(std::numeric_limits<double>::max_digits10);
    if (format == MatrixFormat::matrix_market) {
        out << "%%MatrixMarket matrix array real general\n";
        out << a.rows() << " " << a.cols() << "\n";
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t i = 0; i < a.rows(); ++i) out << a(i, j) << "\n";
    } else {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (j) out << ",";
                out << a(i, j);
            }
            out << "\n";
        }
    }
    if (!out) throw std::runtime_error("save_matrix: write failed for " + path);
}

}  // namespace rowsketch
