#include "rowsketch/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rowsketch {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("DenseMatrix: dimensions must be positive");
}

void check_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    check_shape(rows, cols);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_shape(rows, cols);
    if (data_.size() != rows * cols)
        throw std::invalid_argument("DenseMatrix: data length does not match rows*cols");
    for (double v : data_)
        if (!std::isfinite(v))
            throw std::invalid_argument("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t m = rows.size();
    if (m == 0) throw std::invalid_argument("DenseMatrix::from_rows: no rows");
    const std::size_t d = rows.begin()->size();
    std::vector<double> data;
    data.reserve(m * d);
    for (const auto& r : rows) {
        if (r.size() != d)
            throw std::invalid_argument("DenseMatrix::from_rows: ragged rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return DenseMatrix(m, d, std::move(data));
}

DenseMatrix transposed(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimensions differ");
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const auto brow = b.row(k);
            auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("multiply_at_b: row counts differ");
    DenseMatrix out(a.cols(), b.cols());
    for (std::size_t t = 0; t < a.rows(); ++t) {
        const auto arow = a.row(t);
        const auto brow = b.row(t);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double ati = arow[i];
            if (ati == 0.0) continue;
            auto orow = out.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += ati * brow[j];
        }
    }
    return out;
}

DenseMatrix multiply_abt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("multiply_abt: column counts differ");
    DenseMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = dot(a.row(i), b.row(j));
    return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    check_same_shape(a, b, "add");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
    return out;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    check_same_shape(a, b, "subtract");
    DenseMatrix out = a;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

DenseMatrix scaled(const DenseMatrix& a, double factor) {
    DenseMatrix out = a;
    for (double& v : out.data()) v *= factor;
    return out;
}

DenseMatrix left_columns(const DenseMatrix& a, std::size_t k) {
    if (k == 0 || k > a.cols())
        throw std::invalid_argument("left_columns: k out of range");
    DenseMatrix out(a.rows(), k);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = a(i, j);
    return out;
}

std::vector<double> multiply_vec(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols())
        throw std::invalid_argument("multiply_vec: length mismatch");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
    return out;
}

std::vector<double> multiply_tvec(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.rows())
        throw std::invalid_argument("multiply_tvec: length mismatch");
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        const auto arow = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += xi * arow[j];
    }
    return out;
}

double frobenius_norm(const DenseMatrix& a) {
    double sum = 0.0;
    for (double v : a.data()) sum += v * v;
    return std::sqrt(sum);
}

double row_squared_norm(const DenseMatrix& a, std::size_t t) {
    const auto r = a.row(t);
    return dot(r, r);
}

double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const DenseMatrix& a) {
    for (double v : a.data())
        if (!std::isfinite(v)) return false;
    return true;
}

double vector_norm(std::span<const double> x) {
    return std::sqrt(dot(x, x));
}

double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

}  // namespace rowsketch
