#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rowsketch {

// Row-major dense matrix of doubles. The single carrier type for inputs,
// sketches, factors and residual blocks. Constructors that take caller data
// reject non-finite entries; internally produced matrices are finite by
// construction of the kernels.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix transposed(const DenseMatrix& a);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
// A^T B and A B^T without materializing the transpose.
DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix multiply_abt(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scaled(const DenseMatrix& a, double factor);
// First k columns.
DenseMatrix left_columns(const DenseMatrix& a, std::size_t k);

std::vector<double> multiply_vec(const DenseMatrix& a, std::span<const double> x);   // A x
std::vector<double> multiply_tvec(const DenseMatrix& a, std::span<const double> x);  // A^T x

double frobenius_norm(const DenseMatrix& a);
double row_squared_norm(const DenseMatrix& a, std::size_t t);
double max_abs(const DenseMatrix& a);
bool all_finite(const DenseMatrix& a);

double vector_norm(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

}  // namespace rowsketch
