#pragma once

#include <string>

#include "rowsketch/matrix.hpp"

namespace rowsketch {

enum class MatrixFormat { matrix_market, csv };

// MatrixMarket (array and coordinate, the latter densified) or headerless
// CSV. Parse failures report the offending line; non-finite entries are
// rejected.
DenseMatrix load_matrix(const std::string& path, MatrixFormat format);

// Writes with enough digits to round-trip every value exactly.
void save_matrix(const DenseMatrix& a, const std::string& path, MatrixFormat format);

}  // namespace rowsketch
