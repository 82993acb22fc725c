#pragma once

// Bit-packed GF(2) rows: column j of a row lives in bit j of one 64-bit word.

#include <cstdint>
#include <vector>

#include "matspace/matrix.hpp"

namespace matspace::gf2 {

inline constexpr std::size_t kMaxCols = 64;

struct BitRref {
  std::vector<std::uint64_t> rows;  // rank nonzero rows followed by zero rows
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Throws ShapeMismatch when cols > 64 and FieldMismatch unless over GF(2).
std::vector<std::uint64_t> pack(const Matrix& m);
Matrix unpack(const std::vector<std::uint64_t>& rows, std::size_t cols, const Field& f2);

/// Reduced row-echelon form of packed rows with the given column count.
BitRref rref(std::vector<std::uint64_t> rows, std::size_t cols);

}  // namespace matspace::gf2
