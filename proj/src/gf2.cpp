#include "matspace/gf2.hpp"

#include <bit>
#include <utility>

namespace matspace::gf2 {

std::vector<std::uint64_t> pack(const Matrix& m) {
  if (!m.field().is_prime() || m.field().modulus() != 2)
    throw Error(ErrorCode::field_mismatch, "bit packing requires GF(2)");
  if (m.cols() > kMaxCols) throw Error(ErrorCode::shape_mismatch, "more than 64 columns");
  std::vector<std::uint64_t> rows(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) rows[i] |= std::uint64_t{1} << j;
  return rows;
}

Matrix unpack(const std::vector<std::uint64_t>& rows, std::size_t cols, const Field& f2) {
  Matrix m(f2, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if ((rows[i] >> j) & 1) m(i, j) = f2.one();
  return m;
}

BitRref rref(std::vector<std::uint64_t> rows, std::size_t cols) {
  BitRref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t piv = r;
    while (piv < rows.size() && !(rows[piv] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rows = std::move(rows);
  return out;
}

}  // namespace matspace::gf2
