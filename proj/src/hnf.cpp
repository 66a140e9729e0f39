#include "angles/hnf.hpp"

#include <utility>

#include "angles/error.hpp"

namespace angles {

namespace {

void axpy(std::vector<i64>& row, i64 q, const std::vector<i64>& other) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    i64 prod;
    if (__builtin_mul_overflow(q, other[k], &prod) || __builtin_sub_overflow(row[k], prod, &row[k])) {
      throw ArithmeticOverflow("HNF entry overflow");
    }
  }
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < cols && pivot < rows.size(); ++col) {
    for (std::size_t i = pivot + 1; i < rows.size(); ++i) {
      while (rows[i][col] != 0) {
        axpy(rows[pivot], rows[pivot][col] / rows[i][col], rows[i]);
        std::swap(rows[pivot], rows[i]);
      }
    }
    if (rows[pivot][col] == 0) continue;
    if (rows[pivot][col] < 0) {
      for (auto& v : rows[pivot]) v = -v;
    }
    for (std::size_t k = 0; k < pivot; ++k) {
      axpy(rows[k], floor_div(rows[k][col], rows[pivot][col]), rows[pivot]);
    }
    ++pivot;
  }
  rows.resize(pivot);
  return rows;
}

}  // namespace angles
