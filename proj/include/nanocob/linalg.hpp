#pragma once

#include <cstdint>
#include <vector>

namespace nanocob {

// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Exact rank over Q by fraction-free elimination. Runs in 128-bit arithmetic
// and falls back to arbitrary precision if an intermediate overflows.
std::size_t rank_over_q(const IntMatrix& m);
// Rank over GF(p); entries are reduced mod p first. Requires p < 2^31.
std::size_t rank_mod_p(const IntMatrix& m, std::int64_t p);

// Subgroup of Z^d given by generators, kept in row echelon form.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t dimension) : dim_(dimension) {}
  void add_generator(std::vector<std::int64_t> v);
  bool contains(std::vector<std::int64_t> v) const;
  std::size_t dimension() const { return dim_; }
  const std::vector<std::vector<std::int64_t>>& basis() const { return rows_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<std::int64_t>> rows_;  // leading columns strictly increasing
};

}  // namespace nanocob
