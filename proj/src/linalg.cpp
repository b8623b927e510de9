#include "nanocob/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace nanocob {

namespace {

struct Overflow {};

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

// Bareiss elimination; every intermediate entry is a minor of the input, so
// the division by the previous pivot is exact.
template <typename T, typename Mul, typename Sub>
std::size_t bareiss_rank(std::vector<T> a, std::size_t rows, std::size_t cols, Mul mul, Sub sub) {
  T prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const T p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const T f = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i * cols + j] = sub(mul(p, a[i * cols + j]), mul(f, a[r * cols + j])) / prev;
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank_over_q(const IntMatrix& m) {
  try {
    std::vector<i128> a(m.data.begin(), m.data.end());
    return bareiss_rank<i128>(std::move(a), m.rows, m.cols, checked_mul, checked_sub);
  } catch (const Overflow&) {
    using boost::multiprecision::cpp_int;
    std::vector<cpp_int> a(m.data.begin(), m.data.end());
    return bareiss_rank<cpp_int>(
        std::move(a), m.rows, m.cols, [](const cpp_int& x, const cpp_int& y) { return cpp_int(x * y); },
        [](const cpp_int& x, const cpp_int& y) { return cpp_int(x - y); });
  }
}

namespace {

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& m, std::int64_t p) {
  if (p < 2 || p >= (std::int64_t{1} << 31)) throw std::invalid_argument("modulus out of range");
  std::vector<std::int64_t> a(m.data.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = ((m.data[i] % p) + p) % p;
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const std::int64_t inv = pow_mod(a[r * cols + c], p - 2, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::int64_t f = a[i * cols + c] * inv % p;
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[i * cols + j] = ((a[i * cols + j] - f * a[r * cols + j]) % p + p) % p;
      }
    }
    ++r;
  }
  return r;
}

// ------------------------------------------------------------ IntegerLattice

namespace {

std::size_t leading(const std::vector<std::int64_t>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  return v.size();
}

void axpy(std::vector<std::int64_t>& y, std::int64_t k, const std::vector<std::int64_t>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += k * x[i];
}

}  // namespace

void IntegerLattice::add_generator(std::vector<std::int64_t> v) {
  if (v.size() != dim_) throw std::invalid_argument("generator has wrong dimension");
  // Insert v and restore echelon form by gcd steps on shared leading columns.
  while (true) {
    const std::size_t lv = leading(v);
    if (lv == dim_) return;
    auto it = std::find_if(rows_.begin(), rows_.end(),
                           [&](const auto& row) { return leading(row) >= lv; });
    if (it == rows_.end() || leading(*it) > lv) {
      if (v[lv] < 0) {
        for (auto& x : v) x = -x;
      }
      rows_.insert(it, std::move(v));
      return;
    }
    std::vector<std::int64_t> row = std::move(*it);
    rows_.erase(it);
    // Euclid on the pair (row, v) in column lv.
    while (v[lv] != 0) {
      const std::int64_t q = row[lv] / v[lv];
      axpy(row, -q, v);
      std::swap(row, v);
    }
    // row now carries the gcd in column lv; v has a later leading column.
    if (row[lv] < 0) {
      for (auto& x : row) x = -x;
    }
    auto pos = std::find_if(rows_.begin(), rows_.end(),
                            [&](const auto& r) { return leading(r) > lv; });
    rows_.insert(pos, std::move(row));
  }
}

bool IntegerLattice::contains(std::vector<std::int64_t> v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
  for (const auto& row : rows_) {
    const std::size_t l = leading(row);
    for (std::size_t c = 0; c < l; ++c) {
      if (v[c] != 0) return false;
    }
    if (v[l] % row[l] != 0) return false;
    axpy(v, -(v[l] / row[l]), row);
  }
  return leading(v) == dim_;
}

}  // namespace nanocob
