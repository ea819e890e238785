#include "pv/ffrank.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>

namespace pv {

DenseMatrixFp::DenseMatrixFp(std::uint32_t p, std::size_t rows,
                             std::size_t cols, std::size_t budget)
    : p_(p), rows_(rows), cols_(cols) {
  if (p < 2 || p >= (1u << 31)) throw Error("prime out of range");
  if (!is_probable_prime(p)) throw Error("modulus is not prime");
  const std::size_t bytes = rows * cols * sizeof(std::uint64_t);
  if (rows != 0 && bytes / rows / sizeof(std::uint64_t) != cols)
    throw Error("matrix dimensions overflow");
  if (bytes > budget)
    throw Error("matrix of " + std::to_string(bytes) +
                " bytes exceeds the memory budget of " +
                std::to_string(budget));
  a_.assign(rows * cols, 0);
}

std::uint32_t inverse_mod_p(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw Error("element not invertible");
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 acc = 1, base = b % m;
  while (e) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic Miller-Rabin bases for 64-bit inputs.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::size_t rank_mod_p(DenseMatrixFp& m, unsigned threads) {
  const std::uint32_t p = m.prime();
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::uint64_t addend = std::uint64_t(p - 1) * (p - 1);
  // Number of delayed-reduction accumulations an entry can absorb.
  const std::uint64_t capacity = (~std::uint64_t(0) - (p - 1)) / addend;

  std::vector<std::uint32_t> piv(cols);
  std::size_t rank = 0, pr = 0;
  std::uint64_t since_reduce = 0;

  for (std::size_t col = 0; col < cols && pr < rows; ++col) {
    // Partial pivoting: first row with a nonzero residue in this column.
    std::size_t sel = rows;
    for (std::size_t i = pr; i < rows; ++i)
      if (m.row(i)[col] % p != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != pr)
      std::swap_ranges(m.row(sel) + col, m.row(sel) + cols, m.row(pr) + col);

    std::uint64_t* prow = m.row(pr);
    for (std::size_t j = col; j < cols; ++j) prow[j] %= p;
    const std::uint64_t inv = inverse_mod_p(
        static_cast<std::uint32_t>(prow[col]), p);
    for (std::size_t j = col; j < cols; ++j)
      piv[j] = static_cast<std::uint32_t>(prow[j] * inv % p);
    for (std::size_t j = col; j < cols; ++j) prow[j] = piv[j];

    const std::uint32_t* pv = piv.data();
    auto eliminate = [&](std::size_t i) {
      std::uint64_t* r = m.row(pr + 1 + i);
      const std::uint32_t c = static_cast<std::uint32_t>(r[col] % p);
      r[col] = 0;
      if (c == 0) return;
      const std::uint64_t cc = p - c;
      for (std::size_t j = col + 1; j < cols; ++j)
        r[j] += cc * std::uint64_t(pv[j]);
    };
    parallel_for(rows - pr - 1, threads, eliminate);

    ++pr;
    ++rank;
    if (++since_reduce >= capacity) {
      for (std::size_t i = pr; i < rows; ++i) {
        std::uint64_t* r = m.row(i);
        for (std::size_t j = col; j < cols; ++j) r[j] %= p;
      }
      since_reduce = 0;
    }
  }
  return rank;
}

std::size_t rank_mod_p(DenseMatrixFp&& m, unsigned threads) {
  return rank_mod_p(m, threads);
}

std::size_t kernel_dim(DenseMatrixFp&& m, unsigned threads) {
  const std::size_t c = m.cols();
  return c - rank_mod_p(m, threads);
}

void DenseMatrixFp::dump(std::ostream& out) const {
  auto put_u32 = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
  };
  out.write("FPMX", 4);
  put_u32(p_);
  put_u32(static_cast<std::uint32_t>(rows_));
  put_u32(static_cast<std::uint32_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) put_u32(get(i, j));
}

DenseMatrixFp DenseMatrixFp::load(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "FPMX", 4) != 0)
    throw Error("bad FPMX header");
  auto get_u32 = [&]() -> std::uint32_t {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw Error("truncated FPMX stream");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
           std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
  };
  const std::uint32_t p = get_u32(), rows = get_u32(), cols = get_u32();
  DenseMatrixFp m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, get_u32());
  return m;
}

}  // namespace pv
