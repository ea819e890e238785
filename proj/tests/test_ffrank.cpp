#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "pv/ffrank.hpp"

using namespace pv;

namespace {

// Textbook row reduction on a small copy; the reference implementation the
// production kernel must agree with.
std::size_t naive_rank(std::vector<std::vector<std::uint64_t>> a,
                       std::uint32_t p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    const std::uint64_t inv = inverse_mod_p(
        static_cast<std::uint32_t>(a[rank][c] % p), p);
    for (auto& x : a[rank]) x = x % p * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] % p == 0) continue;
      const std::uint64_t f = p - a[r][c] % p;
      for (std::size_t j = 0; j < cols; ++j)
        a[r][j] = (a[r][j] + f * (a[rank][j] % p)) % p;
    }
    ++rank;
  }
  return rank;
}

DenseMatrixFp random_matrix(std::uint32_t p, std::size_t rows,
                            std::size_t cols, std::mt19937_64& rng) {
  DenseMatrixFp m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng());
  return m;
}

}  // namespace

TEST_CASE("rank matches naive elimination on all shapes up to 64") {
  std::mt19937_64 rng(2024);
  for (const std::uint32_t p : {3u, 5u, 997u, 65537u, 2147483629u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 64, cols = 1 + rng() % 64;
      DenseMatrixFp m = random_matrix(p, rows, cols, rng);
      std::vector<std::vector<std::uint64_t>> copy(
          rows, std::vector<std::uint64_t>(cols));
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) copy[i][j] = m.get(i, j);
      const std::size_t expected = naive_rank(std::move(copy), p);
      CHECK(rank_mod_p(m) == expected);
    }
  }
}

TEST_CASE("rank of structured matrices") {
  const std::uint32_t p = 997;
  // Rank-1 outer product u v^T.
  DenseMatrixFp m(p, 20, 30);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 30; ++j) m.set(i, j, (i + 1) * (j + 7));
  CHECK(rank_mod_p(m) == 1);

  // Identity plus a nilpotent shift stays full rank.
  DenseMatrixFp id(p, 25, 25);
  for (std::size_t i = 0; i < 25; ++i) {
    id.set(i, i, 1);
    if (i + 1 < 25) id.set(i, i + 1, 996);
  }
  CHECK(rank_mod_p(id) == 25);

  // Rank drops exactly where a row becomes a multiple of another mod p.
  DenseMatrixFp dep(p, 2, 3);
  dep.set(0, 0, 1), dep.set(0, 1, 2), dep.set(0, 2, 3);
  dep.set(1, 0, p - 1), dep.set(1, 1, p - 2), dep.set(1, 2, p - 3);
  CHECK(rank_mod_p(dep) == 1);
}

TEST_CASE("multithreaded elimination agrees with serial") {
  std::mt19937_64 rng(7);
  DenseMatrixFp a = random_matrix(997, 150, 180, rng);
  DenseMatrixFp b(997, 150, 180);
  for (std::size_t i = 0; i < 150; ++i)
    for (std::size_t j = 0; j < 180; ++j) b.set(i, j, a.get(i, j));
  CHECK(rank_mod_p(a, 1) == rank_mod_p(b, 4));
}

TEST_CASE("kernel dimension is cols minus rank") {
  std::mt19937_64 rng(99);
  DenseMatrixFp a = random_matrix(65537, 40, 55, rng);
  DenseMatrixFp b(65537, 40, 55);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 55; ++j) b.set(i, j, a.get(i, j));
  const std::size_t r = rank_mod_p(a);
  CHECK(kernel_dim(std::move(b)) == 55 - r);
}

TEST_CASE("delayed reduction survives adversarial accumulation") {
  // Large prime maximizes (p-1)^2 addends and forces mid-elimination
  // re-reductions; cross-check against the naive path.
  const std::uint32_t p = 2147483629u;
  std::mt19937_64 rng(1234);
  DenseMatrixFp m(p, 48, 48);
  std::vector<std::vector<std::uint64_t>> copy(48,
                                               std::vector<std::uint64_t>(48));
  for (std::size_t i = 0; i < 48; ++i)
    for (std::size_t j = 0; j < 48; ++j) {
      const std::uint64_t v = p - 1 - rng() % 3;
      m.set(i, j, v);
      copy[i][j] = m.get(i, j);
    }
  CHECK(rank_mod_p(m) == naive_rank(std::move(copy), p));
}

TEST_CASE("FPMX dump/load roundtrip") {
  std::mt19937_64 rng(5);
  DenseMatrixFp m = random_matrix(997, 9, 13, rng);
  std::stringstream ss;
  m.dump(ss);
  const DenseMatrixFp back = DenseMatrixFp::load(ss);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  REQUIRE(back.prime() == m.prime());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      CHECK(back.get(i, j) == m.get(i, j));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS(DenseMatrixFp(4, 2, 2));            // composite
  CHECK_THROWS(DenseMatrixFp(2147483659u, 2, 2));  // exceeds 31 bits
  CHECK_THROWS(DenseMatrixFp(997, 1000, 1000, 1024));  // budget
}

TEST_CASE("modular inverse") {
  for (const std::uint32_t p : {3u, 997u, 65537u}) {
    for (std::uint32_t a = 1; a < std::min(p, 200u); ++a)
      CHECK(std::uint64_t(a) * inverse_mod_p(a, p) % p == 1);
  }
}

TEST_CASE("primality") {
  CHECK(is_probable_prime(2));
  CHECK(is_probable_prime(997));
  CHECK(is_probable_prime(65537));
  CHECK(is_probable_prime(2147483629u));
  CHECK(is_probable_prime(0xFFFFFFFFFFFFFFC5ull));  // largest 64-bit prime
  CHECK_FALSE(is_probable_prime(1));
  CHECK_FALSE(is_probable_prime(65536));
  CHECK_FALSE(is_probable_prime(3215031751ull));  // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_probable_prime(341550071728321ull));
}
