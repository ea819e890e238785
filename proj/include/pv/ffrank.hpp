#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pv/common.hpp"

namespace pv {

// Dense matrix over F_p, p an odd prime fitting in 31 bits. Entries are
// stored row-major as reduced residues in 64-bit staging slots so that
// elimination can delay modular reduction.
class DenseMatrixFp {
 public:
  DenseMatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols,
                std::size_t memory_budget_bytes = kDefaultBudget);

  static constexpr std::size_t kDefaultBudget = std::size_t(8) << 30;

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t get(std::size_t i, std::size_t j) const {
    return static_cast<std::uint32_t>(a_[i * cols_ + j] % p_);
  }
  void set(std::size_t i, std::size_t j, std::uint64_t v) {
    a_[i * cols_ + j] = v % p_;
  }

  std::uint64_t* row(std::size_t i) { return a_.data() + i * cols_; }
  const std::uint64_t* row(std::size_t i) const { return a_.data() + i * cols_; }

  void dump(std::ostream& out) const;       // "FPMX" debug format
  static DenseMatrixFp load(std::istream& in);

 private:
  std::uint32_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint64_t> a_;
};

// Exact rank by Gaussian elimination with delayed reduction. Destroys its
// argument. `threads` parallelizes the row updates below each pivot; the
// result is identical to the serial path.
std::size_t rank_mod_p(DenseMatrixFp& m, unsigned threads = 1);
std::size_t rank_mod_p(DenseMatrixFp&& m, unsigned threads = 1);

std::size_t kernel_dim(DenseMatrixFp&& m, unsigned threads = 1);

std::uint32_t inverse_mod_p(std::uint32_t a, std::uint32_t p);

bool is_probable_prime(std::uint64_t n);

}  // namespace pv
