#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace khtangle {

/// Dense integer matrix with arbitrary-precision entries, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix operator*(const DenseMatrix& o) const;
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const mpz_class& f);
  void add_col(std::size_t dst, std::size_t src, const mpz_class& f);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> data_;
};

/// U * A * V = D with D diagonal, diagonal entries d_1 | d_2 | ... (then zeros).
struct SNFResult {
  std::vector<mpz_class> invariant_factors;  // the nonzero diagonal entries
  std::size_t rank = 0;
  DenseMatrix U, U_inv, V, V_inv, D;
};

SNFResult smith_normal_form(const DenseMatrix& A);
/// Checks U A V = D, the inverses, diagonality and the divisibility chain.
bool verify_snf(const DenseMatrix& A, const SNFResult& r);

/// Sparse integer matrix given by its nonzero entries.
struct SparseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;  // (row, col, value)
  DenseMatrix dense() const;
};

/// Nonzero invariant factors, by unit-pivot elimination followed by a dense
/// Smith normal form of what remains.
std::vector<mpz_class> invariant_factors(const SparseMatrix& A);

/// A free chain complex with (h, q) bigraded generators; d lowers h by one.
struct GradedComplex {
  std::vector<std::pair<int, int>> grading;  // per generator: (h, q)
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> differential;  // (target, source, value)
};

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1
  bool zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

using BigradedHomology = std::map<std::pair<int, int>, HomologyGroup>;  // nonzero groups only

BigradedHomology homology(const GradedComplex& C, int jobs = 1);
/// Checks d∘d = 0 and that d lowers h by one and preserves q.
std::optional<std::string> check_graded_complex(const GradedComplex& C);

/// "Z^2 + Z/2" style.
std::string format_group(const HomologyGroup& g);
/// One line per nonzero bigrading: "h q group".
std::string format_homology(const BigradedHomology& H);
/// First differing bigrading, if any.
std::optional<std::string> compare_homology(const BigradedHomology& A, const BigradedHomology& B);
/// sum over h of (-1)^h rank, per q.
std::map<int, long> euler_characteristic(const BigradedHomology& H);
std::map<int, long> euler_characteristic(const GradedComplex& C);

}  // namespace khtangle
