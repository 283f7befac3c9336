#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace negcat {

/// Coefficient vector over F_p; entries are kept reduced mod p.
using FpVec = std::vector<uint32_t>;

uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p);
uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p);
uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p);
uint32_t fp_neg(uint32_t a, uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p);

/// Dense matrix over the prime field F_p. Elimination is plain Gaussian
/// except over F_2, where rows are bit-packed for the word-wide xor sweep;
/// the chain-level solvers build systems with a few thousand variables.
class FpMatrix {
 public:
  FpMatrix() : rows_(0), cols_(0), p_(2) {}
  FpMatrix(int rows, int cols, uint32_t p);
  static FpMatrix identity(int n, uint32_t p);
  static FpMatrix from_rows(const std::vector<FpVec>& rows, int cols, uint32_t p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  uint32_t prime() const { return p_; }

  uint32_t at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, uint32_t v);
  void add_at(int r, int c, uint32_t v);

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix operator+(const FpMatrix& rhs) const;
  FpMatrix operator-(const FpMatrix& rhs) const;
  bool operator==(const FpMatrix& rhs) const;

  FpMatrix scaled(uint32_t s) const;
  FpMatrix transpose() const;
  FpVec apply(const FpVec& v) const;

  /// Stack `rhs` to the right (same row count).
  FpMatrix hstack(const FpMatrix& rhs) const;
  /// Stack `rhs` below (same column count).
  FpMatrix vstack(const FpMatrix& rhs) const;
  FpMatrix submatrix(int r0, int c0, int nrows, int ncols) const;

  bool is_zero() const;
  int rank() const;

  /// Reduced row echelon form; optionally reports the pivot columns.
  FpMatrix rref(std::vector<int>* pivot_cols = nullptr) const;

  /// Basis of {v : A v = 0}.
  std::vector<FpVec> kernel_basis() const;

  /// One solution of A x = b, if any.
  std::optional<FpVec> solve(const FpVec& b) const;

 private:
  int rows_;
  int cols_;
  uint32_t p_;
  std::vector<uint32_t> data_;
};

/// Incrementally built row space in echelon form. Used wherever a span has
/// to absorb vectors one by one (homotopy images, factorization tests,
/// membership filters).
class RowSpan {
 public:
  RowSpan(int width, uint32_t p) : width_(width), p_(p) {}

  /// Reduce `v` against the span; if a nonzero remainder survives, absorb it
  /// and return true.
  bool add(FpVec v);
  bool contains(FpVec v) const;
  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }

 private:
  void reduce(FpVec& v) const;

  int width_;
  uint32_t p_;
  std::vector<FpVec> rows_;     // echelon rows, leading entry 1
  std::vector<int> lead_cols_;  // leading column per row, increasing
};

FpVec fpvec_add(const FpVec& a, const FpVec& b, uint32_t p);
FpVec fpvec_sub(const FpVec& a, const FpVec& b, uint32_t p);
FpVec fpvec_scaled(const FpVec& a, uint32_t s, uint32_t p);
bool fpvec_is_zero(const FpVec& a);

/// Row matrix of an echelon basis for the span of gens inside F_p^width.
FpMatrix span_rows(const std::vector<FpVec>& gens, int width, uint32_t p);

/// Coordinates of v in the row space of basis (rows independent; throws if
/// v lies outside).
FpVec coords_in_rows(const FpMatrix& basis, const FpVec& v);

}  // namespace negcat
