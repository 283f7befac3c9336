#include "negcat/fplinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace negcat {

uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) { return (a + b) % p; }

uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) { return (a + p - b % p) % p; }

uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

uint32_t fp_neg(uint32_t a, uint32_t p) { return (p - a % p) % p; }

uint32_t fp_inv(uint32_t a, uint32_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("fp_inv: zero has no inverse");
  // Fermat: a^(p-2) mod p.
  uint32_t result = 1, base = a, e = p - 2;
  while (e > 0) {
    if (e & 1u) result = fp_mul(result, base, p);
    base = fp_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

FpMatrix::FpMatrix(int rows, int cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(static_cast<size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0 || p < 2) throw std::invalid_argument("FpMatrix: bad shape or prime");
}

FpMatrix FpMatrix::identity(int n, uint32_t p) {
  FpMatrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<FpVec>& rows, int cols, uint32_t p) {
  FpMatrix m(static_cast<int>(rows.size()), cols, p);
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != cols)
      throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
    for (int c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FpMatrix::set(int r, int c, uint32_t v) {
  data_[static_cast<size_t>(r) * cols_ + c] = v % p_;
}

void FpMatrix::add_at(int r, int c, uint32_t v) {
  auto& cell = data_[static_cast<size_t>(r) * cols_ + c];
  cell = fp_add(cell, v, p_);
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("FpMatrix::mul: shape/prime mismatch");
  FpMatrix out(rows_, rhs.cols_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      uint32_t a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.add_at(i, j, fp_mul(a, rhs.at(k, j), p_));
    }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
    throw std::invalid_argument("FpMatrix::add: shape/prime mismatch");
  FpMatrix out(rows_, cols_, p_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = fp_add(data_[i], rhs.data_[i], p_);
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
    throw std::invalid_argument("FpMatrix::sub: shape/prime mismatch");
  FpMatrix out(rows_, cols_, p_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = fp_sub(data_[i], rhs.data_[i], p_);
  return out;
}

bool FpMatrix::operator==(const FpMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && p_ == rhs.p_ && data_ == rhs.data_;
}

FpMatrix FpMatrix::scaled(uint32_t s) const {
  FpMatrix out(rows_, cols_, p_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = fp_mul(data_[i], s % p_, p_);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(cols_, rows_, p_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
  return out;
}

FpVec FpMatrix::apply(const FpVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("FpMatrix::apply: size mismatch");
  FpVec out(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    uint32_t acc = 0;
    for (int c = 0; c < cols_; ++c) acc = fp_add(acc, fp_mul(at(r, c), v[c], p_), p_);
    out[r] = acc;
  }
  return out;
}

FpMatrix FpMatrix::hstack(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("FpMatrix::hstack: mismatch");
  FpMatrix out(rows_, cols_ + rhs.cols_, p_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
    for (int c = 0; c < rhs.cols_; ++c) out.set(r, cols_ + c, rhs.at(r, c));
  }
  return out;
}

FpMatrix FpMatrix::vstack(const FpMatrix& rhs) const {
  if (cols_ != rhs.cols_ || p_ != rhs.p_) throw std::invalid_argument("FpMatrix::vstack: mismatch");
  FpMatrix out(rows_ + rhs.rows_, cols_, p_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
  for (int r = 0; r < rhs.rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(rows_ + r, c, rhs.at(r, c));
  return out;
}

FpMatrix FpMatrix::submatrix(int r0, int c0, int nrows, int ncols) const {
  if (r0 < 0 || c0 < 0 || r0 + nrows > rows_ || c0 + ncols > cols_)
    throw std::invalid_argument("FpMatrix::submatrix: out of range");
  FpMatrix out(nrows, ncols, p_);
  for (int r = 0; r < nrows; ++r)
    for (int c = 0; c < ncols; ++c) out.set(r, c, at(r0 + r, c0 + c));
  return out;
}

bool FpMatrix::is_zero() const {
  for (uint32_t v : data_)
    if (v != 0) return false;
  return true;
}

namespace {

// Bit-packed elimination for the two-element field. The chain-level solvers
// upstream produce systems with a few thousand variables, where the word-wide
// xor sweep matters.
FpMatrix rref2(const FpMatrix& a, std::vector<int>* pivot_cols) {
  const int rows = a.rows(), cols = a.cols();
  const int words = (cols + 63) / 64;
  std::vector<std::vector<uint64_t>> bits(rows, std::vector<uint64_t>(std::max(words, 1), 0));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (a.at(r, c)) bits[r][c >> 6] |= uint64_t{1} << (c & 63);
  if (pivot_cols) pivot_cols->clear();
  int lead = 0;
  for (int c = 0; c < cols && lead < rows; ++c) {
    int pivot = -1;
    for (int r = lead; r < rows; ++r)
      if ((bits[r][c >> 6] >> (c & 63)) & 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != lead) std::swap(bits[pivot], bits[lead]);
    for (int r = 0; r < rows; ++r) {
      if (r == lead) continue;
      if ((bits[r][c >> 6] >> (c & 63)) & 1)
        for (int w = c >> 6; w < words; ++w) bits[r][w] ^= bits[lead][w];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++lead;
  }
  FpMatrix m(rows, cols, 2);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.set(r, c, (bits[r][c >> 6] >> (c & 63)) & 1);
  return m;
}

}  // namespace

FpMatrix FpMatrix::rref(std::vector<int>* pivot_cols) const {
  if (p_ == 2) return rref2(*this, pivot_cols);
  FpMatrix m = *this;
  if (pivot_cols) pivot_cols->clear();
  int lead = 0;
  for (int c = 0; c < cols_ && lead < rows_; ++c) {
    int pivot = -1;
    for (int r = lead; r < rows_; ++r)
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != lead)
      for (int j = 0; j < cols_; ++j) {
        uint32_t t = m.at(pivot, j);
        m.set(pivot, j, m.at(lead, j));
        m.set(lead, j, t);
      }
    uint32_t inv = fp_inv(m.at(lead, c), p_);
    for (int j = 0; j < cols_; ++j) m.set(lead, j, fp_mul(m.at(lead, j), inv, p_));
    for (int r = 0; r < rows_; ++r) {
      if (r == lead) continue;
      uint32_t f = m.at(r, c);
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j) m.set(r, j, fp_sub(m.at(r, j), fp_mul(f, m.at(lead, j), p_), p_));
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++lead;
  }
  return m;
}

int FpMatrix::rank() const {
  std::vector<int> pivots;
  rref(&pivots);
  return static_cast<int>(pivots.size());
}

std::vector<FpVec> FpMatrix::kernel_basis() const {
  std::vector<int> pivots;
  FpMatrix r = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<FpVec> basis;
  for (int c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    FpVec v(cols_, 0);
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = fp_neg(r.at(static_cast<int>(i), c), p_);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FpVec> FpMatrix::solve(const FpVec& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("FpMatrix::solve: size mismatch");
  FpMatrix rhs(rows_, 1, p_);
  for (int r = 0; r < rows_; ++r) rhs.set(r, 0, b[r]);
  FpMatrix aug = hstack(rhs);
  std::vector<int> pivots;
  FpMatrix r = aug.rref(&pivots);
  for (int c : pivots)
    if (c == cols_) return std::nullopt;  // pivot in the constant column: inconsistent
  FpVec x(cols_, 0);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r.at(static_cast<int>(i), cols_);
  return x;
}

void RowSpan::reduce(FpVec& v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint32_t f = v[lead_cols_[i]];
    if (f == 0) continue;
    for (int c = 0; c < width_; ++c) v[c] = fp_sub(v[c], fp_mul(f, rows_[i][c], p_), p_);
  }
}

bool RowSpan::add(FpVec v) {
  if (static_cast<int>(v.size()) != width_) throw std::invalid_argument("RowSpan::add: size mismatch");
  reduce(v);
  int lead = -1;
  for (int c = 0; c < width_; ++c)
    if (v[c] != 0) {
      lead = c;
      break;
    }
  if (lead < 0) return false;
  uint32_t inv = fp_inv(v[lead], p_);
  for (int c = 0; c < width_; ++c) v[c] = fp_mul(v[c], inv, p_);
  // Keep rows ordered by leading column so reduce() stays a single sweep.
  size_t pos = 0;
  while (pos < lead_cols_.size() && lead_cols_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  lead_cols_.insert(lead_cols_.begin() + pos, lead);
  return true;
}

bool RowSpan::contains(FpVec v) const {
  if (static_cast<int>(v.size()) != width_) throw std::invalid_argument("RowSpan::contains: size mismatch");
  reduce(v);
  return fpvec_is_zero(v);
}

FpVec fpvec_add(const FpVec& a, const FpVec& b, uint32_t p) {
  if (a.size() != b.size()) throw std::invalid_argument("fpvec_add: size mismatch");
  FpVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = fp_add(a[i], b[i], p);
  return out;
}

FpVec fpvec_sub(const FpVec& a, const FpVec& b, uint32_t p) {
  if (a.size() != b.size()) throw std::invalid_argument("fpvec_sub: size mismatch");
  FpVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = fp_sub(a[i], b[i], p);
  return out;
}

FpVec fpvec_scaled(const FpVec& a, uint32_t s, uint32_t p) {
  FpVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = fp_mul(a[i], s, p);
  return out;
}

bool fpvec_is_zero(const FpVec& a) {
  for (uint32_t v : a)
    if (v != 0) return false;
  return true;
}

FpMatrix span_rows(const std::vector<FpVec>& gens, int width, uint32_t p) {
  if (gens.empty()) return FpMatrix(0, width, p);
  std::vector<int> pivots;
  FpMatrix r = FpMatrix::from_rows(gens, width, p).rref(&pivots);
  return r.submatrix(0, 0, static_cast<int>(pivots.size()), width);
}

FpVec coords_in_rows(const FpMatrix& basis, const FpVec& v) {
  auto x = basis.transpose().solve(v);
  if (!x) throw std::logic_error("coords_in_rows: vector outside span");
  return *x;
}

}  // namespace negcat
