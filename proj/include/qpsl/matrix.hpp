#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "qpsl/rational.hpp"

namespace qpsl {

/// Dense matrix over exact rationals; just enough linear algebra for the
/// representation and independence computations (RREF, kernels, solving).
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) r(i, j) += x * o(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// In-place reduced row echelon form; returns pivot column per pivot row.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int p = -1;
      for (int i = row; i < rows_; ++i)
        if ((*this)(i, col) != 0) { p = i; break; }
      if (p < 0) continue;
      swap_rows(p, row);
      Rat inv = Rat(1) / (*this)(row, col);
      for (int j = col; j < cols_; ++j) (*this)(row, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == row) continue;
        Rat f = (*this)(i, col);
        if (f == 0) continue;
        for (int j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  int rank() const {
    Mat copy = *this;
    return int(copy.rref().size());
  }

  /// Columns spanning the null space {x : A x = 0}.
  Mat kernel() const {
    Mat r = *this;
    std::vector<int> pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = cols_ - int(pivots.size());
    Mat ker(cols_, nfree);
    int kcol = 0;
    for (int c = 0; c < cols_; ++c) {
      if (is_pivot[c]) continue;
      ker(c, kcol) = 1;
      for (size_t prow = 0; prow < pivots.size(); ++prow) ker(pivots[prow], kcol) = -r(int(prow), c);
      ++kcol;
    }
    return ker;
  }

  /// Columns spanning the column space (a basis of the image).
  Mat column_space() const {
    Mat r = *this;
    std::vector<int> pivots = r.rref();
    Mat img(rows_, int(pivots.size()));
    for (size_t j = 0; j < pivots.size(); ++j)
      for (int i = 0; i < rows_; ++i) img(i, int(j)) = (*this)(i, pivots[j]);
    return img;
  }

  /// One solution of A x = b, or nullopt if inconsistent.
  std::optional<Mat> solve(const Mat& b) const {
    assert(b.rows() == rows_ && b.cols() == 1);
    Mat aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b(i, 0);
    }
    std::vector<int> pivots = aug.rref();
    for (int c : pivots)
      if (c == cols_) return std::nullopt;
    Mat x(cols_, 1);
    for (size_t prow = 0; prow < pivots.size(); ++prow) x(pivots[prow], 0) = aug(int(prow), cols_);
    return x;
  }

  std::optional<Mat> inverse() const {
    assert(rows_ == cols_);
    Mat aug(rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    std::vector<int> pivots = aug.rref();
    if (int(pivots.size()) != rows_ || pivots.back() != rows_ - 1) return std::nullopt;
    Mat inv(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  /// Horizontal concatenation [A | B].
  static Mat hcat(const Mat& a, const Mat& b) {
    assert(a.rows() == b.rows());
    Mat r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
      for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
  }

private:
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

} // namespace qpsl
