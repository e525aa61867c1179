#pragma once

#include "erpg2/scalar.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <optional>
#include <vector>

namespace erpg2 {

template <class S>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, scalar_traits<S>::zero()) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  S trace() const {
    S t = scalar_traits<S>::zero();
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Matrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Matrix r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_traits<S>::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const S& c, const Matrix& m) {
    Matrix r(m.rows_, m.cols_);
    for (size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = c * m.a_[k];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  bool is_zero() const {
    for (const auto& v : a_)
      if (!scalar_traits<S>::is_zero(v)) return false;
    return true;
  }
  Matrix block(int i0, int j0, int r, int c) const {
    Matrix b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }
  std::vector<S> row(int i) const {
    std::vector<S> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, std::fabs(scalar_traits<S>::to_double(v)));
    return m;
  }

private:
  int rows_, cols_;
  std::vector<S> a_;
};

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& e) {
  Matrix<double> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

template <class S>
Matrix<S> matrix_cast_from_exact(const Matrix<Exact>& m) {
  Matrix<S> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = scalar_traits<S>::from_exact(m(i, j));
  return r;
}

// In-place row reduction to RREF. Returns pivot columns. For double the
// zero threshold is relative to the largest entry.
template <class S>
std::vector<int> rref(Matrix<S>& m, double tol = 1e-12) {
  std::vector<int> pivots;
  int r = 0;
  double scale = 1.0;
  if constexpr (!scalar_traits<S>::exact) scale = std::max(m.max_abs(), 1.0);
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    if constexpr (scalar_traits<S>::exact) {
      for (int i = r; i < m.rows(); ++i)
        if (!m(i, c).is_zero()) { piv = i; break; }
    } else {
      double best = tol * scale;
      for (int i = r; i < m.rows(); ++i)
        if (std::fabs(m(i, c)) > best) { best = std::fabs(m(i, c)); piv = i; }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    S inv = scalar_traits<S>::one() / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || scalar_traits<S>::is_zero(m(i, c))) continue;
      S f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
int rank_exact_elim(Matrix<S> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the right null space, one vector per row.
template <class S>
Matrix<S> nullspace(const Matrix<S>& m, double rank_tol = 1e-8) {
  if constexpr (scalar_traits<S>::exact) {
    Matrix<S> w = m;
    std::vector<int> piv = rref(w);
    std::vector<bool> is_piv(m.cols(), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free;
    for (int c = 0; c < m.cols(); ++c)
      if (!is_piv[c]) free.push_back(c);
    Matrix<S> basis(static_cast<int>(free.size()), m.cols());
    for (size_t k = 0; k < free.size(); ++k) {
      basis(static_cast<int>(k), free[k]) = scalar_traits<S>::one();
      for (size_t r = 0; r < piv.size(); ++r)
        basis(static_cast<int>(k), piv[r]) = -w(static_cast<int>(r), free[k]);
    }
    return basis;
  } else {
    if (m.rows() == 0) return Matrix<S>::identity(m.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * std::max(smax, 1.0)) ++rank;
    int nullity = m.cols() - rank;
    Matrix<S> basis(nullity, m.cols());
    for (int k = 0; k < nullity; ++k)
      for (int j = 0; j < m.cols(); ++j) basis(k, j) = svd.matrixV()(j, rank + k);
    return basis;
  }
}

template <class S>
int rank_of(const Matrix<S>& m, double rank_tol = 1e-8) {
  if constexpr (scalar_traits<S>::exact) {
    return rank_exact_elim(m);
  } else {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * std::max(smax, 1.0)) ++rank;
    return rank;
  }
}

template <class S>
S det(const Matrix<S>& m) {
  assert(m.rows() == m.cols());
  Matrix<S> w = m;
  S d = scalar_traits<S>::one();
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    if constexpr (scalar_traits<S>::exact) {
      for (int i = c; i < n; ++i)
        if (!w(i, c).is_zero()) { piv = i; break; }
    } else {
      double best = 0;
      for (int i = c; i < n; ++i)
        if (std::fabs(w(i, c)) > best) { best = std::fabs(w(i, c)); piv = i; }
      if (best == 0) piv = -1;
    }
    if (piv < 0) return scalar_traits<S>::zero();
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(w(piv, j), w(c, j));
      d = -d;
    }
    d *= w(c, c);
    S inv = scalar_traits<S>::one() / w(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (scalar_traits<S>::is_zero(w(i, c))) continue;
      S f = inv * w(i, c);
      for (int j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return d;
}

struct SingularMatrix : std::runtime_error {
  SingularMatrix() : std::runtime_error("singular matrix") {}
};

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  assert(m.rows() == m.cols());
  int n = m.rows();
  Matrix<S> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<S>::identity(n));
  std::vector<int> piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || piv.back() != n - 1) throw SingularMatrix();
  return aug.block(0, n, n, n);
}

// Solve A x = b; nullopt when inconsistent (residual above tol for double).
template <class S>
std::optional<std::vector<S>> solve_linear(const Matrix<S>& A, const std::vector<S>& b,
                                           double tol = 1e-9) {
  if constexpr (scalar_traits<S>::exact) {
    Matrix<S> aug(A.rows(), A.cols() + 1);
    aug.set_block(0, 0, A);
    for (int i = 0; i < A.rows(); ++i) aug(i, A.cols()) = b[i];
    std::vector<int> piv = rref(aug);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
    std::vector<S> x(A.cols(), scalar_traits<S>::zero());
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), A.cols());
    return x;
  } else {
    Eigen::MatrixXd eA = to_eigen(A);
    Eigen::VectorXd eb(A.rows());
    for (int i = 0; i < A.rows(); ++i) eb(i) = b[i];
    Eigen::VectorXd x = eA.colPivHouseholderQr().solve(eb);
    double resid = (eA * x - eb).norm();
    if (resid > tol * (eb.norm() + 1.0)) return std::nullopt;
    std::vector<S> out(A.cols());
    for (int j = 0; j < A.cols(); ++j) out[j] = x(j);
    return out;
  }
}

// Span of row vectors with a canonical (RREF / orthonormal) stored basis.
template <class S>
class Subspace {
public:
  Subspace() : ambient_(0) {}

  static Subspace span(Matrix<S> vectors, double rank_tol = 1e-8) {
    Subspace sub;
    sub.ambient_ = vectors.cols();
    if constexpr (scalar_traits<S>::exact) {
      std::vector<int> piv = rref(vectors);
      Matrix<S> basis(static_cast<int>(piv.size()), vectors.cols());
      for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < vectors.cols(); ++j) basis(static_cast<int>(r), j) = vectors(static_cast<int>(r), j);
      sub.basis_ = basis;
    } else {
      if (vectors.rows() == 0) {
        sub.basis_ = Matrix<S>(0, vectors.cols());
        return sub;
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(vectors), Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      double smax = sv.size() ? sv(0) : 0.0;
      int rank = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * std::max(smax, 1.0)) ++rank;
      Matrix<S> basis(rank, vectors.cols());
      for (int r = 0; r < rank; ++r)
        for (int j = 0; j < vectors.cols(); ++j) basis(r, j) = svd.matrixV()(j, r);
      sub.basis_ = basis;
    }
    return sub;
  }

  int dim() const { return basis_.rows(); }
  int ambient() const { return ambient_; }
  const Matrix<S>& basis() const { return basis_; }

  bool contains(const std::vector<S>& v, double tol = 1e-8) const {
    Matrix<S> stacked(basis_.rows() + 1, ambient_);
    stacked.set_block(0, 0, basis_);
    for (int j = 0; j < ambient_; ++j) stacked(basis_.rows(), j) = v[j];
    return rank_of(stacked, tol) == dim();
  }
  bool contains(const Subspace& other, double tol = 1e-8) const {
    Subspace s = sum(*this, other, tol);
    return s.dim() == dim();
  }
  bool equals(const Subspace& other, double tol = 1e-8) const {
    return dim() == other.dim() && contains(other, tol);
  }
  static Subspace sum(const Subspace& a, const Subspace& b, double tol = 1e-8) {
    assert(a.ambient_ == b.ambient_ || a.dim() == 0 || b.dim() == 0);
    int amb = a.dim() ? a.ambient_ : b.ambient_;
    Matrix<S> stacked(a.basis_.rows() + b.basis_.rows(), amb);
    stacked.set_block(0, 0, a.basis_);
    stacked.set_block(a.basis_.rows(), 0, b.basis_);
    return span(stacked, tol);
  }

private:
  int ambient_;
  Matrix<S> basis_;
};

} // namespace erpg2
