#pragma once

// Exact subspace arithmetic over a field Scalar. Every routine here relies on
// an exact zero test (wpdist::is_zero) and must not be used with floats.

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

#include "wpdist/scalar.hpp"

namespace wpdist {

/// In-place reduced row echelon form; returns pivot columns.
template <class Scalar>
std::vector<Eigen::Index> rref_in_place(Mat<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!is_zero(m(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Eigen::Index rank(Mat<Scalar> m) {
  return static_cast<Eigen::Index>(rref_in_place(m).size());
}

/// Basis of {x : m x = 0}, one column per free variable.
template <class Scalar>
Mat<Scalar> null_space(Mat<Scalar> m) {
  const Eigen::Index n = m.cols();
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (auto p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  Mat<Scalar> out(n, n - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    for (Eigen::Index r = 0; r < n; ++r) out(r, k) = Scalar(0);
    out(f, k) = Scalar(1);
    for (size_t r = 0; r < pivots.size(); ++r) out(pivots[r], k) = -m(static_cast<Eigen::Index>(r), f);
    ++k;
  }
  return out;
}

/// A linear subspace of Scalar^n stored by a canonical basis: the columns are
/// the transpose of the reduced row echelon form of any spanning set, so two
/// subspaces are equal exactly when their bases are equal.
template <class Scalar>
class Subspace {
 public:
  Subspace() = default;

  /// The span of the columns of `vectors`.
  explicit Subspace(const Mat<Scalar>& vectors) : ambient_(vectors.rows()) {
    Mat<Scalar> rows = vectors.transpose();
    const auto pivots = rref_in_place(rows);
    basis_ = rows.topRows(static_cast<Eigen::Index>(pivots.size())).transpose();
  }

  static Subspace zero(Eigen::Index ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_.resize(ambient, 0);
    return s;
  }

  static Subspace full(Eigen::Index ambient) {
    Mat<Scalar> id(ambient, ambient);
    for (Eigen::Index i = 0; i < ambient; ++i)
      for (Eigen::Index j = 0; j < ambient; ++j) id(i, j) = Scalar(i == j ? 1 : 0);
    return Subspace(id);
  }

  Eigen::Index dim() const { return basis_.cols(); }
  Eigen::Index ambient_dim() const { return ambient_; }
  const Mat<Scalar>& basis() const { return basis_; }

  bool contains(const Vec<Scalar>& v) const {
    Mat<Scalar> aug(ambient_, dim() + 1);
    aug << basis_, v;
    return rank(aug) == dim();
  }

  bool contains(const Subspace& other) const {
    if (other.dim() == 0) return true;
    Mat<Scalar> aug(ambient_, dim() + other.dim());
    aug << basis_, other.basis_;
    return rank(aug) == dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.cols() == b.basis_.cols() && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Eigen::Index ambient_ = 0;
  Mat<Scalar> basis_;
};

template <class Scalar>
Subspace<Scalar> operator+(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  Mat<Scalar> aug(a.ambient_dim(), a.dim() + b.dim());
  aug << a.basis(), b.basis();
  return Subspace<Scalar>(aug);
}

template <class Scalar>
Subspace<Scalar> intersect(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  if (a.dim() == 0 || b.dim() == 0) return Subspace<Scalar>::zero(a.ambient_dim());
  Mat<Scalar> aug(a.ambient_dim(), a.dim() + b.dim());
  aug << a.basis(), -b.basis();
  const Mat<Scalar> ker = null_space(aug);
  return Subspace<Scalar>(Mat<Scalar>(a.basis() * ker.topRows(a.dim())));
}

template <class Scalar>
Subspace<Scalar> kernel(const Mat<Scalar>& m) {
  return Subspace<Scalar>(null_space(m));
}

template <class Scalar>
Subspace<Scalar> image(const Mat<Scalar>& m) {
  return Subspace<Scalar>(m);
}

/// m(U) for a subspace U of the source of m.
template <class Scalar>
Subspace<Scalar> apply(const Mat<Scalar>& m, const Subspace<Scalar>& u) {
  if (u.dim() == 0) return Subspace<Scalar>::zero(m.rows());
  return Subspace<Scalar>(Mat<Scalar>(m * u.basis()));
}

/// {v : m v in U}.
template <class Scalar>
Subspace<Scalar> preimage(const Mat<Scalar>& m, const Subspace<Scalar>& u) {
  Mat<Scalar> aug(m.rows(), m.cols() + u.dim());
  if (u.dim() > 0)
    aug << m, -u.basis();
  else
    aug = m;
  const Mat<Scalar> ker = null_space(aug);
  return Subspace<Scalar>(Mat<Scalar>(ker.topRows(m.cols())));
}

/// Columns of `vectors` extending a basis of `base` to a basis of `base + span(vectors)`,
/// chosen greedily in column order.
template <class Scalar>
Mat<Scalar> complement_in(const Subspace<Scalar>& base, const Mat<Scalar>& vectors) {
  Mat<Scalar> current = base.basis();
  std::vector<Eigen::Index> picked;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Mat<Scalar> aug(current.rows(), current.cols() + 1);
    aug << current, vectors.col(c);
    if (rank(aug) > current.cols()) {
      current = aug;
      picked.push_back(c);
    }
  }
  Mat<Scalar> out(vectors.rows(), static_cast<Eigen::Index>(picked.size()));
  for (size_t k = 0; k < picked.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vectors.col(picked[k]);
  return out;
}

/// Coordinates c with basis * c == v; the caller guarantees v lies in the span.
template <class Scalar>
Vec<Scalar> coordinates(const Mat<Scalar>& basis, const Vec<Scalar>& v) {
  Mat<Scalar> aug(basis.rows(), basis.cols() + 1);
  aug << basis, v;
  const auto pivots = rref_in_place(aug);
  assert(std::find(pivots.begin(), pivots.end(), basis.cols()) == pivots.end());
  Vec<Scalar> c(basis.cols());
  for (Eigen::Index i = 0; i < basis.cols(); ++i) c(i) = Scalar(0);
  for (size_t r = 0; r < pivots.size(); ++r) c(pivots[r]) = aug(static_cast<Eigen::Index>(r), basis.cols());
  return c;
}

/// Determinant by Gaussian elimination over a field.
template <class Scalar>
Scalar determinant(Mat<Scalar> m) {
  assert(m.rows() == m.cols());
  Scalar det(1);
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!is_zero(m(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      m.row(piv).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      const Scalar f = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

using GSubspace = Subspace<Gaussian>;

}  // namespace wpdist
