#include "kgb/linalg.hpp"

#include <algorithm>

#include "kgb/error.hpp"

namespace kgb {

namespace {

int first_nonzero(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

// v -= s * w
void axpy(const Field& f, Vec& v, Scalar s, const Vec& w) {
  if (s == 0) return;
  const Scalar t = f.neg(s);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] != 0) v[i] = f.add(v[i], f.mul(t, w[i]));
  }
}

}  // namespace

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

Subspace::Subspace(Field field, int dim) : field_(std::move(field)), dim_(dim) {}

Vec Subspace::reduce(Vec v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw Error(ErrorCode::kMismatchedContext, "vector length differs from subspace dimension");
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    axpy(field_, v, v[pivots_[r]], rows_[r]);
  }
  return v;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Subspace::add(const Vec& v) {
  Vec w = reduce(v);
  const int piv = first_nonzero(w);
  if (piv < 0) return false;
  const Scalar inv = field_.inv(w[piv]);
  for (auto& s : w) s = field_.mul(s, inv);
  for (auto& row : rows_) axpy(field_, row, row[piv], w);
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

int rank_of(const Field& f, const Matrix& rows, int dim) {
  Subspace s(f, dim);
  for (const auto& r : rows) s.add(r);
  return s.rank();
}

std::optional<Matrix> inverse(const Field& f, const Matrix& a) {
  const std::size_t n = a.size();
  Matrix m = a;
  Matrix inv(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error(ErrorCode::kInvalidArgument, "matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Scalar s = f.inv(m[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = f.mul(m[col][j], s);
      inv[col][j] = f.mul(inv[col][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Scalar t = m[r][col];
      axpy(f, m[r], t, m[col]);
      axpy(f, inv[r], t, inv[col]);
    }
  }
  return inv;
}

Scalar determinant(const Field& f, Matrix m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = f.neg(det);
    }
    det = f.mul(det, m[col][col]);
    const Scalar s = f.inv(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] != 0) axpy(f, m[r], f.mul(m[r][col], s), m[col]);
    }
  }
  return det;
}

Vec row_times(const Field& f, const Vec& x, const Matrix& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Vec out(cols, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    const Vec& row = a[i];
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] != 0) out[j] = f.add(out[j], f.mul(x[i], row[j]));
    }
  }
  return out;
}

}  // namespace kgb
