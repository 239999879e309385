#pragma once

#include <optional>
#include <vector>

#include "kgb/field.hpp"

namespace kgb {

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;

/// A subspace of K^n kept in reduced row echelon form.
///
/// Pivots are the first nonzero column of each row; rows are sorted by
/// pivot, so the stored basis depends only on the subspace.
class Subspace {
 public:
  Subspace(Field field, int dim);

  /// Adds v to the span; returns false when v was already inside.
  bool add(const Vec& v);
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;

  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  int dim() const noexcept { return dim_; }
  const Matrix& rows() const noexcept { return rows_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  const Field& field() const noexcept { return field_; }

 private:
  Field field_;
  int dim_;
  Matrix rows_;
  std::vector<int> pivots_;
};

int rank_of(const Field& f, const Matrix& rows, int dim);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Field& f, const Matrix& a);

Scalar determinant(const Field& f, Matrix a);

/// x * A for a row vector x.
Vec row_times(const Field& f, const Vec& x, const Matrix& a);

bool is_zero(const Vec& v);

}  // namespace kgb
