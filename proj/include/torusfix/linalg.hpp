#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "torusfix/rational.hpp"

namespace torusfix {

struct SparseEntry {
  std::size_t col;
  Rational value;
};

/// Sorted by column, no explicit zeros.
using SparseVec = std::vector<SparseEntry>;

SparseVec to_sparse(const RatVector& dense);
RatVector to_dense(const SparseVec& v, std::size_t dim);

/// a + s*b.
SparseVec add_scaled(const SparseVec& a, const Rational& s, const SparseVec& b);
SparseVec scaled(const SparseVec& v, const Rational& s);
Rational entry(const SparseVec& v, std::size_t col);

/// Row-major sparse rational matrix.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols);
  static SparseMatrix from_dense(const std::vector<RatVector>& rows);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  /// Accumulates value into (r, c).
  void add(std::size_t r, std::size_t c, const Rational& value);
  void set_row(std::size_t r, SparseVec row);
  const SparseVec& row(std::size_t r) const { return data_[r]; }

  SparseVec multiply(const SparseVec& x) const;

 private:
  std::size_t cols_;
  std::vector<SparseVec> data_;
};

/// Reduced row echelon basis of a subspace, maintained incrementally.
///
/// Only columns below `pivot_limit` may carry pivots. Columns at or above
/// the limit are carried along passively; this is how SpanSolver tracks
/// combinations of inserted vectors.
class Echelon {
 public:
  explicit Echelon(std::size_t pivot_limit) : limit_(pivot_limit) {}

  std::size_t pivot_limit() const { return limit_; }
  std::size_t rank() const { return rows_.size(); }

  /// v minus the span part, in the pivot columns. Zero in the columns
  /// below the limit iff v lies in the span.
  SparseVec reduce(const SparseVec& v) const;

  bool contains(const SparseVec& v) const;

  /// Adds v to the basis. Returns false (and leaves the basis unchanged) if
  /// v is already in the span.
  bool insert(const SparseVec& v);

  const std::map<std::size_t, SparseVec>& rows() const { return rows_; }
  bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }

 private:
  std::size_t limit_;
  std::map<std::size_t, SparseVec> rows_;
};

/// Expresses vectors as exact combinations of a growing generator list.
class SpanSolver {
 public:
  explicit SpanSolver(std::size_t dim) : dim_(dim), ech_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t generator_count() const { return count_; }
  std::size_t rank() const { return ech_.rank(); }

  /// Appends v as the next generator. If v depends on earlier generators
  /// the returned relation holds coefficients over generators 0..count-1
  /// (including v itself) summing to zero.
  std::optional<SparseVec> add(const SparseVec& v);

  /// Coefficients over the generators, or nullopt if v is not in the span.
  std::optional<SparseVec> express(const SparseVec& v) const;

  bool contains(const SparseVec& v) const;

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  Echelon ech_;
};

std::size_t rank(const SparseMatrix& m);

/// Basis of {x : M x = 0}, read off the reduced row echelon form: one
/// vector per free column, with 1 in that column.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

/// One solution of M x = b (free variables set to zero), or nullopt.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);

/// Vectors among `candidates` extending `base` to a basis of the joint
/// span, in candidate order.
std::vector<std::size_t> complement_indices(const Echelon& base,
                                            const std::vector<SparseVec>& candidates);

}  // namespace torusfix
