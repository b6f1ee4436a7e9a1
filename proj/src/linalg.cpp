#include "torusfix/linalg.hpp"

#include <algorithm>

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

void normalize_terms(std::vector<SparseEntry>& terms, SparseVec& out) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  out.clear();
  for (auto& t : terms) {
    if (!out.empty() && out.back().col == t.col) {
      out.back().value += t.value;
    } else {
      if (!out.empty() && out.back().value == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().value == 0) out.pop_back();
}

}  // namespace

SparseVec to_sparse(const RatVector& dense) {
  SparseVec out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) out.push_back({i, dense[i]});
  }
  return out;
}

RatVector to_dense(const SparseVec& v, std::size_t dim) {
  RatVector out(dim);
  for (const auto& e : v) {
    if (e.col >= dim) throw InvariantBreach("sparse entry out of range");
    out[e.col] = e.value;
  }
  return out;
}

SparseVec add_scaled(const SparseVec& a, const Rational& s, const SparseVec& b) {
  if (s == 0) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, s * b[j].value});
      ++j;
    } else {
      Rational v = a[i].value + s * b[j].value;
      if (v != 0) out.push_back({a[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& v, const Rational& s) {
  if (s == 0) return {};
  SparseVec out = v;
  for (auto& e : out) e.value *= s;
  return out;
}

Rational entry(const SparseVec& v, std::size_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const SparseEntry& e, std::size_t c) { return e.col < c; });
  if (it != v.end() && it->col == col) return it->value;
  return Rational(0);
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::from_dense(const std::vector<RatVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidInput("ragged matrix rows");
    m.data_[r] = to_sparse(rows[r]);
  }
  return m;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= data_.size() || c >= cols_) throw InvariantBreach("matrix index out of range");
  data_[r] = add_scaled(data_[r], Rational(1), SparseVec{{c, value}});
}

void SparseMatrix::set_row(std::size_t r, SparseVec row) {
  if (r >= data_.size()) throw InvariantBreach("matrix row out of range");
  for (const auto& e : row) {
    if (e.col >= cols_) throw InvariantBreach("matrix column out of range");
  }
  data_[r] = std::move(row);
}

SparseVec SparseMatrix::multiply(const SparseVec& x) const {
  SparseVec out;
  for (std::size_t r = 0; r < data_.size(); ++r) {
    Rational acc = 0;
    std::size_t i = 0, j = 0;
    const auto& row = data_[r];
    while (i < row.size() && j < x.size()) {
      if (row[i].col < x[j].col) {
        ++i;
      } else if (x[j].col < row[i].col) {
        ++j;
      } else {
        acc += row[i].value * x[j].value;
        ++i;
        ++j;
      }
    }
    if (acc != 0) out.push_back({r, acc});
  }
  return out;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  std::vector<SparseEntry> terms(v.begin(), v.end());
  bool touched = false;
  for (const auto& e : v) {
    if (e.col >= limit_) break;
    auto it = rows_.find(e.col);
    if (it == rows_.end()) continue;
    touched = true;
    for (const auto& r : it->second) terms.push_back({r.col, -e.value * r.value});
  }
  if (!touched) return v;
  SparseVec out;
  normalize_terms(terms, out);
  return out;
}

bool Echelon::contains(const SparseVec& v) const {
  const SparseVec r = reduce(v);
  return r.empty() || r.front().col >= limit_;
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty() || r.front().col >= limit_) return false;
  const std::size_t pivot = r.front().col;
  const Rational inv = 1 / r.front().value;
  for (auto& e : r) e.value *= inv;
  for (auto& [p, row] : rows_) {
    const Rational c = entry(row, pivot);
    if (c != 0) row = add_scaled(row, -c, r);
  }
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::optional<SparseVec> SpanSolver::add(const SparseVec& v) {
  SparseVec tracked = v;
  for (const auto& e : v) {
    if (e.col >= dim_) throw InvariantBreach("vector exceeds solver dimension");
  }
  tracked.push_back({dim_ + count_, Rational(1)});
  ++count_;
  SparseVec r = ech_.reduce(tracked);
  if (!r.empty() && r.front().col < dim_) {
    ech_.insert(tracked);
    return std::nullopt;
  }
  SparseVec relation;
  for (const auto& e : r) relation.push_back({e.col - dim_, e.value});
  return relation;
}

std::optional<SparseVec> SpanSolver::express(const SparseVec& v) const {
  SparseVec r = ech_.reduce(v);
  if (!r.empty() && r.front().col < dim_) return std::nullopt;
  SparseVec coeffs;
  for (const auto& e : r) coeffs.push_back({e.col - dim_, -e.value});
  return coeffs;
}

bool SpanSolver::contains(const SparseVec& v) const { return ech_.contains(v); }

std::size_t rank(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  std::vector<SparseVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (e.is_pivot(free)) continue;
    std::vector<SparseEntry> terms{{free, Rational(1)}};
    for (const auto& [pivot, row] : e.rows()) {
      const Rational c = entry(row, free);
      if (c != 0) terms.push_back({pivot, -c});
    }
    std::sort(terms.begin(), terms.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    basis.push_back(std::move(terms));
  }
  return basis;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b) {
  for (const auto& e : b) {
    if (e.col >= m.rows()) throw InvalidInput("right-hand side length mismatch");
  }
  const std::size_t rhs = m.cols();
  Echelon e(rhs + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec row = m.row(r);
    const Rational br = entry(b, r);
    if (br != 0) row.push_back({rhs, br});
    e.insert(row);
  }
  if (e.is_pivot(rhs)) return std::nullopt;
  SparseVec x;
  for (const auto& [pivot, row] : e.rows()) {
    const Rational v = entry(row, rhs);
    if (v != 0) x.push_back({pivot, v});
  }
  return x;
}

std::vector<std::size_t> complement_indices(const Echelon& base,
                                            const std::vector<SparseVec>& candidates) {
  Echelon work = base;
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (work.insert(candidates[i])) picked.push_back(i);
  }
  return picked;
}

}  // namespace torusfix
