#include "torusfix/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "torusfix/errors.hpp"
#include "torusfix/linalg.hpp"

namespace torusfix {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void sub_multiple(IntVector& row, const Integer& q, const IntVector& pivot_row) {
  if (q == 0) return;
  for (std::size_t j = 0; j < row.size(); ++j) row[j] -= q * pivot_row[j];
}

void check_lengths(const IntMatrix& rows, std::size_t n) {
  for (const auto& r : rows) {
    if (r.size() != n) {
      throw InvalidInput("character vector of length " + std::to_string(r.size()) +
                         " for torus rank " + std::to_string(n));
    }
  }
}

void check_rank(const SubgroupLattice& a, const SubgroupLattice& b) {
  if (a.n() != b.n()) throw InvalidInput("subgroups of tori of different rank");
}

// Echelon on the first `cols` columns; rows may be longer (carried along).
IntMatrix echelon_prefix(IntMatrix a, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i) {
        if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
      }
      if (best == a.size()) break;
      std::swap(a[r], a[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        sub_multiple(a[i], floor_div(a[i][c], a[r][c]), a[r]);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& z : a[r]) z = -z;
    }
    for (std::size_t i = 0; i < r; ++i) sub_multiple(a[i], floor_div(a[i][c], a[r][c]), a[r]);
    ++r;
  }
  return a;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows, std::size_t n) {
  check_lengths(rows, n);
  IntMatrix e = echelon_prefix(std::move(rows), n);
  IntMatrix out;
  for (auto& r : e) {
    if (!is_zero(r)) out.push_back(std::move(r));
  }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a, std::size_t n) {
  check_lengths(a, n);
  const std::size_t m = a.size();
  IntMatrix aug(n, IntVector(m + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) aug[i][k] = a[k][i];
    aug[i][m + i] = 1;
  }
  aug = echelon_prefix(std::move(aug), m);
  IntMatrix kernel;
  for (const auto& row : aug) {
    bool zero_prefix = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (row[k] != 0) {
        zero_prefix = false;
        break;
      }
    }
    if (zero_prefix) kernel.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(m), row.end());
  }
  return hermite_normal_form(std::move(kernel), n);
}

bool in_integer_span(const IntMatrix& hnf, IntVector v) {
  for (const auto& row : hnf) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (v[p] % row[p] != 0) return false;
    sub_multiple(v, v[p] / row[p], row);
  }
  return is_zero(v);
}

SubgroupLattice SubgroupLattice::from_rows(const IntMatrix& rows, std::size_t n) {
  return SubgroupLattice(n, hermite_normal_form(rows, n));
}

SubgroupLattice SubgroupLattice::full_torus(std::size_t n) { return SubgroupLattice(n, {}); }

SubgroupLattice SubgroupLattice::trivial(std::size_t n) {
  IntMatrix id(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return SubgroupLattice(n, std::move(id));
}

bool SubgroupLattice::is_subtorus() const { return identity_component(*this) == *this; }

std::string SubgroupLattice::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) os << ",";
    os << "(";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) os << ",";
      os << rows_[i][j].get_str();
    }
    os << ")";
  }
  os << "]";
  return os.str();
}

bool operator<(const SubgroupLattice& a, const SubgroupLattice& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
  return a.rows_ < b.rows_;
}

SubgroupLattice canonicalize(const IntMatrix& rows, std::size_t n) {
  return SubgroupLattice::from_rows(rows, n);
}

bool contains(const SubgroupLattice& h, const SubgroupLattice& k) {
  check_rank(h, k);
  for (const auto& row : h.ann()) {
    if (!in_integer_span(k.ann(), row)) return false;
  }
  return true;
}

SubgroupLattice intersect(const SubgroupLattice& h, const SubgroupLattice& k) {
  check_rank(h, k);
  IntMatrix rows = h.ann();
  rows.insert(rows.end(), k.ann().begin(), k.ann().end());
  return SubgroupLattice::from_rows(rows, h.n());
}

SubgroupLattice identity_component(const SubgroupLattice& h) {
  const IntMatrix perp = integer_kernel(h.ann(), h.n());
  return SubgroupLattice::from_rows(integer_kernel(perp, h.n()), h.n());
}

std::vector<RatVector> quotient_char_space(const SubgroupLattice& u) {
  if (!u.is_subtorus()) throw InvalidInput("not a subtorus: " + u.to_string());
  std::vector<RatVector> basis;
  for (const auto& row : u.ann()) basis.push_back(to_rational(row));
  return basis;
}

bool in_rational_span(const SubgroupLattice& h, const RatVector& v) {
  if (v.size() != h.n()) throw InvalidInput("character length mismatch");
  Echelon e(h.n());
  for (const auto& row : h.ann()) e.insert(to_sparse(to_rational(row)));
  return e.contains(to_sparse(v));
}

bool pair_leq(const SubgroupPair& a, const SubgroupPair& b) {
  return contains(a.u, b.u) && contains(b.h, a.h);
}

PairPoset::PairPoset(std::size_t n, std::vector<SubgroupLattice> right,
                     std::vector<SubgroupLattice> left)
    : n_(n), right_(std::move(right)), left_(std::move(left)) {
  for (const auto& u : left_) {
    for (const auto& h : right_) {
      if (contains(h, u)) pairs_.push_back({u, h});
    }
  }
  order_.assign(pairs_.size(), std::vector<bool>(pairs_.size()));
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    for (std::size_t j = 0; j < pairs_.size(); ++j) order_[i][j] = pair_leq(pairs_[i], pairs_[j]);
  }
}

std::size_t PairPoset::find(const SubgroupPair& p) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i] == p) return i;
  }
  return pairs_.size();
}

PairPoset generate_stable(const std::vector<SubgroupLattice>& generators, std::size_t n) {
  std::vector<SubgroupLattice> right{SubgroupLattice::full_torus(n), SubgroupLattice::trivial(n)};
  auto add_unique = [](std::vector<SubgroupLattice>& v, const SubgroupLattice& g) {
    if (std::find(v.begin(), v.end(), g) == v.end()) {
      v.push_back(g);
      return true;
    }
    return false;
  };
  for (const auto& g : generators) {
    if (g.n() != n) throw InvalidInput("generator of wrong torus rank");
    add_unique(right, g);
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t size = right.size();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        if (add_unique(right, intersect(right[i], right[j]))) grew = true;
      }
    }
  }
  std::sort(right.begin(), right.end());
  std::vector<SubgroupLattice> left;
  for (const auto& h : right) add_unique(left, identity_component(h));
  std::sort(left.begin(), left.end());
  return PairPoset(n, std::move(right), std::move(left));
}

SubgroupLattice m_D(const std::vector<SubgroupLattice>& right, const SubgroupLattice& h) {
  SubgroupLattice result = SubgroupLattice::full_torus(h.n());
  for (const auto& g : right) {
    check_rank(g, h);
    if (contains(g, h)) result = intersect(result, g);
  }
  return result;
}

SubgroupLattice m_D(const PairPoset& poset, const SubgroupLattice& h) {
  return m_D(poset.right(), h);
}

}  // namespace torusfix
