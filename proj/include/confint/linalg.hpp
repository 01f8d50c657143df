#pragma once

// Exact sparse linear algebra over the rationals: echelon reduction, rank,
// span membership, null spaces and uniquely determined solutions.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "confint/errors.hpp"

namespace confint {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Column index -> coefficient. Zero entries are never stored.
using SparseRow = std::map<int, Rational>;

inline void axpy(SparseRow& target, const Rational& a, const SparseRow& x) {
  if (a == 0) return;
  for (const auto& [col, v] : x) {
    auto [it, inserted] = target.try_emplace(col, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second == 0) target.erase(it);
    }
  }
}

/// Incremental row echelon form. Each stored row has leading coefficient 1.
class RowReducer {
 public:
  /// Reduces `row` against the stored pivots; the result is zero iff `row`
  /// lies in the span of everything added so far.
  SparseRow reduce(SparseRow row) const {
    auto it = row.begin();
    while (it != row.end()) {
      const int col = it->first;
      auto p = pivots_.find(col);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const Rational factor = -it->second;
      axpy(row, factor, p->second);
      it = row.upper_bound(col);
    }
    return row;
  }

  bool in_span(const SparseRow& row) const { return reduce(row).empty(); }

  /// Adds a row; returns true iff it increased the rank.
  bool add(const SparseRow& row) {
    SparseRow r = reduce(row);
    if (r.empty()) return false;
    const Rational lead = r.begin()->second;
    if (lead != 1) {
      for (auto& [c, v] : r) v /= lead;
    }
    const int col = r.begin()->first;
    pivots_.emplace(col, std::move(r));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<int, SparseRow>& pivots() const { return pivots_; }

  /// Back-substitutes so that every pivot column is zero in all other rows.
  void make_reduced() {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const int pcol = it->first;
      for (auto& [col, row] : pivots_) {
        if (col >= pcol) break;
        auto e = row.find(pcol);
        if (e == row.end()) continue;
        const Rational factor = -e->second;
        axpy(row, factor, it->second);
      }
    }
  }

 private:
  std::map<int, SparseRow> pivots_;
};

inline std::size_t rank_of(const std::vector<SparseRow>& rows) {
  RowReducer r;
  for (const auto& row : rows) r.add(row);
  return r.rank();
}

/// Basis of { x in Q^ncols : row . x = 0 for every row }.
inline std::vector<std::vector<Rational>> null_space(const std::vector<SparseRow>& rows, int ncols) {
  RowReducer r;
  for (const auto& row : rows) r.add(row);
  r.make_reduced();
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < ncols; ++f) {
    if (r.pivots().count(f)) continue;
    std::vector<Rational> x(ncols, Rational(0));
    x[f] = 1;
    for (const auto& [p, row] : r.pivots()) {
      auto e = row.find(f);
      if (e != row.end()) x[p] = -e->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves rows * x = rhs exactly. Throws PreconditionError when the system is
/// inconsistent; returns nullopt when the solution is not unique.
inline std::optional<std::vector<Rational>> solve_unique(const std::vector<SparseRow>& rows,
                                                          const std::vector<Rational>& rhs, int nvars) {
  RowReducer r;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseRow aug = rows[i];
    if (rhs[i] != 0) aug[nvars] = rhs[i];
    r.add(aug);
  }
  if (r.pivots().count(nvars)) throw PreconditionError("linear system is inconsistent");
  if (static_cast<int>(r.rank()) < nvars) return std::nullopt;
  r.make_reduced();
  std::vector<Rational> x(nvars, Rational(0));
  for (const auto& [p, row] : r.pivots()) {
    auto e = row.find(nvars);
    if (e != row.end()) x[p] = e->second;
  }
  return x;
}

}  // namespace confint
