#pragma once

// Rational simplicial homology. Ranks are exact (arbitrary-precision
// rationals), so the Betti numbers are the free ranks of H_n(K; Z).

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eulercalc/cellset.hpp"
#include "eulercalc/checked.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/error.hpp"

namespace eulercalc {

namespace detail {

using Rational = boost::multiprecision::cpp_rational;
using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;  // sorted by row

inline void axpy_into(SparseColumn& v, const Rational& factor, const SparseColumn& p) {
  // v <- v - factor * p
  SparseColumn out;
  out.reserve(v.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < p.size()) {
    if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
      out.push_back(std::move(v[i++]));
    } else if (i == v.size() || p[j].first < v[i].first) {
      out.emplace_back(p[j].first, -factor * p[j].second);
      ++j;
    } else {
      Rational x = v[i].second - factor * p[j].second;
      if (x != 0) out.emplace_back(v[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

/// Rank of a set of sparse columns by column reduction with pivots on the
/// largest row index.
inline std::size_t column_rank(std::vector<SparseColumn> columns) {
  std::unordered_map<std::size_t, std::size_t> pivot_of_row;
  std::vector<SparseColumn> reduced;
  for (auto& v : columns) {
    while (!v.empty()) {
      const auto& [row, value] = v.back();
      auto it = pivot_of_row.find(row);
      if (it == pivot_of_row.end()) {
        pivot_of_row.emplace(row, reduced.size());
        reduced.push_back(std::move(v));
        break;
      }
      const SparseColumn& p = reduced[it->second];
      const Rational factor = value / p.back().second;
      axpy_into(v, factor, p);
    }
  }
  return reduced.size();
}

}  // namespace detail

/// Rank of the boundary map from n-simplices to (n-1)-simplices, n >= 1.
inline std::size_t boundary_rank(const SimplicialComplex& k, std::size_t n) {
  // Position of each simplex within its own dimension.
  std::vector<std::size_t> local(k.size());
  std::vector<std::size_t> next;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto d = k[i].dim();
    if (next.size() <= d) next.resize(d + 1, 0);
    local[i] = next[d]++;
  }
  std::vector<detail::SparseColumn> columns;
  for (const auto& s : k.simplices()) {
    if (s.dim() != n) continue;
    detail::SparseColumn col;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto face = k.index_of(s.facet(i));
      if (!face) throw DomainError("homology requires a closed complex");
      col.emplace_back(local[*face], detail::Rational(parity_sign(i)));
    }
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    columns.push_back(std::move(col));
  }
  return detail::column_rank(std::move(columns));
}

/// b_0 .. b_dim over the rationals. b_n = c_n - rank d_n - rank d_{n+1}.
inline std::vector<Count> betti_numbers(const SimplicialComplex& k) {
  const auto counts = k.counts_by_dim();
  std::vector<std::size_t> ranks(counts.size() + 1, 0);  // ranks[n] = rank d_n
  for (std::size_t n = 1; n < counts.size(); ++n) ranks[n] = boundary_rank(k, n);
  std::vector<Count> betti(counts.size());
  for (std::size_t n = 0; n < counts.size(); ++n)
    betti[n] = counts[n] - static_cast<Count>(ranks[n]) - static_cast<Count>(ranks[n + 1]);
  return betti;
}

inline std::vector<Count> betti_numbers(const CellSet& s) {
  if (!s.is_closed()) throw DomainError("homology requires a closed complex");
  return betti_numbers(s.as_complex());
}

inline Count chi_from_betti(const std::vector<Count>& betti) {
  Count total = 0;
  for (std::size_t n = 0; n < betti.size(); ++n)
    total = signed_accumulate(total, parity_sign(n), betti[n]);
  return total;
}

/// Euler characteristic as the alternating sum of homology ranks.
inline Count chi_homology(const SimplicialComplex& k) { return chi_from_betti(betti_numbers(k)); }

inline Count chi_homology(const CellSet& s) { return chi_from_betti(betti_numbers(s)); }

}  // namespace eulercalc
