#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulercalc/checked.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/error.hpp"

namespace eulercalc {

/// An arbitrary subset of the open simplices of an ambient complex. Need not
/// be closed under faces, so it stands in for open and locally closed pieces
/// as well as subcomplexes.
class CellSet {
public:
  CellSet() = default;

  /// Members given as indices into ambient->simplices(); duplicates collapse.
  CellSet(ComplexPtr ambient, std::vector<std::size_t> members)
      : ambient_(std::move(ambient)), members_(std::move(members)) {
    if (!ambient_) throw DomainError("cell set has no ambient complex");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= ambient_->size())
      throw DomainError("cell index out of range of ambient complex");
  }

  static CellSet from_simplices(ComplexPtr ambient, std::span<const Simplex> simplices) {
    std::vector<std::size_t> idx;
    idx.reserve(simplices.size());
    for (const auto& s : simplices) {
      auto i = ambient->index_of(s);
      if (!i) throw DomainError("simplex " + s.to_string() + " is not in the ambient complex");
      idx.push_back(*i);
    }
    return CellSet(std::move(ambient), std::move(idx));
  }

  static CellSet from_simplices(ComplexPtr ambient, std::initializer_list<Simplex> simplices) {
    return from_simplices(std::move(ambient),
                          std::span<const Simplex>(simplices.begin(), simplices.size()));
  }

  static CellSet all(ComplexPtr ambient) {
    std::vector<std::size_t> idx(ambient->size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return CellSet(std::move(ambient), std::move(idx));
  }

  static CellSet none(ComplexPtr ambient) { return CellSet(std::move(ambient), {}); }

  /// The closed subcomplex generated by a single simplex (the simplex and
  /// all its faces).
  static CellSet closure_of(ComplexPtr ambient, const Simplex& s) {
    std::vector<Simplex> faces;
    const std::uint32_t full = (1u << s.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) faces.push_back(s.face(mask));
    return from_simplices(std::move(ambient), faces);
  }

  const ComplexPtr& ambient() const noexcept { return ambient_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains_index(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }
  bool contains(const Simplex& s) const {
    auto i = ambient_->index_of(s);
    return i && contains_index(*i);
  }

  std::vector<Simplex> simplices() const {
    std::vector<Simplex> out;
    out.reserve(members_.size());
    for (auto i : members_) out.push_back((*ambient_)[i]);
    return out;
  }

  /// Every face of every member is also a member.
  bool is_closed() const {
    for (auto i : members_) {
      const Simplex& s = (*ambient_)[i];
      if (s.dim() == 0) continue;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (!contains_index(*ambient_->index_of(s.facet(k)))) return false;
    }
    return true;
  }

  /// Members as a standalone complex; requires is_closed().
  SimplicialComplex as_complex() const {
    if (!is_closed()) throw DomainError("cell set is not closed under faces");
    return make_complex_unchecked(simplices());
  }

  /// Cell counts c_i by dimension.
  std::vector<Count> counts_by_dim() const {
    std::vector<Count> counts;
    for (auto i : members_) {
      const auto d = (*ambient_)[i].dim();
      if (counts.size() <= d) counts.resize(d + 1, 0);
      ++counts[d];
    }
    return counts;
  }

  friend bool operator==(const CellSet& a, const CellSet& b) {
    return same_complex(a.ambient_, b.ambient_) && a.members_ == b.members_;
  }

private:
  ComplexPtr ambient_;
  std::vector<std::size_t> members_;
};

namespace detail {

inline void require_same_ambient(const ComplexPtr& a, const ComplexPtr& b) {
  if (!same_complex(a, b)) throw DomainError("incompatible ambient complexes");
}

template <class Op>
CellSet combine(const CellSet& a, const CellSet& b, Op op) {
  require_same_ambient(a.ambient(), b.ambient());
  std::vector<std::size_t> out;
  op(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
     std::back_inserter(out));
  return CellSet(a.ambient(), std::move(out));
}

}  // namespace detail

inline CellSet set_union(const CellSet& a, const CellSet& b) {
  return detail::combine(a, b, [](auto... args) { return std::set_union(args...); });
}

inline CellSet set_intersection(const CellSet& a, const CellSet& b) {
  return detail::combine(a, b, [](auto... args) { return std::set_intersection(args...); });
}

inline CellSet set_difference(const CellSet& a, const CellSet& b) {
  return detail::combine(a, b, [](auto... args) { return std::set_difference(args...); });
}

inline bool is_subset(const CellSet& a, const CellSet& b) {
  detail::require_same_ambient(a.ambient(), b.ambient());
  return std::includes(b.members().begin(), b.members().end(), a.members().begin(),
                       a.members().end());
}

/// Alternating count of open cells: sum over members of (-1)^dim.
inline Count chi(const CellSet& s) {
  Count total = 0;
  for (auto i : s.members()) total = checked_add(total, (*s.ambient())[i].chi());
  return total;
}

/// Cell counts of a cell complex whose cells need not be simplices.
struct CellComplexSummary {
  std::map<std::size_t, Count> cell_counts;

  Count chi() const {
    Count total = 0;
    for (const auto& [d, c] : cell_counts) total = signed_accumulate(total, parity_sign(d), c);
    return total;
  }

  friend bool operator==(const CellComplexSummary&, const CellComplexSummary&) = default;
};

inline CellComplexSummary summarize(const CellSet& s) {
  CellComplexSummary out;
  const auto counts = s.counts_by_dim();
  for (std::size_t d = 0; d < counts.size(); ++d)
    if (counts[d] != 0) out.cell_counts[d] = counts[d];
  return out;
}

/// Product cell structure: an i-cell times a j-cell is an (i+j)-cell, so the
/// counts multiply as polynomials in the dimension.
inline CellComplexSummary product(const CellSet& s, const CellSet& t) {
  const auto a = s.counts_by_dim();
  const auto b = t.counts_by_dim();
  CellComplexSummary out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      Count& slot = out.cell_counts[i + j];
      slot = checked_add(slot, checked_mul(a[i], b[j]));
    }
  }
  return out;
}

}  // namespace eulercalc
