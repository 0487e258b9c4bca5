#pragma once

// Constructible functions on a fixed triangulation and their Euler integrals.
//
// A function is stored as one integer coefficient per open simplex of the
// ambient complex, i.e. h = sum_a c_a 1_{sigma_a}. Three integration routes
// are provided and agree exactly:
//   * cell-wise:  sum_a c_a (-1)^dim(sigma_a)
//   * level sets: sum_{s >= 1} chi{h >= s}        (nonnegative h only)
//   * cover:      inclusion-exclusion over the intersections of a finite cover

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulercalc/cellset.hpp"
#include "eulercalc/checked.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/error.hpp"
#include "eulercalc/simplicial_map.hpp"

namespace eulercalc {

/// Largest cover accepted by integrate_over_cover (2^m - 1 terms).
inline constexpr std::size_t kMaxCoverSize = 20;

class ConstructibleFunction {
public:
  ConstructibleFunction() = default;

  /// Zero function on `ambient`.
  explicit ConstructibleFunction(ComplexPtr ambient)
      : ambient_(std::move(ambient)), coeffs_(ambient_ ? ambient_->size() : 0, 0) {
    if (!ambient_) throw DomainError("constructible function has no ambient complex");
  }

  /// Dense coefficients, one per ambient simplex in index order.
  ConstructibleFunction(ComplexPtr ambient, std::vector<Count> coeffs)
      : ambient_(std::move(ambient)), coeffs_(std::move(coeffs)) {
    if (!ambient_) throw DomainError("constructible function has no ambient complex");
    if (coeffs_.size() != ambient_->size())
      throw DomainError("coefficient vector does not match ambient complex size");
  }

  /// Sparse construction; repeated simplices accumulate.
  static ConstructibleFunction from_terms(ComplexPtr ambient,
                                          std::span<const std::pair<Simplex, Count>> terms) {
    ConstructibleFunction h(std::move(ambient));
    for (const auto& [s, c] : terms) {
      auto i = h.ambient_->index_of(s);
      if (!i) throw DomainError("simplex " + s.to_string() + " is not in the ambient complex");
      h.coeffs_[*i] = checked_add(h.coeffs_[*i], c);
    }
    return h;
  }

  const ComplexPtr& ambient() const noexcept { return ambient_; }
  const std::vector<Count>& coeffs() const noexcept { return coeffs_; }

  Count operator[](std::size_t index) const { return coeffs_[index]; }

  Count at(const Simplex& s) const {
    auto i = ambient_->index_of(s);
    if (!i) throw DomainError("simplex " + s.to_string() + " is not in the ambient complex");
    return coeffs_[*i];
  }

  /// Nonzero terms (simplex, coefficient) in ambient order.
  std::vector<std::pair<Simplex, Count>> terms() const {
    std::vector<std::pair<Simplex, Count>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) out.emplace_back((*ambient_)[i], coeffs_[i]);
    return out;
  }

  CellSet support() const {
    return select([](Count c) { return c != 0; });
  }

  /// {h >= s}
  CellSet upper_set(Count s) const {
    return select([s](Count c) { return c >= s; });
  }

  /// {h == c}
  CellSet level_set(Count value) const {
    return select([value](Count c) { return c == value; });
  }

  Count max_value() const {
    return coeffs_.empty() ? 0 : *std::max_element(coeffs_.begin(), coeffs_.end());
  }
  Count min_value() const {
    return coeffs_.empty() ? 0 : *std::min_element(coeffs_.begin(), coeffs_.end());
  }

  friend bool operator==(const ConstructibleFunction& a, const ConstructibleFunction& b) {
    return same_complex(a.ambient_, b.ambient_) && a.coeffs_ == b.coeffs_;
  }

private:
  template <class Pred>
  CellSet select(Pred pred) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (pred(coeffs_[i])) idx.push_back(i);
    return CellSet(ambient_, std::move(idx));
  }

  ComplexPtr ambient_;
  std::vector<Count> coeffs_;
};

/// 1_S
inline ConstructibleFunction indicator(const CellSet& s) {
  std::vector<Count> c(s.ambient()->size(), 0);
  for (auto i : s.members()) c[i] = 1;
  return ConstructibleFunction(s.ambient(), std::move(c));
}

inline ConstructibleFunction add(const ConstructibleFunction& a, const ConstructibleFunction& b) {
  detail::require_same_ambient(a.ambient(), b.ambient());
  std::vector<Count> c(a.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(a[i], b[i]);
  return ConstructibleFunction(a.ambient(), std::move(c));
}

inline ConstructibleFunction operator+(const ConstructibleFunction& a,
                                       const ConstructibleFunction& b) {
  return add(a, b);
}

inline ConstructibleFunction scale(Count k, const ConstructibleFunction& h) {
  std::vector<Count> c(h.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_mul(k, h[i]);
  return ConstructibleFunction(h.ambient(), std::move(c));
}

/// h * 1_S: coefficients outside S are zeroed.
inline ConstructibleFunction restrict_to(const ConstructibleFunction& h, const CellSet& s) {
  detail::require_same_ambient(h.ambient(), s.ambient());
  std::vector<Count> c(h.coeffs().size(), 0);
  for (auto i : s.members()) c[i] = h[i];
  return ConstructibleFunction(h.ambient(), std::move(c));
}

/// Cell-wise Euler integral: sum of c_sigma * (-1)^dim(sigma).
inline Count euler_integral(const ConstructibleFunction& h) {
  Count total = 0;
  const auto& k = *h.ambient();
  for (std::size_t i = 0; i < h.coeffs().size(); ++i)
    if (h[i] != 0) total = signed_accumulate(total, k[i].chi(), h[i]);
  return total;
}

/// Euler integral restricted to the cells of `domain`.
inline Count euler_integral(const ConstructibleFunction& h, const CellSet& domain) {
  detail::require_same_ambient(h.ambient(), domain.ambient());
  Count total = 0;
  const auto& k = *h.ambient();
  for (auto i : domain.members())
    if (h[i] != 0) total = signed_accumulate(total, k[i].chi(), h[i]);
  return total;
}

/// Level-set route for nonnegative h: sum_{s=1}^{max h} chi{h >= s}. Between
/// consecutive attained values the upper set does not change, so each run of
/// equal thresholds is evaluated once and multiplied by its length.
inline Count euler_integral_levelsets(const ConstructibleFunction& h) {
  if (h.min_value() < 0)
    throw DomainError("level-set algorithm requires nonnegative integrand");
  std::vector<Count> values(h.coeffs());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Count total = 0;
  Count previous = 0;
  for (Count v : values) {
    if (v <= 0) continue;
    total = checked_add(total, checked_mul(v - previous, chi(h.upper_set(v))));
    previous = v;
  }
  return total;
}

/// Visits every nonempty subset J of the cover whose intersection is
/// nonempty, in depth-first order of increasing indices. Subsets with empty
/// intersection contribute nothing and are pruned together with their
/// supersets. The callback gets the (0-based) indices and the intersection.
template <class Visitor>
void for_each_cover_intersection(std::span<const CellSet> cover, Visitor&& visit) {
  std::vector<std::size_t> subset;
  auto dfs = [&](auto&& self, std::size_t start, const CellSet& running) -> void {
    for (std::size_t j = start; j < cover.size(); ++j) {
      CellSet next = subset.empty() ? cover[j] : set_intersection(running, cover[j]);
      if (next.empty()) continue;
      subset.push_back(j);
      visit(std::as_const(subset), std::as_const(next));
      self(self, j + 1, next);
      subset.pop_back();
    }
  };
  if (!cover.empty()) dfs(dfs, 0, cover[0]);
}

namespace detail {

inline void validate_cover(const ComplexPtr& ambient, std::span<const CellSet> cover) {
  if (cover.size() > kMaxCoverSize)
    throw DomainError("cover too large for exact inclusion-exclusion");
  for (const auto& piece : cover) require_same_ambient(ambient, piece.ambient());
}

}  // namespace detail

/// Domain-additivity route:
///   sum over nonempty J of (-1)^(|J|+1) * integral of h over the
///   intersection of the pieces in J.
inline Count integrate_over_cover(const ConstructibleFunction& h, std::span<const CellSet> cover) {
  detail::validate_cover(h.ambient(), cover);
  CellSet covered = CellSet::none(h.ambient());
  for (const auto& piece : cover) covered = set_union(covered, piece);
  if (!is_subset(h.support(), covered)) throw DomainError("cover misses support");

  Count total = 0;
  for_each_cover_intersection(cover, [&](const std::vector<std::size_t>& subset,
                                         const CellSet& intersection) {
    total = signed_accumulate(total, parity_sign(subset.size() + 1),
                              euler_integral(h, intersection));
  });
  return total;
}

/// Fiberwise integration along a simplicial map:
///   (p_* h)(tau) = sum over sigma with image tau of h(sigma) (-1)^(dim sigma - dim tau).
/// The fiber of an open sigma over a point of the open image tau is an open
/// convex cell of dimension dim sigma - dim tau.
inline ConstructibleFunction pushforward(const SimplicialMap& p, const ConstructibleFunction& h) {
  if (!same_complex(h.ambient(), p.source()))
    throw DomainError("integrand is not defined on the map's source complex");
  const auto& src = *p.source();
  std::vector<Count> out(p.target()->size(), 0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (h[i] == 0) continue;
    const std::size_t t = p.image_index(i);
    const std::size_t fiber_dim = src[i].dim() - (*p.target())[t].dim();
    out[t] = signed_accumulate(out[t], parity_sign(fiber_dim), h[i]);
  }
  return ConstructibleFunction(p.target(), std::move(out));
}

}  // namespace eulercalc
