#pragma once

// Finite abstract simplicial complexes. A Simplex names an OPEN simplex; the
// closure relation lives in the ambient complex.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eulercalc/checked.hpp"
#include "eulercalc/error.hpp"

namespace eulercalc {

using Vertex = std::uint32_t;

/// Hard limit on simplex dimension for face enumeration (2^(d+1) subsets).
inline constexpr std::size_t kMaxSimplexDim = 24;

class Simplex {
public:
  Simplex() = default;

  /// Accepts vertices in any order; sorts them. Throws on duplicates.
  explicit Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw DomainError("empty simplex");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw DomainError("degenerate simplex");
  }

  Simplex(std::initializer_list<Vertex> vertices)
      : Simplex(std::vector<Vertex>(vertices)) {}

  /// Deduplicating constructor used for images under vertex maps.
  static Simplex from_vertex_image(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return Simplex(std::move(vertices));
  }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t dim() const noexcept { return vertices_.size() - 1; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  /// (-1)^dim, the Euler characteristic of the open simplex.
  Count chi() const noexcept { return parity_sign(dim()); }

  /// The face obtained by dropping the vertex at position i.
  Simplex facet(std::size_t i) const {
    std::vector<Vertex> v;
    v.reserve(vertices_.size() - 1);
    for (std::size_t k = 0; k < vertices_.size(); ++k)
      if (k != i) v.push_back(vertices_[k]);
    Simplex s;
    s.vertices_ = std::move(v);
    return s;
  }

  /// Face selected by a nonzero bitmask over vertex positions.
  Simplex face(std::uint32_t mask) const {
    Simplex s;
    for (std::size_t k = 0; k < vertices_.size(); ++k)
      if (mask & (1u << k)) s.vertices_.push_back(vertices_[k]);
    return s;
  }

  bool is_face_of(const Simplex& other) const {
    return std::includes(other.vertices_.begin(), other.vertices_.end(),
                         vertices_.begin(), vertices_.end());
  }

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(vertices_[i]);
    }
    return out + "]";
  }

private:
  std::vector<Vertex> vertices_;
};

/// Face-closed finite set of simplices, stored sorted (lexicographic on the
/// vertex tuple). Indices into simplices() are stable for the object's life.
class SimplicialComplex {
public:
  SimplicialComplex() = default;

  /// Takes an arbitrary list of simplices and validates face closure.
  static SimplicialComplex from_closed(std::vector<Simplex> simplices) {
    SimplicialComplex k(std::move(simplices), Trusted{});
    for (const auto& s : k.simplices_) {
      if (s.dim() == 0) continue;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (!k.contains(s.facet(i)))
          throw DomainError("simplex list is not closed under faces: missing face of " +
                            s.to_string());
    }
    return k;
  }

  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return simplices_.empty(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
    if (it == simplices_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - simplices_.begin());
  }

  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  /// Highest simplex dimension; -1 for the empty complex.
  int dimension() const noexcept {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.dim()));
    return d;
  }

  /// c_i for i = 0..dimension().
  std::vector<Count> counts_by_dim() const {
    std::vector<Count> counts(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& s : simplices_) ++counts[s.dim()];
    return counts;
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (const auto& s : simplices_)
      if (s.dim() == 0) out.push_back(s[0]);
    return out;
  }

  /// Simplices that are not a proper face of another simplex, sorted.
  std::vector<Simplex> maximal_simplices() const {
    std::vector<bool> is_face(simplices_.size(), false);
    for (const auto& s : simplices_) {
      if (s.dim() == 0) continue;
      for (std::size_t i = 0; i < s.size(); ++i) is_face[*index_of(s.facet(i))] = true;
    }
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i)
      if (!is_face[i]) out.push_back(simplices_[i]);
    return out;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_;
  }

private:
  struct Trusted {};
  template <class C>
  friend SimplicialComplex make_complex_unchecked(C&& simplices);

  SimplicialComplex(std::vector<Simplex> simplices, Trusted) : simplices_(std::move(simplices)) {
    std::sort(simplices_.begin(), simplices_.end());
    simplices_.erase(std::unique(simplices_.begin(), simplices_.end()), simplices_.end());
  }

  std::vector<Simplex> simplices_;
};

/// Shared immutable handle; CellSets and functions refer to their ambient
/// complex through it.
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// For generators that produce face-closed lists by construction.
template <class C>
SimplicialComplex make_complex_unchecked(C&& simplices) {
  return SimplicialComplex(std::vector<Simplex>(std::forward<C>(simplices)),
                           SimplicialComplex::Trusted{});
}

/// Face closure of the given simplices.
inline SimplicialComplex build_complex(std::span<const std::vector<Vertex>> maximal_simplices) {
  if (maximal_simplices.empty()) throw DomainError("empty complex");
  std::vector<Simplex> all;
  for (const auto& raw : maximal_simplices) {
    Simplex top(raw);
    if (top.dim() > kMaxSimplexDim)
      throw DomainError("simplex dimension exceeds " + std::to_string(kMaxSimplexDim));
    const std::uint32_t full = (1u << top.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) all.push_back(top.face(mask));
  }
  return make_complex_unchecked(std::move(all));
}

inline SimplicialComplex build_complex(const std::vector<std::vector<Vertex>>& maximal) {
  return build_complex(std::span<const std::vector<Vertex>>(maximal));
}

inline ComplexPtr share(SimplicialComplex k) {
  return std::make_shared<const SimplicialComplex>(std::move(k));
}

/// Pointer identity or structural equality.
inline bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Euler characteristic of a whole complex.
inline Count chi(const SimplicialComplex& k) {
  Count total = 0;
  for (const auto& s : k.simplices()) total = checked_add(total, s.chi());
  return total;
}

}  // namespace eulercalc
