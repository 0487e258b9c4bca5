#pragma once

#include <map>
#include <string>
#include <vector>

#include "eulercalc/cellset.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/error.hpp"

namespace eulercalc {

/// Vertex map between complexes carrying every source simplex onto a target
/// simplex. Collapsing (degenerate) images are allowed. The image of each
/// source simplex is resolved once at construction.
class SimplicialMap {
public:
  SimplicialMap(ComplexPtr source, ComplexPtr target, std::map<Vertex, Vertex> vertex_map)
      : source_(std::move(source)), target_(std::move(target)),
        vertex_map_(std::move(vertex_map)) {
    if (!source_ || !target_) throw DomainError("simplicial map needs source and target");
    image_.reserve(source_->size());
    for (const auto& s : source_->simplices()) {
      std::vector<Vertex> img;
      img.reserve(s.size());
      for (auto v : s.vertices()) {
        auto it = vertex_map_.find(v);
        if (it == vertex_map_.end())
          throw DomainError("vertex map is not defined on source vertex " + std::to_string(v));
        img.push_back(it->second);
      }
      const Simplex image = Simplex::from_vertex_image(std::move(img));
      auto idx = target_->index_of(image);
      if (!idx)
        throw DomainError("image of " + s.to_string() + " is " + image.to_string() +
                          ", which is not a simplex of the target");
      image_.push_back(*idx);
    }
  }

  static SimplicialMap identity(ComplexPtr k) {
    std::map<Vertex, Vertex> m;
    for (auto v : k->vertices()) m[v] = v;
    return SimplicialMap(k, k, std::move(m));
  }

  const ComplexPtr& source() const noexcept { return source_; }
  const ComplexPtr& target() const noexcept { return target_; }
  const std::map<Vertex, Vertex>& vertex_map() const noexcept { return vertex_map_; }

  /// Target index of the image of source simplex i.
  std::size_t image_index(std::size_t source_index) const { return image_[source_index]; }
  const Simplex& image(std::size_t source_index) const { return (*target_)[image_[source_index]]; }

private:
  ComplexPtr source_;
  ComplexPtr target_;
  std::map<Vertex, Vertex> vertex_map_;
  std::vector<std::size_t> image_;
};

/// q after p.
inline SimplicialMap compose(const SimplicialMap& q, const SimplicialMap& p) {
  detail::require_same_ambient(p.target(), q.source());
  std::map<Vertex, Vertex> m;
  for (const auto& [v, w] : p.vertex_map()) {
    auto it = q.vertex_map().find(w);
    if (it != q.vertex_map().end()) m[v] = it->second;
  }
  return SimplicialMap(p.source(), q.target(), std::move(m));
}

/// { sigma in source : image(sigma) in t }. Exact geometric preimage because a
/// simplicial map sends each open simplex onto its open image simplex.
inline CellSet preimage(const SimplicialMap& p, const CellSet& t) {
  if (!same_complex(t.ambient(), p.target()))
    throw DomainError("cell set is not a subset of the map's target complex");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.source()->size(); ++i)
    if (t.contains_index(p.image_index(i))) out.push_back(i);
  return CellSet(p.source(), std::move(out));
}

}  // namespace eulercalc
