#pragma once

#include <vector>

#include "eulercalc/complex.hpp"

namespace eulercalc {

/// Barycentric subdivision. Vertex i of the result is the barycenter of
/// simplex i of the input; simplices are the chains of the face order.
inline SimplicialComplex barycentric_subdivide(const SimplicialComplex& k) {
  std::vector<Simplex> chains;
  std::vector<Vertex> chain;

  // Extend a chain whose smallest element so far is `top` by every proper
  // face of `top`.
  auto extend = [&](auto&& self, const Simplex& top) -> void {
    chains.push_back(Simplex::from_vertex_image(chain));
    if (top.dim() == 0) return;
    const std::uint32_t full = (1u << top.size()) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      const Simplex face = top.face(mask);
      chain.push_back(static_cast<Vertex>(*k.index_of(face)));
      self(self, face);
      chain.pop_back();
    }
  };

  for (std::size_t i = 0; i < k.size(); ++i) {
    chain.assign(1, static_cast<Vertex>(i));
    extend(extend, k[i]);
  }
  return make_complex_unchecked(std::move(chains));
}

inline SimplicialComplex barycentric_subdivide(const SimplicialComplex& k, unsigned times) {
  SimplicialComplex out = k;
  for (unsigned i = 0; i < times; ++i) out = barycentric_subdivide(out);
  return out;
}

}  // namespace eulercalc
