#pragma once

// Standard triangulations and simplicial bundles.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eulercalc/bundles.hpp"
#include "eulercalc/cellset.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/simplicial_map.hpp"

namespace eulercalc::fixtures {

using Faces = std::vector<std::vector<Vertex>>;

inline SimplicialComplex point() { return build_complex(Faces{{0}}); }

inline SimplicialComplex interval() { return build_complex(Faces{{0, 1}}); }

/// Boundary of a triangle.
inline SimplicialComplex circle() { return build_complex(Faces{{0, 1}, {1, 2}, {0, 2}}); }

/// Closed cycle on n >= 3 vertices.
inline SimplicialComplex cycle(Vertex n) {
  Faces f;
  for (Vertex i = 0; i < n; ++i) f.push_back({i, (i + 1) % n});
  return build_complex(f);
}

inline SimplicialComplex disk() { return build_complex(Faces{{0, 1, 2}}); }

/// Boundary of the octahedron: poles 0, 5 and equator 1-2-3-4.
inline SimplicialComplex octahedron() {
  return build_complex(Faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4},
                             {1, 2, 5}, {2, 3, 5}, {3, 4, 5}, {1, 4, 5}});
}

/// Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline SimplicialComplex torus7() {
  Faces f;
  for (Vertex i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return build_complex(f);
}

/// Five-vertex Mobius band: triangles {i, i+1, i+2} mod 5.
inline SimplicialComplex moebius5() {
  Faces f;
  for (Vertex i = 0; i < 5; ++i) f.push_back({i, (i + 1) % 5, (i + 2) % 5});
  return build_complex(f);
}

/// Six-vertex real projective plane.
inline SimplicialComplex projective_plane6() {
  return build_complex(Faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                             {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

/// Quotient of an a-by-b grid of squares, each split along its diagonal.
/// Columns wrap plainly; rows wrap plainly (torus) or with a flip (Klein).
inline SimplicialComplex grid_surface(Vertex a, Vertex b, bool flip_rows) {
  auto v = [&](Vertex i, Vertex j) -> Vertex {
    i %= a;
    if (j == b) {
      j = 0;
      if (flip_rows) i = (a - i) % a;
    }
    return j * a + i;
  };
  Faces f;
  for (Vertex j = 0; j < b; ++j)
    for (Vertex i = 0; i < a; ++i) {
      f.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      f.push_back({v(i, j), v(i, j + 1), v(i + 1, j + 1)});
    }
  return build_complex(f);
}

inline SimplicialComplex klein_bottle() { return grid_surface(4, 4, true); }

struct NamedComplex {
  std::string name;
  SimplicialComplex complex;
  std::vector<Count> betti;  ///< standard rational Betti numbers
};

/// Closed complexes with their known Betti numbers.
inline std::vector<NamedComplex> standard_complexes() {
  return {
      {"point", point(), {1}},
      {"interval", interval(), {1, 0}},
      {"circle", circle(), {1, 1}},
      {"disk", disk(), {1, 0, 0}},
      {"octahedron", octahedron(), {1, 0, 1}},
      {"torus", torus7(), {1, 2, 1}},
      {"moebius", moebius5(), {1, 1, 0}},
      {"projective_plane", projective_plane6(), {1, 0, 0}},
      {"klein_bottle", klein_bottle(), {1, 1, 0}},
  };
}

// ---------------------------------------------------------------------------
// Bundles over a circle: the total space is a band of n squares between the
// fiber columns over base vertices i and i+1. The fiber is an interval
// (q vertices in a path) or a q-cycle. When crossing from
// column n-1 back to column 0 the fiber is optionally reflected.
// ---------------------------------------------------------------------------

struct CircleBundle {
  ComplexPtr total;
  ComplexPtr base;
  std::map<Vertex, Vertex> vertex_map;
  Count fiber_chi;
};

inline CircleBundle circle_bundle(Vertex n, Vertex fiber_vertices, bool fiber_is_cycle,
                                  bool twisted) {
  const Vertex q = fiber_vertices;
  auto v = [&](Vertex i, Vertex k) -> Vertex {
    if (i == n) {
      i = 0;
      if (twisted) k = fiber_is_cycle ? (q - k) % q : (q - 1 - k);
    }
    return i * q + k;
  };
  Faces f;
  const Vertex levels = fiber_is_cycle ? q : q - 1;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex k = 0; k < levels; ++k) {
      const Vertex k1 = (k + 1) % q;
      f.push_back({v(i, k), v(i + 1, k), v(i + 1, k1)});
      f.push_back({v(i, k), v(i, k1), v(i + 1, k1)});
    }
  CircleBundle out;
  out.total = share(build_complex(f));
  out.base = share(cycle(n));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex k = 0; k < q; ++k) out.vertex_map[i * q + k] = i;
  out.fiber_chi = fiber_is_cycle ? 0 : 1;
  return out;
}

/// Two closed arcs covering the n-cycle, meeting in vertices 0 and n/2.
inline std::vector<CellSet> two_arc_cover(const ComplexPtr& cycle_complex, Vertex n) {
  const Vertex half = n / 2;
  std::vector<Simplex> first, second;
  for (Vertex i = 0; i <= half; ++i) first.push_back(Simplex{i});
  for (Vertex i = 0; i < half; ++i) first.push_back(Simplex{i, i + 1});
  for (Vertex i = half; i < n; ++i) second.push_back(Simplex{i});
  second.push_back(Simplex{0});
  for (Vertex i = half; i < n; ++i) second.push_back(Simplex{i, (i + 1) % n});
  return {CellSet::from_simplices(cycle_complex, first),
          CellSet::from_simplices(cycle_complex, second)};
}

struct NamedBundle {
  std::string name;
  BundleSpec spec;
};

inline BundleSpec make_circle_bundle_spec(Vertex n, Vertex fiber_vertices, bool fiber_is_cycle,
                                          bool twisted) {
  auto b = circle_bundle(n, fiber_vertices, fiber_is_cycle, twisted);
  SimplicialMap p(b.total, b.base, b.vertex_map);
  return BundleSpec(std::move(p), two_arc_cover(b.base, n), b.fiber_chi);
}

/// Octahedron over a point.
inline BundleSpec trivial_bundle_over_point() {
  auto total = share(octahedron());
  auto base = share(point());
  std::map<Vertex, Vertex> m;
  for (auto v : total->vertices()) m[v] = 0;
  return BundleSpec(SimplicialMap(total, base, std::move(m)), {CellSet::all(base)}, 2,
                    CellSet::all(total));
}

inline std::vector<NamedBundle> standard_bundles() {
  return {
      {"cylinder", make_circle_bundle_spec(4, 2, false, false)},
      {"moebius_band", make_circle_bundle_spec(4, 2, false, true)},
      {"torus", make_circle_bundle_spec(4, 3, true, false)},
      {"klein_bottle", make_circle_bundle_spec(4, 3, true, true)},
      {"octahedron_over_point", trivial_bundle_over_point()},
  };
}

}  // namespace eulercalc::fixtures
