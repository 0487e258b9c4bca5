#include <catch_amalgamated.hpp>

#include "eulercalc/cellset.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/fixtures.hpp"
#include "eulercalc/simplicial_map.hpp"
#include "test_support.hpp"

using namespace eulercalc;
using Faces = std::vector<std::vector<Vertex>>;

TEST_CASE("simplex canonical form", "[complex]") {
  Simplex s{2, 0, 1};
  CHECK(s.vertices() == std::vector<Vertex>{0, 1, 2});
  CHECK(s.dim() == 2);
  CHECK(s.to_string() == "[0,1,2]");
  CHECK_THROWS_WITH(Simplex({1, 1}), "degenerate simplex");
  CHECK_THROWS_WITH(Simplex(std::vector<Vertex>{}), "empty simplex");
  CHECK(Simplex::from_vertex_image({3, 1, 3}) == Simplex{1, 3});
  CHECK(Simplex{0, 2}.is_face_of(Simplex{0, 1, 2}));
  CHECK_FALSE(Simplex{0, 3}.is_face_of(Simplex{0, 1, 2}));
}

TEST_CASE("build_complex closes under faces", "[complex]") {
  auto tri = build_complex(Faces{{0, 1, 2}});
  CHECK(tri.size() == 7);
  CHECK(tri.counts_by_dim() == std::vector<Count>{3, 3, 1});

  auto pt = build_complex(Faces{{0}});
  CHECK(pt.size() == 1);

  CHECK_THROWS_WITH(build_complex(Faces{}), "empty complex");
  CHECK_THROWS_WITH(build_complex(Faces{{0, 1, 1}}), "degenerate simplex");
}

TEST_CASE("octahedron face counts match subset enumeration", "[complex][oracle]") {
  const Faces tops{{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5},
                   {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}};
  const auto k = build_complex(tops);
  const auto oracle = testsupport::brute_force_face_counts(tops, 6);
  CHECK(oracle.at(0) == 6);
  CHECK(oracle.at(1) == 12);
  CHECK(oracle.at(2) == 8);
  const auto counts = k.counts_by_dim();
  REQUIRE(counts.size() == 3);
  for (std::size_t d = 0; d < 3; ++d) CHECK(counts[d] == oracle.at(d));
  CHECK(fixtures::octahedron().counts_by_dim() == counts);
}

TEST_CASE("random complexes agree with subset enumeration", "[complex][oracle]") {
  testsupport::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = testsupport::random_complex(rng, 8, 4);
    Faces tops;
    for (const auto& s : k.maximal_simplices()) tops.push_back(s.vertices());
    const auto oracle = testsupport::brute_force_face_counts(tops, 8);
    const auto counts = k.counts_by_dim();
    for (std::size_t d = 0; d < counts.size(); ++d) CHECK(counts[d] == oracle.at(d));
  }
}

TEST_CASE("build_complex is idempotent on its maximal simplices", "[complex][property]") {
  testsupport::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto k = testsupport::random_complex(rng);
    Faces tops;
    for (const auto& s : k.maximal_simplices()) tops.push_back(s.vertices());
    CHECK(build_complex(tops) == k);
  }
}

TEST_CASE("from_closed rejects a set missing a face", "[complex]") {
  CHECK_THROWS_AS(SimplicialComplex::from_closed({Simplex{0, 1}, Simplex{0}}), DomainError);
  CHECK_NOTHROW(SimplicialComplex::from_closed({Simplex{0, 1}, Simplex{0}, Simplex{1}}));
}

TEST_CASE("chi of cell sets", "[cellset]") {
  auto edge = share(build_complex(Faces{{0, 1}}));
  CHECK(chi(CellSet::from_simplices(edge, {Simplex{0}})) == 1);
  const auto open_edge = CellSet::from_simplices(edge, {Simplex{0, 1}});
  CHECK(chi(open_edge) == -1);
  CHECK_FALSE(open_edge.is_closed());
  CHECK(chi(CellSet::none(edge)) == 0);

  auto octa = share(fixtures::octahedron());
  CHECK(CellSet::all(octa).size() == 26);
  CHECK(chi(CellSet::all(octa)) == 2);

  auto circle = share(fixtures::circle());
  CHECK(chi(CellSet::all(circle)) == 0);
}

TEST_CASE("cell set construction errors", "[cellset]") {
  auto edge = share(build_complex(Faces{{0, 1}}));
  CHECK_THROWS_AS(CellSet::from_simplices(edge, {Simplex{2}}), DomainError);
  auto other = share(build_complex(Faces{{0, 2}}));
  CHECK_THROWS_WITH(set_union(CellSet::all(edge), CellSet::all(other)),
                    "incompatible ambient complexes");
}

TEST_CASE("chi is additive over unions", "[cellset][property]") {
  testsupport::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    auto k = share(testsupport::random_complex(rng, 8, 4));
    auto s = testsupport::random_cellset(rng, k);
    auto t = testsupport::random_cellset(rng, k);
    CHECK(chi(set_union(s, t)) == chi(s) + chi(t) - chi(set_intersection(s, t)));
    CHECK(is_subset(set_intersection(s, t), s));
    CHECK(chi(set_difference(s, t)) + chi(set_intersection(s, t)) == chi(s));
  }
}

TEST_CASE("product cell counts", "[cellset]") {
  auto edge = share(build_complex(Faces{{0, 1}}));
  auto pt = share(fixtures::point());
  auto octa = share(fixtures::octahedron());
  auto circle = share(fixtures::circle());

  const auto open = CellSet::from_simplices(edge, {Simplex{0, 1}});
  const auto sq = product(open, open);
  CHECK(sq.cell_counts == std::map<std::size_t, Count>{{2, 1}});
  CHECK(sq.chi() == 1);

  const auto id = product(CellSet::all(pt), CellSet::all(octa));
  CHECK(id.cell_counts == summarize(CellSet::all(octa)).cell_counts);

  const auto c_by_o = product(CellSet::all(circle), CellSet::all(octa));
  CHECK(c_by_o.chi() == 0);
  // (3 + 3t)(6 + 12t + 8t^2)
  CHECK(c_by_o.cell_counts == std::map<std::size_t, Count>{{0, 18}, {1, 54}, {2, 60}, {3, 24}});
}

TEST_CASE("chi is multiplicative over products", "[cellset][property]") {
  testsupport::Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = share(testsupport::random_complex(rng));
    auto b = share(testsupport::random_complex(rng));
    auto s = testsupport::random_cellset(rng, a);
    auto t = testsupport::random_cellset(rng, b);
    const auto p = product(s, t);
    CHECK(p.chi() == chi(s) * chi(t));
    Count cells = 0;
    for (const auto& [d, c] : p.cell_counts) cells += c;
    CHECK(cells == static_cast<Count>(s.size() * t.size()));
  }
}

TEST_CASE("closure_of and as_complex", "[cellset]") {
  auto octa = share(fixtures::octahedron());
  const auto c = CellSet::closure_of(octa, Simplex{0, 1, 2});
  CHECK(c.size() == 7);
  CHECK(c.is_closed());
  CHECK(c.as_complex() == build_complex(Faces{{0, 1, 2}}));
  CHECK(chi(c) == 1);
}

TEST_CASE("simplicial map validation", "[map]") {
  auto sq = share(build_complex(Faces{{0, 1, 2}, {1, 2, 3}}));
  auto edge = share(build_complex(Faces{{0, 1}}));
  CHECK_THROWS_AS(SimplicialMap(sq, edge, {{0, 0}, {1, 0}, {2, 1}}), DomainError);
  CHECK_THROWS_AS(SimplicialMap(sq, edge, {{0, 0}, {1, 0}, {2, 1}, {3, 5}}), DomainError);
  auto pt = share(fixtures::point());
  auto constant = SimplicialMap(sq, pt, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  CHECK(preimage(constant, CellSet::all(pt)) == CellSet::all(sq));
}

TEST_CASE("preimage examples", "[map]") {
  // Square {0,1,2,3} with 0,1 over base vertex 0 and 2,3 over base vertex 1.
  auto sq = share(build_complex(Faces{{0, 1, 2}, {1, 2, 3}}));
  auto edge = share(build_complex(Faces{{0, 1}}));
  SimplicialMap p(sq, edge, {{0, 0}, {1, 0}, {2, 1}, {3, 1}});

  CHECK(preimage(p, CellSet::all(edge)) == CellSet::all(sq));
  const auto fiber = preimage(p, CellSet::from_simplices(edge, {Simplex{0}}));
  CHECK(fiber == CellSet::from_simplices(sq, {Simplex{0}, Simplex{1}, Simplex{0, 1}}));
  CHECK(chi(fiber) == 1);

  CHECK_THROWS_AS(preimage(p, CellSet::all(sq)), DomainError);
}

TEST_CASE("preimage respects intersections and unions", "[map][property]") {
  testsupport::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto src = share(testsupport::random_complex(rng, 8, 3));
    auto p = testsupport::random_map(rng, src);
    auto t1 = testsupport::random_cellset(rng, p.target());
    auto t2 = testsupport::random_cellset(rng, p.target());
    CHECK(preimage(p, set_intersection(t1, t2)) ==
          set_intersection(preimage(p, t1), preimage(p, t2)));
    CHECK(preimage(p, set_union(t1, t2)) == set_union(preimage(p, t1), preimage(p, t2)));
  }
}

TEST_CASE("composition of simplicial maps", "[map]") {
  testsupport::Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    auto src = share(testsupport::random_complex(rng));
    auto p = testsupport::random_map(rng, src);
    auto q = testsupport::random_map(rng, p.target());
    auto qp = compose(q, p);
    for (std::size_t i = 0; i < src->size(); ++i)
      CHECK(qp.image_index(i) == q.image_index(p.image_index(i)));
  }
}

TEST_CASE("fixture surfaces are closed pseudomanifolds", "[fixtures]") {
  for (const auto& named : fixtures::standard_complexes()) {
    const auto& k = named.complex;
    if (k.dimension() != 2 || named.name == "disk" || named.name == "moebius") continue;
    INFO(named.name);
    for (const auto& e : k.simplices()) {
      if (e.dim() != 1) continue;
      int cofaces = 0;
      for (const auto& t : k.simplices())
        if (t.dim() == 2 && e.is_face_of(t)) ++cofaces;
      CHECK(cofaces == 2);
    }
  }
}
