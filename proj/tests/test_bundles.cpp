#include <catch_amalgamated.hpp>

#include "eulercalc/bundles.hpp"
#include "eulercalc/fixtures.hpp"
#include "eulercalc/homology.hpp"
#include "test_support.hpp"

using namespace eulercalc;
using Faces = std::vector<std::vector<Vertex>>;

namespace {

// Splits one cover piece into two cell sets whose union is the piece.
std::vector<CellSet> refine(testsupport::Rng& rng, const std::vector<CellSet>& cover) {
  const auto j = static_cast<std::size_t>(testsupport::uniform(rng, 0, static_cast<std::int64_t>(cover.size()) - 1));
  std::vector<std::size_t> a, b;
  for (auto i : cover[j].members()) {
    const auto where = testsupport::uniform(rng, 0, 2);
    if (where != 1) a.push_back(i);
    if (where != 0) b.push_back(i);
  }
  std::vector<CellSet> out;
  for (std::size_t k = 0; k < cover.size(); ++k)
    if (k != j) out.push_back(cover[k]);
  out.emplace_back(cover[j].ambient(), a);
  out.emplace_back(cover[j].ambient(), b);
  return out;
}

}  // namespace

TEST_CASE("fixture bundles satisfy multiplicativity", "[bundles]") {
  for (const auto& [name, spec] : fixtures::standard_bundles()) {
    INFO(name);
    const auto proof = bundle_chi_via_inclusion_exclusion(spec);
    CHECK(proof.value == chi(*spec.total()));
    CHECK(proof.value == chi(*spec.base()) * spec.fiber_chi());
    CHECK(proof.recomputed_sum() == proof.value);
    REQUIRE(proof.chain.size() == 6);
    for (const auto& step : proof.chain) CHECK(step.value == proof.value);
    CHECK(check_local_triviality_chi(spec).all_pass());
  }
}

TEST_CASE("bundle example values", "[bundles]") {
  const auto bundles = fixtures::standard_bundles();
  auto value = [&](const std::string& name) {
    for (const auto& b : bundles)
      if (b.name == name) return bundle_chi_via_inclusion_exclusion(b.spec).value;
    FAIL("missing fixture " << name);
    return Count{-999};
  };
  CHECK(value("cylinder") == 0);
  CHECK(value("moebius_band") == 0);
  CHECK(value("klein_bottle") == 0);
  CHECK(value("torus") == 0);
  CHECK(value("octahedron_over_point") == 2);
}

TEST_CASE("bundle total spaces have the expected topology", "[bundles][oracle]") {
  auto betti = [](Vertex n, Vertex q, bool cyc, bool tw) {
    return testsupport::betti_oracle(*fixtures::circle_bundle(n, q, cyc, tw).total);
  };
  CHECK(betti(4, 2, false, false) == std::vector<Count>{1, 1, 0});  // cylinder
  CHECK(betti(4, 2, false, true) == std::vector<Count>{1, 1, 0});   // band
  CHECK(betti(4, 3, true, false) == std::vector<Count>{1, 2, 1});   // torus
  CHECK(betti(4, 3, true, true) == std::vector<Count>{1, 1, 0});    // Klein bottle
  // Orientable and non-orientable bands differ in their boundary: one
  // boundary circle wraps twice.
  auto boundary_edges = [](const SimplicialComplex& k) {
    Count n = 0;
    for (const auto& e : k.simplices()) {
      if (e.dim() != 1) continue;
      int cofaces = 0;
      for (const auto& t : k.simplices())
        if (t.dim() == 2 && e.is_face_of(t)) ++cofaces;
      n += cofaces == 1;
    }
    return n;
  };
  const auto cyl = fixtures::circle_bundle(4, 2, false, false).total;
  const auto band = fixtures::circle_bundle(4, 2, false, true).total;
  CHECK(boundary_edges(*cyl) == 8);
  CHECK(boundary_edges(*band) == 8);
  std::vector<std::vector<Vertex>> bd;
  for (const auto& e : band->simplices()) {
    if (e.dim() != 1) continue;
    int cofaces = 0;
    for (const auto& t : band->simplices())
      if (t.dim() == 2 && e.is_face_of(t)) ++cofaces;
    if (cofaces == 1) bd.push_back(e.vertices());
  }
  CHECK(betti_numbers(build_complex(bd)) == std::vector<Count>{1, 1});
}

TEST_CASE("trace rows and ordering", "[bundles]") {
  const auto spec = fixtures::make_circle_bundle_spec(4, 2, false, true);
  const auto proof = bundle_chi_via_inclusion_exclusion(spec);
  REQUIRE(proof.rows.size() == 3);
  CHECK(proof.rows[0].subset == std::vector<std::size_t>{1});
  CHECK(proof.rows[1].subset == std::vector<std::size_t>{2});
  CHECK(proof.rows[2].subset == std::vector<std::size_t>{1, 2});
  CHECK(proof.rows[2].sign == -1);
  CHECK(proof.rows[0].chi_base_piece == 1);
  CHECK(proof.rows[2].chi_base_piece == 2);  // two points
  for (const auto& r : proof.rows) {
    CHECK(r.chi_preimage == r.chi_base_piece * spec.fiber_chi());
    CHECK(r.chi_preimage == r.chi_preimage_intersection);
    CHECK(r.chi_product == r.chi_preimage);
  }
}

TEST_CASE("local triviality report", "[bundles]") {
  const auto good = fixtures::make_circle_bundle_spec(6, 3, false, true);
  const auto report = check_local_triviality_chi(good);
  CHECK(report.all_pass());
  CHECK(report.failures() == 0);
  CHECK(report.rows.size() == 3);

  // Wrong fiber chi: every row with nonzero base chi fails.
  auto b = fixtures::circle_bundle(6, 3, false, true);
  BundleSpec wrong(SimplicialMap(b.total, b.base, b.vertex_map), fixtures::two_arc_cover(b.base, 6), 2);
  const auto bad = check_local_triviality_chi(wrong);
  CHECK_FALSE(bad.all_pass());
  for (const auto& row : bad.rows) CHECK(row.pass == (row.chi_base_piece == 0));
  CHECK(bad.failures() == bad.rows.size());
  try {
    bundle_chi_via_inclusion_exclusion(wrong);
    FAIL("expected LocalTrivialityError");
  } catch (const LocalTrivialityError& e) {
    CHECK(e.report().failures() == bad.failures());
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("local triviality"));
  }
}

TEST_CASE("a non-bundle is caught", "[bundles]") {
  // Fibers vary: an interval over base vertex 0, two points over vertex 1.
  auto total = share(build_complex(Faces{{0, 1}, {1, 2}, {3}}));
  auto base = share(build_complex(Faces{{0, 1}}));
  SimplicialMap p(total, base, {{0, 0}, {1, 0}, {2, 1}, {3, 1}});
  BundleSpec spec(p, {CellSet::all(base)}, 1);
  CHECK_FALSE(check_local_triviality_chi(spec).all_pass());
  CHECK_THROWS_AS(bundle_chi_via_inclusion_exclusion(spec), LocalTrivialityError);
}

TEST_CASE("bundle spec validation", "[bundles]") {
  auto b = fixtures::circle_bundle(4, 2, false, false);
  SimplicialMap p(b.total, b.base, b.vertex_map);
  CHECK_THROWS_WITH(BundleSpec(p, {}, 1), "bundle cover must have at least one piece");
  const auto arcs = fixtures::two_arc_cover(b.base, 4);
  CHECK_THROWS_WITH(BundleSpec(p, {arcs[0]}, 1), "cover pieces do not exhaust the base complex");
  CHECK_THROWS_AS(BundleSpec(p, {CellSet::all(b.total)}, 1), DomainError);
  std::vector<CellSet> many(21, CellSet::all(b.base));
  CHECK_THROWS_WITH(BundleSpec(p, many, 1), "cover too large for exact inclusion-exclusion");

  auto octa = share(fixtures::octahedron());
  auto pt = share(fixtures::point());
  std::map<Vertex, Vertex> m;
  for (auto v : octa->vertices()) m[v] = 0;
  CHECK_THROWS_AS(BundleSpec(SimplicialMap(octa, pt, m), {CellSet::all(pt)}, 1, CellSet::all(octa)),
                  DomainError);
}

TEST_CASE("trivial product bundles pass with any cover", "[bundles][property]") {
  testsupport::Rng rng(91);
  // Base: a random complex. Total: base x {0,1} as two disjoint copies.
  for (int trial = 0; trial < 40; ++trial) {
    const auto base_k = testsupport::random_complex(rng, 6, 2, 4);
    Faces tops;
    std::map<Vertex, Vertex> m;
    for (const auto& s : base_k.maximal_simplices()) {
      tops.push_back(s.vertices());
      std::vector<Vertex> copy;
      for (auto v : s.vertices()) copy.push_back(v + 100);
      tops.push_back(copy);
    }
    auto total = share(build_complex(tops));
    auto base = share(base_k);
    for (auto v : total->vertices()) m[v] = v >= 100 ? v - 100 : v;
    const auto m_pieces = static_cast<std::size_t>(testsupport::uniform(rng, 1, 5));
    auto cover = testsupport::random_cover(rng, base, CellSet::all(base), m_pieces);
    BundleSpec spec(SimplicialMap(total, base, m), cover, 2);
    CHECK(check_local_triviality_chi(spec).all_pass());
    const auto proof = bundle_chi_via_inclusion_exclusion(spec);
    CHECK(proof.value == 2 * chi(base_k));
    CHECK(proof.recomputed_sum() == proof.value);
  }
}

TEST_CASE("cover refinement leaves the result unchanged", "[bundles][property]") {
  testsupport::Rng rng(92);
  for (const auto& [name, spec] : fixtures::standard_bundles()) {
    INFO(name);
    const auto expected = bundle_chi_via_inclusion_exclusion(spec).value;
    auto cover = spec.cover();
    for (int round = 0; round < 4; ++round) {
      cover = refine(rng, cover);
      BundleSpec refined(spec.projection(), cover, spec.fiber_chi(), spec.fiber());
      const auto proof = bundle_chi_via_inclusion_exclusion(refined);
      CHECK(proof.value == expected);
      CHECK(proof.recomputed_sum() == expected);
    }
  }
}

TEST_CASE("Riemann-Hurwitz", "[bundles]") {
  CHECK(riemann_hurwitz({2, 2, {2, 2}}) == 2);
  CHECK(riemann_hurwitz({2, 0, {}}) == 0);
  CHECK(riemann_hurwitz({2, 2, {2, 2, 2, 2, 2, 2}}) == -2);
  CHECK_THROWS_WITH(riemann_hurwitz({2, 2, {1}}), "trivial ramification index must be omitted");
  CHECK_THROWS_AS(riemann_hurwitz({2, 2, {3}}), DomainError);
  CHECK_THROWS_AS(riemann_hurwitz({0, 2, {}}), DomainError);
}

TEST_CASE("Riemann-Hurwitz monotonicity and linearity", "[bundles][property]") {
  testsupport::Rng rng(93);
  for (int trial = 0; trial < 300; ++trial) {
    RamificationData d;
    d.sheets = testsupport::uniform(rng, 1, 9);
    d.base_chi = testsupport::uniform(rng, -10, 2);
    if (d.sheets >= 2)
      for (auto k = testsupport::uniform(rng, 0, 6); k > 0; --k) d.indices.push_back(testsupport::uniform(rng, 2, d.sheets));
    const Count base = riemann_hurwitz(d);
    auto bumped = d;
    bumped.base_chi += 1;
    CHECK(riemann_hurwitz(bumped) - base == d.sheets);
    if (d.sheets >= 2) {
      auto more = d;
      more.indices.push_back(testsupport::uniform(rng, 2, d.sheets));
      CHECK(riemann_hurwitz(more) < base);
      CHECK(base - riemann_hurwitz(more) == more.indices.back() - 1);
    }
  }
}
