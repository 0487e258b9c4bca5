#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "eulercalc/fixtures.hpp"
#include "eulercalc/io.hpp"
#include "eulercalc/scene.hpp"
#include "test_support.hpp"

using namespace eulercalc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("eulercalc_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

const fs::path kData = EULERCALC_DATA_DIR;

}  // namespace

TEST_CASE("complex JSON round trip", "[io]") {
  testsupport::Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = testsupport::random_complex(rng);
    io::Reader reader;
    const auto back = reader.complex(io::parse_json(io::to_json(k).dump(), "mem"), "mem", "", ".");
    CHECK(*back == k);
  }
}

TEST_CASE("cell set and function round trip", "[io]") {
  TempDir dir;
  testsupport::Rng rng(102);
  const auto k = share(fixtures::octahedron());
  const auto kpath = dir.write("k.json", io::to_json(*k).dump());
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testsupport::random_cellset(rng, k);
    io::Json js = io::to_json(s);
    js["complex"] = "k.json";
    io::Reader reader;
    const auto s2 = reader.cellset(js, "mem", "", dir.path);
    CHECK(s2.members() == s.members());
    CHECK(*s2.ambient() == *k);

    const auto h = testsupport::random_function(rng, k, -4, 4);
    io::Json jh = io::to_json(h);
    jh["complex"] = "k.json";
    const auto h2 = reader.function(jh, "mem", dir.path);
    CHECK(h2.coeffs() == h.coeffs());
  }
  (void)kpath;
}

TEST_CASE("reading the data fixtures", "[io]") {
  io::Reader reader;
  CHECK(chi(*reader.complex_file(kData / "octahedron.json")) == 2);
  CHECK(chi(*reader.complex_file(kData / "torus.json")) == 0);
  CHECK(chi(reader.cellset_or_complex_file(kData / "open_edge.json")) == -1);
  const auto spec = reader.bundle_file(kData / "moebius_bundle.json");
  CHECK(bundle_chi_via_inclusion_exclusion(spec).value == 0);
  const auto sc = io::read_scene(kData / "three_disks.json");
  CHECK(sc.shapes.size() == 3);
  CHECK(*enumerate_targets(rasterize_shapes(sc.shapes, sc.width, sc.height), 1).count == 3);
}

TEST_CASE("schema errors carry file and location", "[io]") {
  TempDir dir;
  io::Reader reader;
  const auto bad_json = dir.write("bad.json", "{\n  \"maximal_simplices\": [[0,1],\n}");
  CHECK_THROWS_AS(reader.complex_file(bad_json), FormatError);
  try {
    reader.complex_file(bad_json);
  } catch (const FormatError& e) {
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("bad.json"));
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("line 3"));
  }
  const auto degenerate = dir.write("deg.json", R"({"maximal_simplices": [[0,1],[2,2]]})");
  CHECK_THROWS_WITH(reader.complex_file(degenerate),
                    Catch::Matchers::ContainsSubstring("deg.json") &&
                        Catch::Matchers::ContainsSubstring("degenerate simplex"));
  const auto missing = dir.write("missing.json", R"({"simplices": [[0]]})");
  CHECK_THROWS_AS(reader.cellset_or_complex_file(missing), FormatError);
  const auto empty = dir.write("empty.json", R"({"maximal_simplices": []})");
  CHECK_THROWS_WITH(reader.complex_file(empty), Catch::Matchers::ContainsSubstring("empty complex"));
  const auto negative = dir.write("neg.json", R"({"maximal_simplices": [[0,-1]]})");
  CHECK_THROWS_WITH(reader.complex_file(negative),
                    Catch::Matchers::ContainsSubstring("/maximal_simplices/0"));
  CHECK_THROWS_AS(reader.complex_file(dir.path / "nope.json"), FormatError);
  const auto outside = dir.write("outside.json",
                                 R"({"complex": {"maximal_simplices": [[0,1]]}, "simplices": [[2]]})");
  CHECK_THROWS_AS(reader.cellset_or_complex_file(outside), FormatError);
}

TEST_CASE("shared complex references resolve to one ambient", "[io]") {
  TempDir dir;
  dir.write("k.json", io::to_json(fixtures::octahedron()).dump());
  const auto f = dir.write("f.json", R"({"complex": "k.json", "coeffs": [{"simplex": [0], "c": 2}]})");
  const auto c = dir.write("c.json",
                           R"({"pieces": [{"complex": "k.json", "simplices": [[0]]}, [[0,2]]]})");
  io::Reader reader;
  const auto h = reader.function_file(f);
  const auto cover = reader.cover_file(c, h.ambient());
  CHECK(cover.size() == 2);
  CHECK(cover[0].ambient() == h.ambient());
  CHECK(cover[1].ambient() == h.ambient());
}

TEST_CASE("CSV and PGM rasters", "[io]") {
  const Raster r(3, 2, {0, 1, 2, 3, 4, 5});
  CHECK(io::to_csv(r) == "0,1,2\n3,4,5\n");
  CHECK(io::parse_csv_raster(io::to_csv(r), "mem") == r);
  CHECK(io::parse_pgm_raster(io::to_pgm(r), "mem") == r);
  CHECK(io::parse_pgm_raster("P2\n# comment\n3 2\n5\n0 1 2\n3 4 5\n", "mem") == r);

  CHECK_THROWS_WITH(io::parse_csv_raster("1,2\n3,x\n", "f.csv"), "f.csv:2: \"x\" is not an integer");
  CHECK_THROWS_WITH(io::parse_csv_raster("1,2\n3\n", "f.csv"),
                    Catch::Matchers::ContainsSubstring("f.csv:2: row has 1 columns"));
  CHECK_THROWS_WITH(io::parse_csv_raster("1,-2\n", "f.csv"),
                    Catch::Matchers::ContainsSubstring("negative sensor count"));
  CHECK_THROWS_AS(io::parse_csv_raster("", "f.csv"), FormatError);
  CHECK_THROWS_AS(io::parse_pgm_raster("P2\n2 2\n1\n0 1 2 1\n", "f.pgm"), FormatError);
  CHECK_THROWS_AS(io::parse_pgm_raster("P2\n2 2\n1\n0 1 1\n", "f.pgm"), FormatError);
}

TEST_CASE("scene JSON round trip", "[io]") {
  io::Scene sc;
  sc.width = 128;
  sc.height = 96;
  sc.shapes = random_scene(3, 128, 96, 8);
  sc.shapes.push_back(ShapeSpec::annulus(60, 40, 3, 7));
  const auto back = io::parse_scene(io::parse_json(io::to_json(sc).dump(), "mem"), "mem");
  CHECK(back.width == sc.width);
  CHECK(back.height == sc.height);
  CHECK(back.shapes == sc.shapes);
  CHECK_THROWS_AS(io::parse_scene(io::parse_json(R"({"width":4,"height":4,"shapes":[{"kind":"blob"}]})", "m"), "m"),
                  FormatError);
}

TEST_CASE("enumerate JSON report", "[io]") {
  const auto t = enumerate_targets(Raster(2, 1, {1, 0}), 1);
  const auto j = io::to_json(t);
  CHECK(j["integral"] == 1);
  CHECK(j["N"] == 1);
  CHECK(j["count"] == 1);
  CHECK(j["consistent"] == true);
  const auto bad = io::to_json(enumerate_targets(Raster(2, 1, {1, 0}), 2));
  CHECK(bad["count"].is_null());
  CHECK(bad["consistent"] == false);
  CHECK(bad["rational"] == "1/2");
}
