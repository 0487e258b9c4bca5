#pragma once

// File formats: JSON for complexes, cell sets, maps, constructible functions,
// covers, bundles and scenes; CSV and plain PGM (P2) for rasters.
//
// A complex may appear inline ({"maximal_simplices": [...]}) or as a string
// path, resolved relative to the directory of the file that mentions it.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulercalc/bundles.hpp"
#include "eulercalc/cellset.hpp"
#include "eulercalc/complex.hpp"
#include "eulercalc/constructible.hpp"
#include "eulercalc/error.hpp"
#include "eulercalc/raster.hpp"
#include "eulercalc/simplicial_map.hpp"

namespace eulercalc::io {

using Json = nlohmann::json;
namespace fs = std::filesystem;

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": " + e.what());
  }
}

inline Json read_json(const fs::path& path) { return parse_json(read_text(path), path.string()); }

// --- scalar accessors with schema errors ------------------------------------

inline FormatError schema_error(const std::string& origin, const std::string& where,
                                const std::string& what) {
  return FormatError(origin + ": " + (where.empty() ? std::string() : where + ": ") + what);
}

inline const Json& member(const Json& j, const char* key, const std::string& origin,
                          const std::string& where) {
  if (!j.is_object()) throw schema_error(origin, where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(origin, where, std::string("missing key \"") + key + "\"");
  return *it;
}

inline Count as_count(const Json& j, const std::string& origin, const std::string& where) {
  if (j.is_number_unsigned()) {
    const auto u = j.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<Count>::max()))
      throw schema_error(origin, where, "integer out of 64-bit range");
    return static_cast<Count>(u);
  }
  if (j.is_number_integer()) return j.get<std::int64_t>();
  throw schema_error(origin, where, "expected an integer (or value out of 64-bit range)");
}

inline Vertex as_vertex(const Json& j, const std::string& origin, const std::string& where) {
  const Count c = as_count(j, origin, where);
  if (c < 0 || c > std::numeric_limits<Vertex>::max())
    throw schema_error(origin, where, "vertex ids must be nonnegative 32-bit integers");
  return static_cast<Vertex>(c);
}

inline std::vector<Vertex> as_vertex_list(const Json& j, const std::string& origin,
                                          const std::string& where) {
  if (!j.is_array()) throw schema_error(origin, where, "expected an array of vertex ids");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_vertex(j[i], origin, where + "/" + std::to_string(i)));
  return out;
}

inline std::vector<Simplex> as_simplex_list(const Json& j, const std::string& origin,
                                            const std::string& where) {
  if (!j.is_array()) throw schema_error(origin, where, "expected an array of simplices");
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    auto verts = as_vertex_list(j[i], origin, at);
    try {
      out.emplace_back(std::move(verts));
    } catch (const DomainError& e) {
      throw schema_error(origin, at, e.what());
    }
  }
  return out;
}

// --- writers -----------------------------------------------------------------

inline Json to_json(const Simplex& s) { return Json(s.vertices()); }

inline Json to_json(const SimplicialComplex& k) {
  Json arr = Json::array();
  for (const auto& s : k.maximal_simplices()) arr.push_back(to_json(s));
  return Json{{"maximal_simplices", arr}};
}

inline Json simplices_json(const CellSet& s) {
  Json arr = Json::array();
  for (const auto& x : s.simplices()) arr.push_back(to_json(x));
  return arr;
}

inline Json to_json(const CellSet& s) {
  return Json{{"complex", to_json(*s.ambient())}, {"simplices", simplices_json(s)}};
}

inline Json to_json(const ConstructibleFunction& h) {
  Json coeffs = Json::array();
  for (const auto& [s, c] : h.terms()) coeffs.push_back(Json{{"simplex", to_json(s)}, {"c", c}});
  return Json{{"complex", to_json(*h.ambient())}, {"coeffs", coeffs}};
}

inline Json to_json(const CellComplexSummary& s) {
  Json counts = Json::object();
  for (const auto& [d, c] : s.cell_counts) counts[std::to_string(d)] = c;
  return Json{{"cell_counts", counts}, {"chi", s.chi()}};
}

inline Json to_json(const TargetCount& t) {
  Json j{{"integral", t.integral},
         {"N", t.support_chi},
         {"consistent", t.consistent()},
         {"rational", std::to_string(t.numerator) + "/" + std::to_string(t.denominator)}};
  j["count"] = t.count ? Json(*t.count) : Json(nullptr);
  return j;
}

inline Json to_json(const ShapeSpec& s) {
  switch (s.kind) {
    case ShapeKind::disk: return Json{{"kind", "disk"}, {"cx", s.cx}, {"cy", s.cy}, {"r", s.r}};
    case ShapeKind::rectangle:
      return Json{{"kind", "rectangle"}, {"x0", s.x0}, {"y0", s.y0}, {"x1", s.x1}, {"y1", s.y1}};
    case ShapeKind::annulus:
      return Json{{"kind", "annulus"}, {"cx", s.cx}, {"cy", s.cy}, {"inner", s.inner},
                  {"outer", s.outer}};
  }
  return Json();
}

// --- reader with complex cache -------------------------------------------------

/// Resolves complex references and caches complexes loaded from paths, so
/// documents that name the same file share one ambient object.
class Reader {
public:
  ComplexPtr complex(const Json& j, const std::string& origin, const std::string& where,
                     const fs::path& base_dir) {
    if (j.is_string()) {
      fs::path p = fs::path(j.get<std::string>());
      if (p.is_relative()) p = base_dir / p;
      const auto key = fs::weakly_canonical(p).string();
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
      const Json doc = read_json(p);
      auto k = complex(doc, p.string(), "", p.parent_path());
      cache_.emplace(key, k);
      return k;
    }
    const Json& list = member(j, "maximal_simplices", origin, where);
    if (!list.is_array()) throw schema_error(origin, where + "/maximal_simplices", "expected an array");
    std::vector<std::vector<Vertex>> faces;
    for (std::size_t i = 0; i < list.size(); ++i)
      faces.push_back(as_vertex_list(list[i], origin, where + "/maximal_simplices/" + std::to_string(i)));
    try {
      return share(build_complex(faces));
    } catch (const DomainError& e) {
      throw schema_error(origin, where + "/maximal_simplices", e.what());
    }
  }

  ComplexPtr complex_file(const fs::path& path) {
    return complex(Json(path.string()), path.string(), "", fs::current_path());
  }

  /// A cell set given as an object with "simplices" (and optionally
  /// "complex") or as a bare array of simplices over `default_ambient`.
  CellSet cellset(const Json& j, const std::string& origin, const std::string& where,
                  const fs::path& base_dir, ComplexPtr default_ambient = nullptr) {
    ComplexPtr ambient = default_ambient;
    const Json* list = &j;
    if (j.is_object()) {
      if (j.contains("complex")) {
        ambient = complex(j["complex"], origin, where + "/complex", base_dir);
        if (default_ambient && same_complex(ambient, default_ambient)) ambient = default_ambient;
      }
      list = &member(j, "simplices", origin, where);
    }
    if (!ambient) throw schema_error(origin, where, "cell set needs a \"complex\"");
    const auto simplices = as_simplex_list(*list, origin, where + "/simplices");
    try {
      return CellSet::from_simplices(ambient, simplices);
    } catch (const DomainError& e) {
      throw schema_error(origin, where, e.what());
    }
  }

  /// Either a cell-set document or a bare complex document (all of it).
  CellSet cellset_or_complex_file(const fs::path& path) {
    const Json doc = read_json(path);
    if (doc.is_object() && doc.contains("maximal_simplices"))
      return CellSet::all(complex(doc, path.string(), "", path.parent_path()));
    return cellset(doc, path.string(), "", path.parent_path());
  }

  std::map<Vertex, Vertex> vertex_map(const Json& j, const std::string& origin,
                                      const std::string& where) {
    if (!j.is_object()) throw schema_error(origin, where, "expected an object of vertex pairs");
    std::map<Vertex, Vertex> m;
    for (const auto& [key, value] : j.items()) {
      Vertex from;
      try {
        std::size_t used = 0;
        const unsigned long parsed = std::stoul(key, &used);
        if (used != key.size() || parsed > std::numeric_limits<Vertex>::max())
          throw std::invalid_argument(key);
        from = static_cast<Vertex>(parsed);
      } catch (const std::exception&) {
        throw schema_error(origin, where, "vertex map key \"" + key + "\" is not a vertex id");
      }
      m[from] = as_vertex(value, origin, where + "/" + key);
    }
    return m;
  }

  SimplicialMap simplicial_map(const Json& j, const std::string& origin, const fs::path& base_dir) {
    auto src = complex(member(j, "source", origin, ""), origin, "/source", base_dir);
    auto tgt = complex(member(j, "target", origin, ""), origin, "/target", base_dir);
    auto m = vertex_map(member(j, "vertex_map", origin, ""), origin, "/vertex_map");
    try {
      return SimplicialMap(src, tgt, std::move(m));
    } catch (const DomainError& e) {
      throw schema_error(origin, "/vertex_map", e.what());
    }
  }

  SimplicialMap simplicial_map_file(const fs::path& path) {
    return simplicial_map(read_json(path), path.string(), path.parent_path());
  }

  ConstructibleFunction function(const Json& j, const std::string& origin, const fs::path& base_dir,
                                 ComplexPtr ambient = nullptr) {
    if (j.contains("complex")) {
      auto k = complex(j["complex"], origin, "/complex", base_dir);
      if (!ambient || !same_complex(ambient, k)) ambient = k;
    }
    if (!ambient) throw schema_error(origin, "", "constructible function needs a \"complex\"");
    const Json& coeffs = member(j, "coeffs", origin, "");
    if (!coeffs.is_array()) throw schema_error(origin, "/coeffs", "expected an array");
    std::vector<std::pair<Simplex, Count>> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const std::string at = "/coeffs/" + std::to_string(i);
      auto verts = as_vertex_list(member(coeffs[i], "simplex", origin, at), origin, at + "/simplex");
      const Count c = as_count(member(coeffs[i], "c", origin, at), origin, at + "/c");
      try {
        terms.emplace_back(Simplex(std::move(verts)), c);
      } catch (const DomainError& e) {
        throw schema_error(origin, at, e.what());
      }
    }
    try {
      return ConstructibleFunction::from_terms(ambient, terms);
    } catch (const DomainError& e) {
      throw schema_error(origin, "/coeffs", e.what());
    }
  }

  ConstructibleFunction function_file(const fs::path& path, ComplexPtr ambient = nullptr) {
    return function(read_json(path), path.string(), path.parent_path(), std::move(ambient));
  }

  std::vector<CellSet> cover_file(const fs::path& path, const ComplexPtr& ambient) {
    const Json doc = read_json(path);
    const Json& pieces = member(doc, "pieces", path.string(), "");
    if (!pieces.is_array()) throw schema_error(path.string(), "/pieces", "expected an array");
    std::vector<CellSet> out;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      out.push_back(cellset(pieces[i], path.string(), "/pieces/" + std::to_string(i),
                            path.parent_path(), ambient));
    return out;
  }

  BundleSpec bundle(const Json& j, const std::string& origin, const fs::path& base_dir) {
    auto total = complex(member(j, "total", origin, ""), origin, "/total", base_dir);
    auto base = complex(member(j, "base", origin, ""), origin, "/base", base_dir);
    auto m = vertex_map(member(j, "vertex_map", origin, ""), origin, "/vertex_map");
    std::optional<SimplicialMap> p;
    try {
      p.emplace(total, base, std::move(m));
    } catch (const DomainError& e) {
      throw schema_error(origin, "/vertex_map", e.what());
    }
    const Json& cover = member(j, "cover", origin, "");
    if (!cover.is_array()) throw schema_error(origin, "/cover", "expected an array");
    std::vector<CellSet> pieces;
    for (std::size_t i = 0; i < cover.size(); ++i)
      pieces.push_back(cellset(cover[i], origin, "/cover/" + std::to_string(i), base_dir, base));
    const Count fiber_chi = as_count(member(j, "fiber_chi", origin, ""), origin, "/fiber_chi");
    std::optional<CellSet> fiber;
    if (j.contains("fiber")) fiber = CellSet::all(complex(j["fiber"], origin, "/fiber", base_dir));
    return BundleSpec(std::move(*p), std::move(pieces), fiber_chi, std::move(fiber));
  }

  BundleSpec bundle_file(const fs::path& path) {
    return bundle(read_json(path), path.string(), path.parent_path());
  }

private:
  std::map<std::string, ComplexPtr> cache_;
};

// --- scenes -------------------------------------------------------------------

struct Scene {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<ShapeSpec> shapes;
};

inline Scene parse_scene(const Json& j, const std::string& origin) {
  Scene sc;
  const Count w = as_count(member(j, "width", origin, ""), origin, "/width");
  const Count h = as_count(member(j, "height", origin, ""), origin, "/height");
  if (w < 1 || h < 1) throw schema_error(origin, "", "width and height must be positive");
  sc.width = static_cast<std::size_t>(w);
  sc.height = static_cast<std::size_t>(h);
  const Json& shapes = member(j, "shapes", origin, "");
  if (!shapes.is_array()) throw schema_error(origin, "/shapes", "expected an array");
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const std::string at = "/shapes/" + std::to_string(i);
    const Json& s = shapes[i];
    const Json& kind = member(s, "kind", origin, at);
    if (!kind.is_string()) throw schema_error(origin, at + "/kind", "expected a string");
    auto get = [&](const char* key) {
      return as_count(member(s, key, origin, at), origin, at + "/" + key);
    };
    const std::string k = kind.get<std::string>();
    if (k == "disk")
      sc.shapes.push_back(ShapeSpec::disk(get("cx"), get("cy"), get("r")));
    else if (k == "rectangle")
      sc.shapes.push_back(ShapeSpec::rectangle(get("x0"), get("y0"), get("x1"), get("y1")));
    else if (k == "annulus")
      sc.shapes.push_back(ShapeSpec::annulus(get("cx"), get("cy"), get("inner"), get("outer")));
    else
      throw schema_error(origin, at + "/kind", "unknown shape kind \"" + k + "\"");
  }
  return sc;
}

inline Scene read_scene(const fs::path& path) { return parse_scene(read_json(path), path.string()); }

inline Json to_json(const Scene& sc) {
  Json shapes = Json::array();
  for (const auto& s : sc.shapes) shapes.push_back(to_json(s));
  return Json{{"width", sc.width}, {"height", sc.height}, {"shapes", shapes}};
}

// --- rasters -------------------------------------------------------------------

inline Count parse_cell(const std::string& token, const std::string& origin, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used == 0 || used != token.size())
    throw FormatError(origin + ":" + std::to_string(line) + ": \"" + token + "\" is not an integer");
  if (v < 0)
    throw FormatError(origin + ":" + std::to_string(line) + ": negative sensor count " + token);
  return v;
}

inline Raster parse_csv_raster(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::vector<Count> values;
  std::size_t width = 0, height = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t cols = 0;
    std::istringstream row(line);
    std::string token;
    while (std::getline(row, token, ',')) {
      values.push_back(parse_cell(token, origin, lineno));
      ++cols;
    }
    if (height == 0) width = cols;
    else if (cols != width)
      throw FormatError(origin + ":" + std::to_string(lineno) + ": row has " + std::to_string(cols) +
                        " columns, expected " + std::to_string(width));
    ++height;
  }
  if (height == 0) throw FormatError(origin + ": empty raster");
  return Raster(width, height, std::move(values));
}

inline Raster parse_pgm_raster(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::size_t> token_line;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) {
      tokens.push_back(t);
      token_line.push_back(lineno);
    }
  }
  if (tokens.size() < 4 || tokens[0] != "P2")
    throw FormatError(origin + ":1: expected a plain PGM header \"P2 width height maxval\"");
  const Count w = parse_cell(tokens[1], origin, token_line[1]);
  const Count h = parse_cell(tokens[2], origin, token_line[2]);
  const Count maxval = parse_cell(tokens[3], origin, token_line[3]);
  if (w < 1 || h < 1) throw FormatError(origin + ": PGM dimensions must be positive");
  const auto n = static_cast<std::size_t>(w * h);
  if (tokens.size() - 4 != n)
    throw FormatError(origin + ": PGM has " + std::to_string(tokens.size() - 4) + " samples, expected " +
                      std::to_string(n));
  std::vector<Count> values;
  values.reserve(n);
  for (std::size_t i = 4; i < tokens.size(); ++i) {
    const Count v = parse_cell(tokens[i], origin, token_line[i]);
    if (v > maxval)
      throw FormatError(origin + ":" + std::to_string(token_line[i]) + ": sample exceeds maxval");
    values.push_back(v);
  }
  return Raster(static_cast<std::size_t>(w), static_cast<std::size_t>(h), std::move(values));
}

/// CSV unless the content starts with the PGM magic "P2".
inline Raster read_raster(const fs::path& path) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text.compare(first, 2, "P2") == 0)
    return parse_pgm_raster(text, path.string());
  return parse_csv_raster(text, path.string());
}

inline std::string to_csv(const Raster& r) {
  std::string out;
  for (std::size_t y = 0; y < r.height(); ++y) {
    for (std::size_t x = 0; x < r.width(); ++x) {
      if (x) out += ',';
      out += std::to_string(r.at(x, y));
    }
    out += '\n';
  }
  return out;
}

inline std::string to_pgm(const Raster& r) {
  std::string out = "P2\n" + std::to_string(r.width()) + " " + std::to_string(r.height()) + "\n" +
                    std::to_string(std::max<Count>(1, r.max_value())) + "\n";
  for (std::size_t y = 0; y < r.height(); ++y) {
    for (std::size_t x = 0; x < r.width(); ++x) {
      if (x) out += ' ';
      out += std::to_string(r.at(x, y));
    }
    out += '\n';
  }
  return out;
}

}  // namespace eulercalc::io
