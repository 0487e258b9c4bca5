#pragma once

// Subcommand front end. run() is the whole program minus process plumbing so
// that it can be driven from tests.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulercalc/bundles.hpp"
#include "eulercalc/cellset.hpp"
#include "eulercalc/constructible.hpp"
#include "eulercalc/error.hpp"
#include "eulercalc/homology.hpp"
#include "eulercalc/io.hpp"
#include "eulercalc/raster.hpp"
#include "eulercalc/scene.hpp"
#include "eulercalc/subdivision.hpp"

namespace eulercalc::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kIoError = 2 };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;
  std::uint64_t seed = 0;
  bool emit_json = false;

  std::optional<Count> support_chi;
  std::optional<Count> threshold;
  Count sheets = 0;
  Count base_chi = 0;
  std::string ram;
  std::size_t width = 256;
  std::size_t height = 256;
  std::size_t count = 0;
  unsigned times = 1;
  std::string cover;
  std::string map;
  std::string scene_output;
  bool pgm = false;
};

namespace detail {

namespace fs = std::filesystem;
using io::Json;

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1)
    throw FormatError(c.command + ": expected exactly one --input, got " +
                      std::to_string(c.inputs.size()));
  return c.inputs.front();
}

inline bool looks_like_raster(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".csv" || ext == ".pgm" || ext == ".txt";
}

/// Writes the whole report in one go; a failed run never leaves a partial file.
inline void write_atomically(const fs::path& target, const std::string& text) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError(target.string() + ": cannot open for writing");
    out << text;
    if (!out) throw FormatError(target.string() + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw FormatError(target.string() + ": " + ec.message());
  }
}

inline std::string counts_text(const std::map<std::size_t, Count>& counts) {
  std::string out;
  for (const auto& [d, c] : counts) {
    if (!out.empty()) out += ' ';
    out += "c" + std::to_string(d) + "=" + std::to_string(c);
  }
  return out.empty() ? "(empty)" : out;
}

inline std::string join(const std::vector<Count>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string subset_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

inline std::vector<Count> parse_ram(const std::string& text) {
  std::vector<Count> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size())
      throw FormatError("--ram: \"" + tok + "\" is not an integer");
    out.push_back(v);
  }
  return out;
}

inline std::string cmd_chi(const RunConfig& c) {
  io::Reader reader;
  const CellSet s = reader.cellset_or_complex_file(single_input(c));
  const Count x = chi(s);
  if (c.emit_json) return dump(Json{{"chi", x}, {"cell_counts", io::to_json(summarize(s))["cell_counts"]}});
  return std::to_string(x) + "\n";
}

inline std::string cmd_homology(const RunConfig& c) {
  io::Reader reader;
  const CellSet s = reader.cellset_or_complex_file(single_input(c));
  const auto betti = betti_numbers(s);
  const Count from_homology = chi_from_betti(betti);
  const Count from_cells = chi(s);
  if (c.emit_json)
    return dump(Json{{"betti", betti}, {"chi_homology", from_homology}, {"chi_cells", from_cells}});
  return "betti = (" + join(betti, ", ") + ")\nchi (homology) = " + std::to_string(from_homology) +
         "\nchi (cells) = " + std::to_string(from_cells) + "\n";
}

inline std::string cmd_subdivide(const RunConfig& c) {
  io::Reader reader;
  const auto k = reader.complex_file(single_input(c));
  return dump(io::to_json(barycentric_subdivide(*k, c.times)));
}

inline std::string cmd_product(const RunConfig& c) {
  if (c.inputs.size() != 2) throw FormatError("product: expected two --input files");
  io::Reader reader;
  const CellSet a = reader.cellset_or_complex_file(c.inputs[0]);
  const CellSet b = reader.cellset_or_complex_file(c.inputs[1]);
  const auto summary = product(a, b);
  if (c.emit_json) {
    Json j = io::to_json(summary);
    j["chi_left"] = chi(a);
    j["chi_right"] = chi(b);
    return dump(j);
  }
  return "cells: " + counts_text(summary.cell_counts) + "\nchi = " + std::to_string(summary.chi()) +
         " = " + std::to_string(chi(a)) + " * " + std::to_string(chi(b)) + "\n";
}

inline std::string cmd_integrate(const RunConfig& c) {
  const fs::path in = single_input(c);
  if (looks_like_raster(in)) {
    const Raster r = io::read_raster(in);
    if (c.threshold) {
      const Count x = chi_upper_set(r, *c.threshold);
      if (c.emit_json) return dump(Json{{"threshold", *c.threshold}, {"chi_upper_set", x}});
      return std::to_string(x) + "\n";
    }
    const Count x = euler_integral_raster(r);
    if (c.emit_json) return dump(Json{{"integral", x}});
    return std::to_string(x) + "\n";
  }
  io::Reader reader;
  const auto h = reader.function_file(in);
  if (c.threshold) {
    const Count x = chi(h.upper_set(*c.threshold));
    if (c.emit_json) return dump(Json{{"threshold", *c.threshold}, {"chi_upper_set", x}});
    return std::to_string(x) + "\n";
  }
  const Count x = euler_integral(h);
  if (c.emit_json) {
    Json j{{"integral", x}};
    if (h.min_value() >= 0) j["integral_levelsets"] = euler_integral_levelsets(h);
    return dump(j);
  }
  return std::to_string(x) + "\n";
}

inline std::string cmd_cover_integrate(const RunConfig& c) {
  if (c.cover.empty()) throw FormatError("cover-integrate: --cover is required");
  io::Reader reader;
  const auto h = reader.function_file(single_input(c));
  const auto cover = reader.cover_file(c.cover, h.ambient());
  const Count x = integrate_over_cover(h, cover);
  if (c.emit_json)
    return dump(Json{{"integral", x}, {"integral_cellwise", euler_integral(h)}, {"pieces", cover.size()}});
  return std::to_string(x) + "\n";
}

inline std::string cmd_pushforward(const RunConfig& c) {
  if (c.map.empty()) throw FormatError("pushforward: --map is required");
  io::Reader reader;
  const auto p = reader.simplicial_map_file(c.map);
  const auto h = reader.function_file(single_input(c), p.source());
  const auto pushed = pushforward(p, h);
  const Count before = euler_integral(h), after = euler_integral(pushed);
  if (c.emit_json)
    return dump(Json{{"pushforward", io::to_json(pushed)},
                     {"integral_source", before},
                     {"integral_target", after}});
  std::string out;
  for (const auto& [s, v] : pushed.terms()) out += s.to_string() + " " + std::to_string(v) + "\n";
  out += "integral over source = " + std::to_string(before) + "\n";
  out += "integral over target = " + std::to_string(after) + "\n";
  return out;
}

inline io::Scene scene_for(const RunConfig& c) {
  if (!c.inputs.empty()) return io::read_scene(single_input(c));
  if (c.count == 0) throw FormatError("synth: give --input scene.json or --count k");
  io::Scene sc;
  sc.width = c.width;
  sc.height = c.height;
  sc.shapes = random_scene(c.seed, c.width, c.height, c.count);
  return sc;
}

inline std::string cmd_synth(const RunConfig& c) {
  const io::Scene sc = scene_for(c);
  const Raster r = rasterize_shapes(sc.shapes, sc.width, sc.height);
  if (!c.scene_output.empty()) write_atomically(c.scene_output, dump(io::to_json(sc)));
  const bool pgm = c.pgm || fs::path(c.output).extension() == ".pgm";
  return pgm ? io::to_pgm(r) : io::to_csv(r);
}

inline std::string cmd_enumerate(const RunConfig& c) {
  const fs::path in = single_input(c);
  Raster r = [&] {
    if (in.extension() == ".json") {
      const auto sc = io::read_scene(in);
      return rasterize_shapes(sc.shapes, sc.width, sc.height);
    }
    return io::read_raster(in);
  }();
  const Count n = c.support_chi.value_or(1);
  const TargetCount t = enumerate_targets(r, n);
  if (c.emit_json) return dump(io::to_json(t));
  if (t.count) return "count " + std::to_string(*t.count) + "\n";
  return "inconsistent field: integral " + std::to_string(t.integral) + " / N " + std::to_string(n) +
         " = " + std::to_string(t.numerator) + "/" + std::to_string(t.denominator) + "\n";
}

inline std::string triviality_text(const TrivialityReport& report) {
  std::string out = "local triviality (chi level):\n";
  for (const auto& r : report.rows)
    out += "  J=" + subset_text(r.subset) + "  chi(A)=" + std::to_string(r.chi_base_piece) +
           "  chi(p^-1 A)=" + std::to_string(r.chi_preimage) + "  expected " +
           std::to_string(r.expected) + (r.pass ? "  ok\n" : "  FAIL\n");
  return out;
}

inline std::string cmd_bundle_check(const RunConfig& c, std::ostream& err) {
  io::Reader reader;
  const BundleSpec spec = reader.bundle_file(single_input(c));
  BundleProof proof;
  try {
    proof = bundle_chi_via_inclusion_exclusion(spec);
  } catch (const LocalTrivialityError& e) {
    err << triviality_text(e.report());
    throw;
  }
  if (c.emit_json) {
    Json rows = Json::array();
    for (const auto& r : proof.rows)
      rows.push_back(Json{{"subset", r.subset},
                          {"chi_base_piece", r.chi_base_piece},
                          {"chi_preimage", r.chi_preimage},
                          {"sign", r.sign}});
    Json chain = Json::array();
    for (const auto& s : proof.chain) chain.push_back(Json{{"formula", s.formula}, {"value", s.value}});
    return dump(Json{{"trace", rows},
                     {"summary",
                      {{"chi_total", proof.chi_total},
                       {"chi_base", proof.chi_base},
                       {"fiber_chi", proof.fiber_chi},
                       {"inclusion_exclusion", proof.value},
                       {"chain", chain},
                       {"holds", true}}}});
  }
  std::string out = triviality_text(check_local_triviality_chi(spec));
  out += "inclusion-exclusion terms:\n";
  for (const auto& r : proof.rows)
    out += std::string("  ") + (r.sign > 0 ? "+" : "-") + " chi(p^-1(B" + subset_text(r.subset) +
           ")) = " + std::to_string(r.chi_preimage) + "   [chi(B" + subset_text(r.subset) +
           ") = " + std::to_string(r.chi_base_piece) + "]\n";
  out += "chain:\n";
  for (const auto& s : proof.chain) out += "  " + s.formula + " = " + std::to_string(s.value) + "\n";
  out += "chi(E) = " + std::to_string(proof.chi_total) + " = " + std::to_string(proof.chi_base) +
         " * " + std::to_string(proof.fiber_chi) + "\n";
  return out;
}

inline std::string cmd_rh(const RunConfig& c) {
  RamificationData d;
  d.sheets = c.sheets;
  d.base_chi = c.base_chi;
  d.indices = parse_ram(c.ram);
  const Count x = riemann_hurwitz(d);
  if (c.emit_json)
    return dump(Json{{"sheets", d.sheets}, {"base_chi", d.base_chi}, {"indices", d.indices}, {"chi", x}});
  return std::to_string(x) + "\n";
}

}  // namespace detail

/// Runs one configured command; returns the process exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  using namespace detail;
  try {
    std::string report;
    if (c.command == "chi") report = cmd_chi(c);
    else if (c.command == "homology") report = cmd_homology(c);
    else if (c.command == "subdivide") report = cmd_subdivide(c);
    else if (c.command == "product") report = cmd_product(c);
    else if (c.command == "integrate") report = cmd_integrate(c);
    else if (c.command == "cover-integrate") report = cmd_cover_integrate(c);
    else if (c.command == "pushforward") report = cmd_pushforward(c);
    else if (c.command == "synth") report = cmd_synth(c);
    else if (c.command == "enumerate") report = cmd_enumerate(c);
    else if (c.command == "bundle-check") report = cmd_bundle_check(c, err);
    else if (c.command == "rh") report = cmd_rh(c);
    else throw FormatError("unknown command \"" + c.command + "\"");

    if (c.output.empty()) out << report;
    else write_atomically(c.output, report);
    return kOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

/// Parses argv-style arguments (without the program name) and runs.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Euler calculus on simplicial complexes and sensor rasters", "eulercalc"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", c.inputs, "input file(s)");
    sub->add_option("-o,--output", c.output, "write the report to this file");
    sub->add_flag("--json", c.emit_json, "emit JSON");
    sub->add_option("--seed", c.seed, "seed for randomized inputs");
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"chi", "Euler characteristic of a complex or cell set"},
      {"homology", "rational Betti numbers and homological chi"},
      {"subdivide", "barycentric subdivision"},
      {"product", "cell counts and chi of a product of two cell sets"},
      {"integrate", "Euler integral of a constructible function or raster"},
      {"cover-integrate", "Euler integral by inclusion-exclusion over a cover"},
      {"pushforward", "pushforward of a constructible function along a simplicial map"},
      {"synth", "rasterize a scene of target shapes"},
      {"enumerate", "count targets in a sensor raster"},
      {"bundle-check", "verify chi(E) = chi(B) chi(F) by inclusion-exclusion"},
      {"rh", "Riemann-Hurwitz formula"},
  };
  std::map<std::string, CLI::App*> apps;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    apps[s.name] = sub;
  }
  apps["subdivide"]->add_option("--times", c.times, "number of subdivisions")->check(CLI::Range(0u, 8u));
  apps["integrate"]->add_option("--threshold", c.threshold, "report chi{h >= s} instead");
  apps["cover-integrate"]->add_option("--cover", c.cover, "cover JSON")->required();
  apps["pushforward"]->add_option("--map", c.map, "simplicial map JSON")->required();
  auto* synth = apps["synth"];
  synth->add_option("--width", c.width, "raster width")->check(CLI::PositiveNumber);
  synth->add_option("--height", c.height, "raster height")->check(CLI::PositiveNumber);
  synth->add_option("--count", c.count, "number of random shapes");
  synth->add_option("--scene-output", c.scene_output, "also write the scene JSON here");
  synth->add_flag("--pgm", c.pgm, "write plain PGM instead of CSV");
  apps["enumerate"]->add_option("--support-chi", c.support_chi, "Euler characteristic N of every support");
  auto* rh = apps["rh"];
  rh->add_option("--sheets", c.sheets, "number of sheets n")->required();
  rh->add_option("--base-chi", c.base_chi, "chi of the base surface")->required();
  rh->add_option("--ram", c.ram, "ramification indices e1,e2,...");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kIoError;
  }
  for (const auto& [name, sub] : apps)
    if (sub->parsed()) c.command = name;
  return run(c, out, err);
}

}  // namespace eulercalc::cli
