#pragma once

// Seeded synthetic scenes of contractible targets for plant-and-recover runs.
//
// A scene is in general position when, at every grid edge and vertex, some
// incident pixel is covered by every shape that covers any incident pixel.
// Then the max-extension of the summed raster equals the sum of the closed
// shape indicators cell by cell, and the Euler integral counts each
// contractible shape exactly once. Shapes that merely touch (share a grid
// edge or corner without sharing a pixel there) break this and are rejected.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "eulercalc/error.hpp"
#include "eulercalc/raster.hpp"

namespace eulercalc {

struct SceneOptions {
  std::int64_t min_radius = 2;
  std::int64_t max_radius = 20;
  std::int64_t min_side = 2;
  std::int64_t max_side = 40;
  int max_attempts_per_shape = 5000;
};

namespace detail {

/// Per-pixel list of shape ids covering the pixel.
class CoverageMap {
public:
  CoverageMap(std::size_t width, std::size_t height)
      : width_(width), height_(height), ids_(width * height) {}

  void add(const ShapeSpec& s, std::uint32_t id) {
    for (const auto& [x, y] : s.footprint()) ids_[index(x, y)].push_back(id);
  }

  /// Would adding `s` (with a fresh id) break general position?
  bool conflicts(const ShapeSpec& s) const {
    const auto box = s.footprint_box();
    const std::int64_t bw = box.xmax - box.xmin + 1;
    const std::int64_t bh = box.ymax - box.ymin + 1;
    std::vector<std::uint8_t> mine(static_cast<std::size_t>(bw * bh), 0);
    for (const auto& [x, y] : s.footprint())
      mine[static_cast<std::size_t>((y - box.ymin) * bw + (x - box.xmin))] = 1;
    auto has_new = [&](std::int64_t x, std::int64_t y) {
      if (x < box.xmin || x > box.xmax || y < box.ymin || y > box.ymax) return false;
      return mine[static_cast<std::size_t>((y - box.ymin) * bw + (x - box.xmin))] != 0;
    };
    constexpr std::uint32_t kNew = 0xffffffffu;

    // Checks one grid cell given its incident pixels.
    auto cell_ok = [&](std::span<const std::pair<std::int64_t, std::int64_t>> pixels) {
      std::vector<std::uint32_t> all;
      std::size_t best = 0;
      for (const auto& [x, y] : pixels) {
        if (!inside(x, y)) continue;
        std::size_t here = ids_[index(x, y)].size();
        all.insert(all.end(), ids_[index(x, y)].begin(), ids_[index(x, y)].end());
        if (has_new(x, y)) {
          all.push_back(kNew);
          ++here;
        }
        best = std::max(best, here);
      }
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      return all.size() == best;
    };

    for (std::int64_t j = box.ymin; j <= box.ymax + 1; ++j) {
      for (std::int64_t i = box.xmin; i <= box.xmax + 1; ++i) {
        const std::pair<std::int64_t, std::int64_t> vertex[] = {
            {i - 1, j - 1}, {i, j - 1}, {i - 1, j}, {i, j}};
        if (!cell_ok(vertex)) return true;
        const std::pair<std::int64_t, std::int64_t> horizontal[] = {{i, j - 1}, {i, j}};
        if (i <= box.xmax && !cell_ok(horizontal)) return true;
        const std::pair<std::int64_t, std::int64_t> vertical[] = {{i - 1, j}, {i, j}};
        if (j <= box.ymax && !cell_ok(vertical)) return true;
      }
    }
    return false;
  }

private:
  bool inside(std::int64_t x, std::int64_t y) const {
    return x >= 0 && y >= 0 && x < static_cast<std::int64_t>(width_) &&
           y < static_cast<std::int64_t>(height_);
  }
  std::size_t index(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x);
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<std::vector<std::uint32_t>> ids_;
};

}  // namespace detail

/// True when the shapes are pairwise (and jointly) in general position.
inline bool is_general_position(std::span<const ShapeSpec> shapes, std::size_t width,
                                std::size_t height) {
  detail::CoverageMap map(width, height);
  for (std::uint32_t id = 0; id < shapes.size(); ++id) {
    if (map.conflicts(shapes[id])) return false;
    map.add(shapes[id], id);
  }
  return true;
}

/// `count` random disks and rectangles, in bounds and in general position.
/// Deterministic in (seed, width, height, count, options).
inline std::vector<ShapeSpec> random_scene(std::uint64_t seed, std::size_t width,
                                           std::size_t height, std::size_t count,
                                           const SceneOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const auto w = static_cast<std::int64_t>(width);
  const auto h = static_cast<std::int64_t>(height);

  auto draw = [&]() -> std::optional<ShapeSpec> {
    if (uniform(0, 1) == 0) {
      const auto r = uniform(opt.min_radius, opt.max_radius);
      if (2 * r + 1 > w || 2 * r + 1 > h) return std::nullopt;
      return ShapeSpec::disk(uniform(r, w - 1 - r), uniform(r, h - 1 - r), r);
    }
    const auto sw = uniform(opt.min_side, opt.max_side);
    const auto sh = uniform(opt.min_side, opt.max_side);
    if (sw > w || sh > h) return std::nullopt;
    const auto x0 = uniform(0, w - sw), y0 = uniform(0, h - sh);
    return ShapeSpec::rectangle(x0, y0, x0 + sw - 1, y0 + sh - 1);
  };

  detail::CoverageMap map(width, height);
  std::vector<ShapeSpec> shapes;
  shapes.reserve(count);
  while (shapes.size() < count) {
    bool placed = false;
    for (int attempt = 0; attempt < opt.max_attempts_per_shape && !placed; ++attempt) {
      auto s = draw();
      if (!s || map.conflicts(*s)) continue;
      map.add(*s, static_cast<std::uint32_t>(shapes.size()));
      shapes.push_back(*s);
      placed = true;
    }
    if (!placed)
      throw DomainError("could not place shape " + std::to_string(shapes.size() + 1) +
                        " in general position; raster too small for the requested count");
  }
  return shapes;
}

}  // namespace eulercalc
