#pragma once

// Planar sensor-count fields on a pixel grid.
//
// Pixel (x, y) is the closed unit square centered at the integer point
// (x, y). A raster value is extended to the edges and vertices of the grid by
// the maximum over incident pixels, so every upper set {h >= s} is a closed
// union of pixels and its Euler characteristic is V - E + F.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eulercalc/checked.hpp"
#include "eulercalc/error.hpp"

namespace eulercalc {

class Raster {
public:
  Raster(std::size_t width, std::size_t height)
      : width_(width), height_(height), values_(width * height, 0) {
    if (width == 0 || height == 0) throw DomainError("raster must have at least one pixel");
  }

  Raster(std::size_t width, std::size_t height, std::vector<Count> values)
      : width_(width), height_(height), values_(std::move(values)) {
    if (width == 0 || height == 0) throw DomainError("raster must have at least one pixel");
    if (values_.size() != width * height)
      throw DomainError("raster value count does not match width*height");
    for (Count v : values_)
      if (v < 0) throw DomainError("raster values must be nonnegative");
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const std::vector<Count>& values() const noexcept { return values_; }

  Count at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

  void increment(std::size_t x, std::size_t y) {
    Count& v = values_[y * width_ + x];
    v = checked_add(v, 1);
  }

  Count max_value() const { return *std::max_element(values_.begin(), values_.end()); }

  friend bool operator==(const Raster&, const Raster&) = default;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Count> values_;
};

inline Raster operator+(const Raster& a, const Raster& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw DomainError("raster dimensions differ");
  std::vector<Count> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(a.values()[i], b.values()[i]);
  return Raster(a.width(), a.height(), std::move(v));
}

enum class ShapeKind { disk, rectangle, annulus };

inline const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::disk: return "disk";
    case ShapeKind::rectangle: return "rectangle";
    case ShapeKind::annulus: return "annulus";
  }
  return "?";
}

/// A target support in pixel-center coordinates.
///   disk:      closed disk, center (cx, cy), radius r
///   rectangle: pixels x0..x1 by y0..y1 inclusive
///   annulus:   closed ring inner <= |p - c| <= outer
struct ShapeSpec {
  ShapeKind kind = ShapeKind::disk;
  std::int64_t cx = 0, cy = 0, r = 0;
  std::int64_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  std::int64_t inner = 0, outer = 0;

  static ShapeSpec disk(std::int64_t cx, std::int64_t cy, std::int64_t r) {
    ShapeSpec s;
    s.kind = ShapeKind::disk;
    s.cx = cx, s.cy = cy, s.r = r;
    return s;
  }
  static ShapeSpec rectangle(std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
    ShapeSpec s;
    s.kind = ShapeKind::rectangle;
    s.x0 = x0, s.y0 = y0, s.x1 = x1, s.y1 = y1;
    return s;
  }
  static ShapeSpec annulus(std::int64_t cx, std::int64_t cy, std::int64_t inner,
                           std::int64_t outer) {
    ShapeSpec s;
    s.kind = ShapeKind::annulus;
    s.cx = cx, s.cy = cy, s.inner = inner, s.outer = outer;
    return s;
  }

  /// Euler characteristic of the support: 1 for disks and rectangles, 0 for annuli.
  Count expected_chi() const { return kind == ShapeKind::annulus ? 0 : 1; }

  std::string describe() const {
    switch (kind) {
      case ShapeKind::disk:
        return "disk(cx=" + std::to_string(cx) + ", cy=" + std::to_string(cy) +
               ", r=" + std::to_string(r) + ")";
      case ShapeKind::rectangle:
        return "rectangle(x0=" + std::to_string(x0) + ", y0=" + std::to_string(y0) +
               ", x1=" + std::to_string(x1) + ", y1=" + std::to_string(y1) + ")";
      case ShapeKind::annulus:
        return "annulus(cx=" + std::to_string(cx) + ", cy=" + std::to_string(cy) +
               ", inner=" + std::to_string(inner) + ", outer=" + std::to_string(outer) + ")";
    }
    return "?";
  }

  /// Inclusive pixel bounding box of the footprint.
  struct Box {
    std::int64_t xmin, ymin, xmax, ymax;
  };
  Box footprint_box() const {
    switch (kind) {
      case ShapeKind::disk: return {cx - r, cy - r, cx + r, cy + r};
      case ShapeKind::rectangle: return {x0, y0, x1, y1};
      case ShapeKind::annulus: return {cx - outer, cy - outer, cx + outer, cy + outer};
    }
    return {0, 0, -1, -1};
  }

  void validate() const {
    switch (kind) {
      case ShapeKind::disk:
        if (r < 1) throw DomainError("disk radius must be >= 1: " + describe());
        break;
      case ShapeKind::rectangle:
        if (x1 < x0 || y1 < y0) throw DomainError("rectangle is empty: " + describe());
        break;
      case ShapeKind::annulus:
        if (inner < 1 || outer <= inner)
          throw DomainError("annulus needs outer > inner >= 1: " + describe());
        break;
    }
  }

  /// Does the closed shape meet the closed square of pixel (x, y)? All
  /// distances are doubled so the half-pixel offsets stay integral.
  bool covers(std::int64_t x, std::int64_t y) const {
    auto near2 = [](std::int64_t d) { return std::max<std::int64_t>(0, 2 * std::abs(d) - 1); };
    auto far2 = [](std::int64_t d) { return 2 * std::abs(d) + 1; };
    switch (kind) {
      case ShapeKind::rectangle:
        return x0 <= x && x <= x1 && y0 <= y && y <= y1;
      case ShapeKind::disk: {
        const auto dx = near2(x - cx), dy = near2(y - cy);
        return dx * dx + dy * dy <= 4 * r * r;
      }
      case ShapeKind::annulus: {
        const auto nx = near2(x - cx), ny = near2(y - cy);
        const auto fx = far2(x - cx), fy = far2(y - cy);
        return nx * nx + ny * ny <= 4 * outer * outer && fx * fx + fy * fy >= 4 * inner * inner;
      }
    }
    return false;
  }

  /// Pixels covered by the shape, as (x, y) pairs in row-major order.
  std::vector<std::pair<std::int64_t, std::int64_t>> footprint() const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    const auto b = footprint_box();
    for (auto y = b.ymin; y <= b.ymax; ++y)
      for (auto x = b.xmin; x <= b.xmax; ++x)
        if (covers(x, y)) out.emplace_back(x, y);
    return out;
  }

  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

inline bool in_bounds(const ShapeSpec& s, std::size_t width, std::size_t height) {
  const auto b = s.footprint_box();
  return b.xmin >= 0 && b.ymin >= 0 && b.xmax < static_cast<std::int64_t>(width) &&
         b.ymax < static_cast<std::int64_t>(height);
}

/// Sensor counts: each pixel holds the number of shapes meeting it.
inline Raster rasterize_shapes(std::span<const ShapeSpec> shapes, std::size_t width,
                               std::size_t height) {
  Raster out(width, height);
  for (const auto& s : shapes) {
    s.validate();
    if (!in_bounds(s, width, height))
      throw DomainError("shape out of raster bounds: " + s.describe());
  }
  for (const auto& s : shapes)
    for (const auto& [x, y] : s.footprint())
      out.increment(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  return out;
}

/// V - E + F of the closed union of pixels with value >= s.
inline Count chi_upper_set(const Raster& r, Count s) {
  if (s < 1) throw DomainError("threshold must be positive");
  const std::size_t w = r.width(), h = r.height();
  std::vector<std::uint8_t> on(w * h);
  Count faces = 0;
  for (std::size_t i = 0; i < on.size(); ++i) {
    on[i] = r.values()[i] >= s;
    faces += on[i];
  }
  auto occ = [&](std::ptrdiff_t x, std::ptrdiff_t y) -> bool {
    if (x < 0 || y < 0 || x >= static_cast<std::ptrdiff_t>(w) ||
        y >= static_cast<std::ptrdiff_t>(h))
      return false;
    return on[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
  };
  Count vertices = 0, edges = 0;
  // Lattice vertex (i, j) is the lower-left corner of pixel (i, j).
  for (std::ptrdiff_t j = 0; j <= static_cast<std::ptrdiff_t>(h); ++j) {
    for (std::ptrdiff_t i = 0; i <= static_cast<std::ptrdiff_t>(w); ++i) {
      const bool ll = occ(i - 1, j - 1), lr = occ(i, j - 1);
      const bool ul = occ(i - 1, j), ur = occ(i, j);
      vertices += ll || lr || ul || ur;
      // Horizontal edge from (i, j) to (i+1, j); vertical edge (i, j)-(i, j+1).
      if (i < static_cast<std::ptrdiff_t>(w)) edges += lr || ur;
      if (j < static_cast<std::ptrdiff_t>(h)) edges += ul || ur;
    }
  }
  return vertices - edges + faces;
}

/// Euler integral of the field: sum over s = 1..max of chi{h >= s}.
inline Count euler_integral_raster(const Raster& r) {
  const Count top = r.max_value();
  Count total = 0;
  for (Count s = 1; s <= top; ++s) total = checked_add(total, chi_upper_set(r, s));
  return total;
}

/// Result of target enumeration: integral / N as an exact reduced fraction.
struct TargetCount {
  Count integral = 0;
  Count support_chi = 0;
  Count numerator = 0;
  Count denominator = 1;
  std::optional<Count> count;  ///< set iff the fraction is a nonnegative integer

  bool consistent() const { return count.has_value(); }
};

/// Number of targets = (1/N) * integral of h, when every support has chi = N.
inline TargetCount enumerate_targets(const Raster& r, Count support_chi) {
  if (support_chi == 0) throw DomainError("support Euler characteristic must be nonzero");
  TargetCount out;
  out.integral = euler_integral_raster(r);
  out.support_chi = support_chi;
  Count num = out.integral, den = support_chi;
  if (den < 0) num = checked_sub(0, num), den = checked_sub(0, den);
  const Count g = std::gcd(num, den);
  out.numerator = num / g;
  out.denominator = den / g;
  if (out.denominator == 1 && out.numerator >= 0) out.count = out.numerator;
  return out;
}

}  // namespace eulercalc
