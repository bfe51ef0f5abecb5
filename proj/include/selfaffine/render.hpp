#pragma once

// Floating point is confined to this header: it only draws pictures and
// never feeds a connectivity decision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selfaffine/algebra.hpp"
#include "selfaffine/errors.hpp"
#include "selfaffine/neighbors.hpp"
#include "selfaffine/union_find.hpp"

namespace selfaffine {

struct Point2 {
  double x = 0;
  double y = 0;
};

struct PointCloud {
  std::vector<Point2> points;
};

struct RenderConfig {
  int depth = 0;  // 0 selects default_depth()
  int width = 800;
  int height = 800;
  Point2 basis{1, 0};
  double margin = 0.05;
  std::size_t point_budget = 10'000'000;
};

/// Smallest N with |D|^N >= 10^5.
inline int default_depth(std::size_t digit_count) {
  if (digit_count < 2) return 1;
  int n = 1;
  double count = static_cast<double>(digit_count);
  while (count < 1e5) {
    count *= static_cast<double>(digit_count);
    ++n;
  }
  return n;
}

namespace detail {

struct Mat2d {
  double a, b, c, d;
  Point2 operator*(const Point2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2d operator*(const Mat2d& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  // Largest singular value.
  double spectral_norm() const {
    const double s = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    return std::sqrt((s + std::sqrt(std::max(0.0, s * s - 4 * det * det))) / 2);
  }
};

inline Mat2d inverse_companion(const QuadraticPoly& f) {
  const Mat2 inv = companion(f).inverse();
  return {inv(0, 0).to_double(), inv(0, 1).to_double(), inv(1, 0).to_double(), inv(1, 1).to_double()};
}

inline Mat2d power(Mat2d m, int n) {
  Mat2d out{1, 0, 0, 1};
  for (int i = 0; i < n; ++i) out = out * m;
  return out;
}

}  // namespace detail

/// All partial sums sum_{i=1}^{N} A^{-i} d_i v, |D|^N of them, built by
/// x -> A^{-1}(x + d v) one level at a time. A is the companion matrix in
/// the standard basis.
inline PointCloud enumerate_points(const DigitSystem& system, int depth, Point2 basis = {1, 0},
                                   std::size_t point_budget = 10'000'000) {
  if (depth < 1) throw InvalidInput("depth must be at least 1");
  const std::size_t k = system.digits().size();
  double total = 1;
  for (int i = 0; i < depth; ++i) total *= static_cast<double>(k);
  if (total > static_cast<double>(point_budget))
    throw StateLimitExceeded("|D|^depth = " + std::to_string(static_cast<long long>(total)) + " exceeds the point budget");
  const detail::Mat2d inv = detail::inverse_companion(system.poly());
  std::vector<Point2> offsets;
  for (const Rational& d : system.digits()) offsets.push_back({d.to_double() * basis.x, d.to_double() * basis.y});

  std::vector<Point2> level{{0, 0}};
  for (int n = 0; n < depth; ++n) {
    std::vector<Point2> next;
    next.reserve(level.size() * k);
    for (const Point2& x : level)
      for (const Point2& o : offsets) next.push_back(inv * Point2{x.x + o.x, x.y + o.y});
    level = std::move(next);
  }
  return {std::move(level)};
}

/// Radius R with T inside the union of closed R-balls around the depth-N
/// cloud: T = cloud + A^{-N} T gives
/// R <= max_x |A^{-N} x| / (1 - ||A^{-N}||). Infinite when ||A^{-N}|| >= 1.
inline double covering_radius(const PointCloud& cloud, const QuadraticPoly& f, int depth) {
  const detail::Mat2d m = detail::power(detail::inverse_companion(f), depth);
  const double norm = m.spectral_norm();
  if (norm >= 1) return std::numeric_limits<double>::infinity();
  double reach = 0;
  for (const Point2& x : cloud.points) {
    const Point2 y = m * x;
    reach = std::max(reach, std::hypot(y.x, y.y));
  }
  return reach / (1 - norm) * (1 + 1e-9);
}

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 0 = ink, 255 = background

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Binary raster of the cloud: uniform scale fitting the bounding box plus
/// margin, centred, y pointing up.
inline GrayImage rasterize(const PointCloud& cloud, const RenderConfig& config) {
  if (cloud.points.empty()) throw InvalidInput("cannot rasterize an empty cloud");
  if (config.width < 1 || config.height < 1) throw InvalidInput("image size must be positive");
  GrayImage img{config.width, config.height,
                std::vector<std::uint8_t>(static_cast<std::size_t>(config.width) * config.height, 255)};
  double x0 = cloud.points[0].x, x1 = x0, y0 = cloud.points[0].y, y1 = y0;
  for (const Point2& p : cloud.points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double span = std::max(x1 - x0, y1 - y0);
  const double usable = std::min(config.width, config.height) * (1 - 2 * config.margin);
  const double scale = span > 0 ? usable / span : 0;
  const double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
  for (const Point2& p : cloud.points) {
    const auto col = static_cast<long long>(std::floor((p.x - cx) * scale + config.width / 2.0));
    const auto row = static_cast<long long>(std::floor((cy - p.y) * scale + config.height / 2.0));
    if (col < 0 || row < 0 || col >= config.width || row >= config.height) continue;
    img.pixels[static_cast<std::size_t>(row) * config.width + static_cast<std::size_t>(col)] = 0;
  }
  return img;
}

/// Side of one raster pixel in cloud units under rasterize(cloud, config).
inline double pixel_size(const PointCloud& cloud, const RenderConfig& config) {
  if (cloud.points.empty()) return 0;
  double x0 = cloud.points[0].x, x1 = x0, y0 = cloud.points[0].y, y1 = y0;
  for (const Point2& p : cloud.points) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return std::max(x1 - x0, y1 - y0) / (std::min(config.width, config.height) * (1 - 2 * config.margin));
}

inline void write_pgm(const GrayImage& img, std::ostream& os) {
  os << "P5\n" << img.width << " " << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
}

inline void save_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  write_pgm(img, out);
}

/// Connected components of the union of closed gap-radius balls around the
/// points (two points join when at most 2*gap apart).
///
/// Points are bucketed into cells of side gap*sqrt(2), whose diagonal is
/// 2*gap, so a cell is always internally connected; only cell pairs within
/// two steps need a distance check.
inline std::size_t component_estimate(const PointCloud& cloud, double gap) {
  if (!(gap > 0)) throw InvalidInput("gap must be positive");
  if (cloud.points.empty()) return 0;
  const double side = gap * std::sqrt(2.0);
  const double reach2 = 4 * gap * gap;
  struct Key {
    long long x, y;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<long long>()(k.x * 0x9E3779B97F4A7C15ll ^ k.y);
    }
  };
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Point2& p = cloud.points[i];
    cells[{static_cast<long long>(std::floor(p.x / side)), static_cast<long long>(std::floor(p.y / side))}].push_back(i);
  }
  std::vector<Key> keys;
  std::unordered_map<Key, std::size_t, KeyHash> cell_id;
  for (const auto& [k, _] : cells) {
    cell_id.emplace(k, keys.size());
    keys.push_back(k);
  }
  UnionFind uf(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    const auto& mine = cells.at(keys[c]);
    for (long long dx = -2; dx <= 2; ++dx)
      for (long long dy = -2; dy <= 2; ++dy) {
        if (dx < 0 || (dx == 0 && dy <= 0)) continue;  // each unordered pair once
        auto it = cell_id.find({keys[c].x + dx, keys[c].y + dy});
        if (it == cell_id.end() || uf.find(c) == uf.find(it->second)) continue;
        const auto& theirs = cells.at(keys[it->second]);
        bool joined = false;
        for (std::size_t i : mine) {
          for (std::size_t j : theirs) {
            const double ex = cloud.points[i].x - cloud.points[j].x;
            const double ey = cloud.points[i].y - cloud.points[j].y;
            if (ex * ex + ey * ey <= reach2) {
              joined = true;
              break;
            }
          }
          if (joined) break;
        }
        if (joined) uf.unite(c, it->second);
      }
  }
  return uf.components();
}

}  // namespace selfaffine
