#include <gtest/gtest.h>

#include <sstream>

#include "selfaffine/render.hpp"

using namespace selfaffine;

namespace {

std::vector<Rational> ints(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

std::string pgm_bytes(const GrayImage& img) {
  std::ostringstream os;
  write_pgm(img, os);
  return os.str();
}

}  // namespace

TEST(DefaultDepth, SmallestPowerReachingOneHundredThousand) {
  EXPECT_EQ(default_depth(3), 11);
  EXPECT_EQ(default_depth(6), 7);
  EXPECT_EQ(default_depth(10), 5);
  EXPECT_EQ(default_depth(1), 1);
}

TEST(Enumerate, CountsAndZeroDigit) {
  EXPECT_EQ(enumerate_points(DigitSystem({1, 3}, ints({0, 1, 2})), 9).points.size(), 19683u);
  const PointCloud single = enumerate_points(DigitSystem({1, 3}, ints({0})), 6);
  ASSERT_EQ(single.points.size(), 1u);
  EXPECT_EQ(single.points[0].x, 0.0);
  EXPECT_EQ(single.points[0].y, 0.0);
  EXPECT_THROW(enumerate_points(DigitSystem({1, 3}, ints({0, 1, 2})), 20, {1, 0}, 1000), StateLimitExceeded);
  EXPECT_THROW(enumerate_points(DigitSystem({1, 3}, ints({0, 1, 2})), 0), InvalidInput);
}

TEST(Enumerate, DeeperCloudStaysNearShallowerOne) {
  const DigitSystem s({2, 3}, ints({0, 1, 3}));
  const PointCloud shallow = enumerate_points(s, 6);
  const PointCloud deep = enumerate_points(s, 7);
  // Each depth-7 point is a depth-6 point plus A^{-7} d v.
  const double r = covering_radius(shallow, s.poly(), 6);
  for (std::size_t i = 0; i < deep.points.size(); i += 37) {
    double best = 1e300;
    for (const Point2& p : shallow.points) best = std::min(best, std::hypot(p.x - deep.points[i].x, p.y - deep.points[i].y));
    EXPECT_LE(best, r);
  }
}

TEST(Rasterize, SinglePointLightsTheCentrePixel) {
  const GrayImage img = rasterize(PointCloud{{{0.25, -1.5}}}, RenderConfig{0, 9, 9});
  std::size_t ink = 0;
  for (auto px : img.pixels) ink += px == 0;
  EXPECT_EQ(ink, 1u);
  EXPECT_EQ(img.at(4, 4), 0);
}

TEST(Rasterize, DeterministicBytes) {
  const DigitSystem s({5, 6}, ints({0, 1, 2, 4, 6, 8}));
  RenderConfig config;
  config.basis = {0, 1};
  const std::string a = pgm_bytes(rasterize(enumerate_points(s, 5, config.basis), config));
  const std::string b = pgm_bytes(rasterize(enumerate_points(s, 5, config.basis), config));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("P5\n800 800\n255\n", 0), 0u);
  EXPECT_EQ(a.size(), std::string("P5\n800 800\n255\n").size() + 800u * 800u);
}

TEST(Components, SinglePointAndSeparatedClusters) {
  EXPECT_EQ(component_estimate(PointCloud{{{0, 0}}}, 0.1), 1u);
  EXPECT_EQ(component_estimate(PointCloud{{{0, 0}, {0.15, 0}, {0.3, 0.05}}}, 0.1), 1u);
  EXPECT_EQ(component_estimate(PointCloud{{{0, 0}, {0.5, 0}}}, 0.1), 2u);
  EXPECT_EQ(component_estimate(PointCloud{{{0, 0}, {0.2, 0}}}, 0.1), 1u);
  EXPECT_THROW(component_estimate(PointCloud{{{0, 0}}}, 0), InvalidInput);
}

TEST(Components, MatchesPairwiseUnionFindOnRandomClouds) {
  std::uint64_t state = 12345;
  auto next = [&] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) / static_cast<double>(1ull << 53);
  };
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud c;
    for (int i = 0; i < 150; ++i) c.points.push_back({next() * 4 - 2, next() * 4 - 2});
    const double gap = 0.05 + 0.1 * next();
    UnionFind uf(c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i)
      for (std::size_t j = i + 1; j < c.points.size(); ++j)
        if (std::hypot(c.points[i].x - c.points[j].x, c.points[i].y - c.points[j].y) <= 2 * gap) uf.unite(i, j);
    EXPECT_EQ(component_estimate(c, gap), uf.components()) << trial;
  }
}

TEST(Components, ConnectedSetIsOnePieceAtCoveringRadius) {
  const DigitSystem s({2, 3}, ints({0, 1, 2}));
  const int depth = 10;
  const PointCloud c = enumerate_points(s, depth);
  EXPECT_EQ(component_estimate(c, covering_radius(c, s.poly(), depth)), 1u);
}

TEST(Components, DisconnectedSetShowsSeveralPieces) {
  const DigitSystem s({1, 3}, ints({0, 1, 4}));
  const int depth = 10;
  const PointCloud c = enumerate_points(s, depth);
  EXPECT_GE(component_estimate(c, covering_radius(c, s.poly(), depth)), 2u);
}
