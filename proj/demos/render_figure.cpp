// Writes x^2+x+3 with D = {0, 1, 4} to fig.pgm and counts visible pieces.
#include <iostream>

#include "selfaffine/render.hpp"

int main(int argc, char** argv) {
  using namespace selfaffine;
  const std::string out = argc > 1 ? argv[1] : "fig.pgm";
  const DigitSystem s({1, 3}, {0, 1, 4});
  const RenderConfig config;
  const int depth = default_depth(s.digits().size());
  const PointCloud cloud = enumerate_points(s, depth);
  save_pgm(rasterize(cloud, config), out);
  std::cout << out << ": " << cloud.points.size() << " points at depth " << depth << ", "
            << component_estimate(cloud, pixel_size(cloud, config)) << " pieces at pixel scale\n";
}
