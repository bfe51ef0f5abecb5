// Connectedness of T(A, {0, 1, b} v) for a few b, with the E-graph edges.
#include <iostream>

#include "selfaffine/connectivity.hpp"

int main() {
  using namespace selfaffine;
  const QuadraticPoly f(-1, -3);
  for (const char* b : {"13/10", "8/5", "2", "33/10", "9/2"}) {
    const ConnectivityReport r = decide(DigitSystem(f, {0, 1, Rational::parse(b)}));
    std::cout << f << "  D={0,1," << b << "}  " << to_string(r.verdict) << "  edges:";
    for (const auto& [i, j] : r.e_graph.edges) std::cout << " " << r.e_graph.vertices[i] << "-" << r.e_graph.vertices[j];
    std::cout << "  (" << r.automaton_states << " states)\n";
  }
}
