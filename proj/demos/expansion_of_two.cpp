// Finds an expansion of 2v over D - D and checks it against a known one.
#include <iostream>

#include "selfaffine/neighbors.hpp"

int main() {
  using namespace selfaffine;
  const DigitSystem s({-1, -3}, {0, 1, 3});
  const MembershipResult r = is_member({2, 0}, s);
  if (!r.member) {
    std::cout << "2 is not in T - T\n";
    return 1;
  }
  std::cout << "witness: 2 = " << r.witness->to_string() << "\n";
  const RadixExpansion known = RadixExpansion::parse("0.(3)[3,0]");
  std::cout << "0.(3)[3,0] evaluates to " << eval(known, s.poly()) << ", verified: " << std::boolalpha
            << verify(known, {2, 0}, s.poly(), s.differences()) << "\n";
}
