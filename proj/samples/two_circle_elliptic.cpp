// Orientability of the real loci of symmetric products of an elliptic curve
// with two real circles, and the theta class behind it.

#include <iostream>

#include "realbundles/realbundles.hpp"

using namespace realbundles;

int main() {
  const KleinType t = KleinType::make(1, 2, 0);
  const PicTorusData pic = pic_torus(t);
  std::cout << "type " << t.str() << ", involution on the lattice:\n" << pic.lattice.tau().str() << "\n";

  const RealLineBundleClass theta = theta_class_p0(pic, 0);
  for (const auto& c : fixed_components(pic.lattice))
    std::cout << "T" << component_position(c) << ": w on [C1]^v = " << circle_values(pic, theta, c)[0] << "\n";

  for (long long d = 2; d <= 5; ++d) {
    std::cout << "d = " << d << ":";
    for (const auto& row : symmetric_power_report(t, d))
      std::cout << "  T" << component_position(row.component) << (row.orientable ? " orientable" : " non-orientable");
    std::cout << "\n";
  }
}
