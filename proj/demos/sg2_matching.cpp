// Builds the graded matching on Ind(SG_{2,k}) and lists its critical cells.
// usage: demo_sg2_matching [k]

#include <cstdlib>
#include <iostream>

#include "indmorse.hpp"

int main(int argc, char** argv) {
  const int k = argc > 1 ? std::atoi(argv[1]) : 5;
  const auto m = indmorse::sg2k_matching(k);
  std::cout << "SG_{2," << k << "}: " << m.complex->face_count() << " faces, " << m.critical.size()
            << " critical cells, matching " << (m.ok() ? "verified" : "FAILED") << '\n';
  for (auto f : m.critical) std::cout << "  " << indmorse::sg2_face_string(*m.sg, f) << '\n';
  return m.ok() ? 0 : 1;
}
