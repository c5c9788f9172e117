// Checks each family's predicted homotopy type over a small range.

#include <iostream>

#include "indmorse.hpp"

int main() {
  using namespace indmorse;
  bool ok = true;
  const struct {
    Family family;
    int lo, hi;
  } sweeps[] = {{Family::cycle, 3, 12}, {Family::path, 1, 12}, {Family::el, 0, 9}, {Family::sg2, 2, 7}, {Family::e, 3, 6}};
  for (const auto& s : sweeps) {
    const auto reports = verify_family(s.family, s.lo, s.hi);
    std::cout << summary_table(reports) << '\n';
    for (const auto& r : reports) ok = ok && r.verdict() == Verdict::match;
  }
  return ok ? 0 : 1;
}
