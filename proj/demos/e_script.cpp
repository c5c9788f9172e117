// Prints the scripted matching tree for E_{2n+2} and its lemma terminals.
// usage: demo_e_script [n]

#include <cstdlib>
#include <iostream>

#include "indmorse.hpp"

int main(int argc, char** argv) {
  using namespace indmorse;
  const int n = argc > 1 ? std::atoi(argv[1]) : 5;
  const auto s = e_graph_script(n);
  std::cout << script_to_string(s.graph, s.program);
  const auto audit = audit_script(s.graph, s.program);
  std::cout << "\nterminals:\n";
  for (const auto& t : s.terminals) {
    std::cout << "  " << t.name << " at " << t.path << ": " << t.cells << " cells"
              << (t.shape_matches ? "" : " (shape mismatch)") << '\n';
  }
  std::cout << "critical cells:";
  for (Face f : audit.tree.critical_faces()) std::cout << ' ' << face_size(f);
  std::cout << "\nscript " << (audit.ok() ? "valid" : "rejected") << '\n';
  return audit.ok() ? 0 : 1;
}
