#pragma once

#include <sstream>
#include <string>

#include "wta/automaton.hpp"

namespace wta {

// DOT rendering of the automaton as a functional hypergraph: one circle node
// per state (annotated with its root weight), one box node per nonzero
// transition (annotated with symbol and weight). Incoming arcs carry the
// argument position as an ordered-port label. Output is deterministic.
template <Bimonoid B>
std::string export_hypergraph(const Wta<B>& A) {
  std::ostringstream os;
  os << "digraph wta {\n";
  os << "  rankdir=BT;\n";
  for (std::size_t q = 0; q < A.states.size(); ++q) {
    os << "  q_" << A.states[q] << " [shape=circle, label=\"" << A.states[q] << " / "
       << B::print(A.finals[q]) << "\"];\n";
  }
  int idx = 0;
  for (const auto& [key, w] : A.delta) {
    os << "  t_" << idx << " [shape=box, label=\"" << key.symbol << " / " << B::print(w)
       << "\"];\n";
    for (std::size_t i = 0; i < key.args.size(); ++i) {
      os << "  q_" << A.states[static_cast<std::size_t>(key.args[i])] << " -> t_" << idx
         << " [label=\"" << (i + 1) << "\"];\n";
    }
    os << "  t_" << idx << " -> q_" << A.states[static_cast<std::size_t>(key.target)] << ";\n";
    ++idx;
  }
  os << "}\n";
  return os.str();
}

}  // namespace wta
