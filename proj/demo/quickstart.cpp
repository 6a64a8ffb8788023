// Builds a small automaton over the tropical semiring, evaluates both
// semantics, and determinizes it for the initial semantics.

#include <iostream>

#include "wta/wta.hpp"

using namespace wta;

int main() {
  Wta<TropicalSemiring> A;
  A.alphabet.ranks = {{"sigma", 2}, {"gamma", 1}, {"alpha", 0}};
  A.states = {"even", "odd"};
  A.finals = {ExtNat(2), ExtNat(3)};
  const int even = 0, odd = 1;
  ExtNat hit(0);
  A.add_transition("alpha", {}, odd, hit);
  A.add_transition("gamma", {even}, odd, hit);
  A.add_transition("gamma", {odd}, even, hit);
  A.add_transition("sigma", {even, even}, odd, hit);
  A.add_transition("sigma", {odd, odd}, odd, hit);
  A.add_transition("sigma", {even, odd}, even, hit);
  A.add_transition("sigma", {odd, even}, even, hit);

  Tree t = parse_tree("sigma(gamma(alpha),alpha)");
  std::cout << "tree: " << t.str() << "\n";
  std::cout << "initial semantics: " << TropicalSemiring::print(eval_init(A, t)) << "\n";
  std::cout << "run semantics:     " << TropicalSemiring::print(eval_run(A, t)) << "\n";

  auto result = build_nerode(A, 100);
  if (auto* success = std::get_if<NerodeSuccess<TropicalSemiring>>(&result)) {
    std::cout << "\ndeterminized (" << success->automaton.states.size() << " states):\n";
    std::cout << print_wta(success->automaton);
  }
  return 0;
}
