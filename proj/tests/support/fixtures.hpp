#pragma once

// Small reference automata used across the test suites.

#include "wta/wta.hpp"

namespace fixtures {

using namespace wta;

inline RankedAlphabet unary_alphabet() {
  RankedAlphabet sigma;
  sigma.ranks = {{"gamma", 1}, {"alpha", 0}};
  return sigma;
}

inline RankedAlphabet binary_alphabet() {
  RankedAlphabet sigma;
  sigma.ranks = {{"sigma", 2}, {"gamma", 1}, {"alpha", 0}};
  return sigma;
}

inline ExtNat nat(std::uint64_t v) { return ExtNat(v); }
inline ExtNat inf() { return ExtNat::inf(); }

// Two states over the tropical bimonoid, every transition and root weight 1:
// the initial semantics is constantly 2 while the run semantics counts runs.
inline Wta<TropicalBimonoid> init_vs_run() {
  Wta<TropicalBimonoid> A;
  A.alphabet = unary_alphabet();
  A.states = {"p1", "p2"};
  A.finals = {nat(1), nat(1)};
  for (int q = 0; q < 2; ++q) {
    A.add_transition("alpha", {}, q, nat(1));
    for (int p = 0; p < 2; ++p) A.add_transition("gamma", {p}, q, nat(1));
  }
  return A;
}

// One state over the tropical semiring; the run semantics is the node count.
inline Wta<TropicalSemiring> size_wta() {
  Wta<TropicalSemiring> A;
  A.alphabet = binary_alphabet();
  A.states = {"q"};
  A.finals = {nat(0)};
  A.add_transition("alpha", {}, 0, nat(1));
  A.add_transition("gamma", {0}, 0, nat(1));
  A.add_transition("sigma", {0, 0}, 0, nat(1));
  return A;
}

// Crisp-deterministic parity tracker over the tropical semiring: weight 2 on
// trees of even node count, 3 on odd ones.
inline Wta<TropicalSemiring> size_parity() {
  Wta<TropicalSemiring> A;
  A.alphabet = binary_alphabet();
  A.states = {"e", "o"};
  const int e = 0, o = 1;
  A.finals = {nat(2), nat(3)};
  A.add_transition("alpha", {}, o, nat(0));
  A.add_transition("gamma", {e}, o, nat(0));
  A.add_transition("gamma", {o}, e, nat(0));
  A.add_transition("sigma", {e, e}, o, nat(0));
  A.add_transition("sigma", {o, o}, o, nat(0));
  A.add_transition("sigma", {e, o}, e, nat(0));
  A.add_transition("sigma", {o, e}, e, nat(0));
  return A;
}

// Nondeterministic automaton with the same initial semantics as size_parity;
// its reachable weight vectors are {[0,inf,2], [inf,0,3]}.
inline Wta<TropicalSemiring> size_parity_nondet() {
  Wta<TropicalSemiring> A;
  A.alphabet = binary_alphabet();
  A.states = {"e", "o", "r"};
  const int e = 0, o = 1, r = 2;
  A.finals = {inf(), inf(), nat(0)};
  A.add_transition("alpha", {}, o, nat(0));
  A.add_transition("alpha", {}, r, nat(3));
  A.add_transition("gamma", {e}, o, nat(0));
  A.add_transition("gamma", {o}, e, nat(0));
  A.add_transition("gamma", {o}, r, nat(2));
  A.add_transition("gamma", {e}, r, nat(3));
  // sigma rows fire on parity states only; r never feeds back in.
  for (int q1 : {e, o}) {
    for (int q2 : {e, o}) {
      bool same = q1 == q2;
      A.add_transition("sigma", {q1, q2}, same ? o : e, nat(0));
      A.add_transition("sigma", {q1, q2}, r, same ? nat(3) : nat(2));
    }
  }
  return A;
}

// The size automaton with the root weight pushed to infinity: its initial
// semantics is constantly infinite, yet its reachable vector set is infinite.
inline Wta<TropicalSemiring> size_inf_final() {
  return final_variant(size_wta(), {inf()});
}

// Three states over the tropical semiring accepting six small trees with
// weight 1; all other trees get weight infinity under the run semantics.
inline Wta<TropicalSemiring> finite_support() {
  Wta<TropicalSemiring> A;
  A.alphabet = binary_alphabet();
  A.states = {"q0", "q1", "q2"};
  const int q0 = 0, q1 = 1, q2 = 2;
  A.finals = {nat(1), nat(1), nat(1)};
  A.add_transition("alpha", {}, q0, nat(0));
  A.add_transition("alpha", {}, q1, nat(0));
  A.add_transition("gamma", {q0}, q1, nat(0));
  A.add_transition("sigma", {q1, q1}, q2, nat(0));
  return A;
}

// The parity tracker as a finite algebra with root weights.
inline RootAlgebra<TropicalSemiring> parity_algebra() {
  RootAlgebra<TropicalSemiring> K;
  K.alphabet = binary_alphabet();
  K.carrier = {"e", "o"};
  const int e = 0, o = 1;
  K.root = {nat(2), nat(3)};
  K.theta[{"alpha", {}}] = o;
  K.theta[{"gamma", {e}}] = o;
  K.theta[{"gamma", {o}}] = e;
  K.theta[{"sigma", {e, e}}] = o;
  K.theta[{"sigma", {o, o}}] = o;
  K.theta[{"sigma", {e, o}}] = e;
  K.theta[{"sigma", {o, e}}] = e;
  return K;
}

// One-state Mealy machine over {a, b} swapping the two letters.
inline MealyMachine swap_machine() {
  MealyMachine M;
  M.states = {"s"};
  M.alphabet = {"a", "b"};
  M.tau = {{0, 0}};
  M.out = {{1, 0}};
  return M;
}

// Binary odometer, digits least-significant first (a = 0, b = 1): state c1
// adds one with carry, state c0 copies. The mapping induced at c1 is +1, so
// its compositions +1, +2, +3, ... never close.
inline MealyMachine adder_machine() {
  MealyMachine M;
  M.states = {"c0", "c1"};
  M.alphabet = {"a", "b"};
  M.tau = {{0, 0}, {0, 1}};
  M.out = {{0, 1}, {1, 0}};
  return M;
}

inline Tree gamma_chain(int n) {
  Tree t{"alpha"};
  for (int i = 0; i < n; ++i) t = Tree("gamma", {t});
  return t;
}

}  // namespace fixtures
