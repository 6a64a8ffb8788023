#pragma once

#include <map>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/root_algebra.hpp"

namespace wta {

template <Bimonoid B>
struct NerodeSuccess {
  Wta<B> automaton;                                    // crisp-deterministic and total
  std::vector<std::vector<typename B::Value>> vectors; // discovered states, in order
  std::vector<Tree> witnesses;                         // a tree reaching each vector
};

template <Bimonoid B>
using NerodeResult = std::variant<NerodeSuccess<B>, BudgetExceeded>;

// Saturates the image of the vector algebra homomorphism by a FIFO worklist:
// seed with the nullary applications, then apply every symbol to every tuple
// of already discovered vectors. Vectors are deduplicated by exact equality.
// Fails once more than max_states distinct vectors appear; finiteness of the
// image is undecidable in general, so the budget is the only stopping rule.
// A large enough budget always suffices when the weights are locally finite,
// and also when they are multiplicatively locally finite and the automaton is
// bu-deterministic (the reachable vectors then live in H^Q for the finite
// multiplicative closure H of the transition weights).
template <Bimonoid B>
NerodeResult<B> build_nerode(const Wta<B>& A, std::uint64_t max_states) {
  using Vec = std::vector<typename B::Value>;
  std::map<Vec, int> index_of;
  std::vector<Vec> vectors;
  std::vector<Tree> witnesses;
  Wta<B> out;
  out.alphabet = A.alphabet;
  bool exceeded = false;

  auto discover = [&](const Vec& v, const Tree& witness) -> int {
    auto it = index_of.find(v);
    if (it != index_of.end()) return it->second;
    if (vectors.size() >= max_states) {
      exceeded = true;
      return -1;
    }
    int id = static_cast<int>(vectors.size());
    index_of.emplace(v, id);
    vectors.push_back(v);
    witnesses.push_back(witness);
    return id;
  };

  // Nullary seeds, symbols in name order.
  for (const auto& [sym, k] : A.alphabet.ranks) {
    if (k != 0) continue;
    Vec v = apply_delta(A, sym, {});
    int id = discover(v, Tree(sym));
    if (exceeded) return BudgetExceeded{vectors.size()};
    out.add_transition(sym, {}, id, B::one());
  }

  // Process vectors in discovery order; when handling vector i, enumerate all
  // argument tuples over {0..i} that mention i, so every tuple is applied
  // exactly once overall.
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (const auto& [sym, k] : A.alphabet.ranks) {
      if (k == 0) continue;
      bool stop = false;
      detail::for_each_tuple(static_cast<int>(i) + 1, k, [&](const std::vector<int>& args) {
        if (stop) return;
        bool uses_i = false;
        for (int a : args)
          if (a == static_cast<int>(i)) uses_i = true;
        if (!uses_i) return;
        std::vector<std::vector<typename B::Value>> kid_vectors;
        kid_vectors.reserve(args.size());
        for (int a : args) kid_vectors.push_back(vectors[static_cast<std::size_t>(a)]);
        Vec v = apply_delta(A, sym, kid_vectors);
        std::vector<Tree> kid_trees;
        kid_trees.reserve(args.size());
        for (int a : args) kid_trees.push_back(witnesses[static_cast<std::size_t>(a)]);
        int id = discover(v, Tree(sym, kid_trees));
        if (exceeded) {
          stop = true;
          return;
        }
        out.add_transition(sym, args, id, B::one());
      });
      if (exceeded) return BudgetExceeded{vectors.size()};
    }
  }

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out.states.push_back("n" + std::to_string(i));
    typename B::Value fw = B::zero();
    for (std::size_t q = 0; q < A.states.size(); ++q)
      fw = B::plus(fw, B::times(vectors[i][q], A.finals[q]));
    out.finals.push_back(fw);
  }
  return NerodeSuccess<B>{std::move(out), std::move(vectors), std::move(witnesses)};
}

struct ProbeVerdict {
  bool consistent = false;                 // no counterexample up to the depth
  std::size_t nerode_states = 0;
  std::size_t competitor_states = 0;
  bool size_ok = false;                    // nerode_states <= competitor_states
  std::optional<std::pair<Tree, Tree>> counterexample;
};

// Bounded sanity check of minimality: a competitor that can host every
// component mapping h^q as a final variant must, per crisp-deterministic
// evaluation, keep h^q constant on each class of trees sharing a competitor
// state. A violation within the enumerated depth is a counterexample; absence
// of one is consistency at that depth only, not a proof.
template <Bimonoid B>
ProbeVerdict minimality_probe(const Wta<B>& A, const NerodeSuccess<B>& nerode,
                              const Wta<B>& competitor, int depth) {
  if (!is_crisp_deterministic(competitor))
    throw NotCrispDeterministic("minimality probe needs a crisp-deterministic competitor");
  RootAlgebra<B> comp = to_algebra(competitor);

  ProbeVerdict verdict;
  verdict.nerode_states = nerode.vectors.size();
  verdict.competitor_states = competitor.states.size();
  verdict.size_ok = verdict.nerode_states <= verdict.competitor_states;

  std::vector<Tree> trees = enumerate_trees(A.alphabet, depth);
  for (std::size_t q = 0; q < A.states.size(); ++q) {
    std::map<int, std::pair<typename B::Value, Tree>> seen;  // competitor state -> h^q value
    for (const Tree& t : trees) {
      int s = alg_hom(comp, t);
      typename B::Value hq = eval_vector(A, t)[q];
      auto it = seen.find(s);
      if (it == seen.end()) {
        seen.emplace(s, std::make_pair(hq, t));
      } else if (!(it->second.first == hq)) {
        verdict.counterexample = std::make_pair(it->second.second, t);
        return verdict;
      }
    }
  }
  verdict.consistent = true;
  return verdict;
}

}  // namespace wta
