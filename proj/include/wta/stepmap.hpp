#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/root_algebra.hpp"

namespace wta {

// A finite sum of weighted characteristic mappings. Each step language is
// given by a bu-deterministic, total acceptor over the Boolean semiring; in
// normal form the step languages partition the whole tree set.
template <Bimonoid B>
struct StepMapping {
  struct Step {
    typename B::Value weight;
    Wta<BoolSemiring> acceptor;
  };
  std::vector<Step> steps;
  bool normal_form = false;
};

inline bool accepts(const Wta<BoolSemiring>& acc, const Tree& t) {
  return eval_init(acc, t) != 0;
}

template <Bimonoid B>
typename B::Value step_eval(const StepMapping<B>& s, const Tree& t) {
  typename B::Value acc = B::zero();
  for (const auto& step : s.steps)
    if (accepts(step.acceptor, t)) acc = B::plus(acc, step.weight);
  return acc;
}

// One step per state of a crisp-deterministic automaton: the step language
// collects the trees evaluating to that state, the step weight is the state's
// root weight. The languages partition the tree set by construction.
template <Bimonoid B>
StepMapping<B> crisp_to_step(const Wta<B>& A) {
  if (!is_crisp_deterministic(A))
    throw NotCrispDeterministic("step decomposition needs a crisp-deterministic automaton");
  StepMapping<B> out;
  out.normal_form = true;
  for (std::size_t q = 0; q < A.states.size(); ++q) {
    Wta<BoolSemiring> acc;
    acc.alphabet = A.alphabet;
    acc.states = A.states;
    for (const auto& [key, w] : A.delta)
      if (w == B::one()) acc.add_transition(key.symbol, key.args, key.target, 1);
    acc.finals.assign(A.states.size(), 0);
    acc.finals[q] = 1;
    out.steps.push_back({A.finals[q], std::move(acc)});
  }
  return out;
}

// Product construction over all acceptors: the joint state tracks every
// component, transitions are crisp, and the root weight sums the weights of
// the accepting components.
template <Bimonoid B>
Wta<B> step_to_crisp(const StepMapping<B>& s) {
  if (s.steps.empty()) throw MalformedAcceptor("step mapping needs at least one step");
  const RankedAlphabet& sigma = s.steps.front().acceptor.alphabet;
  for (const auto& step : s.steps) {
    const auto& acc = step.acceptor;
    if (!(acc.alphabet == sigma))
      throw AlphabetMismatch("step acceptors disagree on the ranked alphabet");
    if (!is_bu_deterministic(acc) || !is_total(acc))
      throw MalformedAcceptor("step acceptor must be bu-deterministic and total");
  }

  std::size_t m = s.steps.size();
  std::vector<int> sizes;
  std::size_t total = 1;
  for (const auto& step : s.steps) {
    sizes.push_back(static_cast<int>(step.acceptor.states.size()));
    total *= step.acceptor.states.size();
  }
  auto flat = [&](const std::vector<int>& comp) {
    int idx = 0;
    for (std::size_t i = 0; i < m; ++i) idx = idx * sizes[i] + comp[i];
    return idx;
  };
  auto unflat = [&](int idx) {
    std::vector<int> comp(m);
    for (std::size_t i = m; i-- > 0;) {
      comp[i] = idx % sizes[i];
      idx /= sizes[i];
    }
    return comp;
  };
  // The unique successor of a component tuple under one acceptor.
  auto follow = [&](std::size_t i, const std::string& sym, const std::vector<int>& args) {
    const auto& acc = s.steps[i].acceptor;
    int found = -1;
    for (int q = 0; q < sizes[i]; ++q)
      if (acc.weight(sym, args, q) != 0) {
        found = q;
        break;
      }
    return found;  // >= 0 by totality
  };

  Wta<B> out;
  out.alphabet = sigma;
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto comp = unflat(static_cast<int>(idx));
    std::string name = "(";
    for (std::size_t i = 0; i < m; ++i) {
      if (i) name += '|';
      name += s.steps[i].acceptor.states[static_cast<std::size_t>(comp[i])];
    }
    name += ')';
    out.states.push_back(std::move(name));
    typename B::Value fw = B::zero();
    for (std::size_t i = 0; i < m; ++i)
      if (s.steps[i].acceptor.finals[static_cast<std::size_t>(comp[i])] != 0)
        fw = B::plus(fw, s.steps[i].weight);
    out.finals.push_back(std::move(fw));
  }
  for (const auto& [sym, k] : sigma.ranks) {
    detail::for_each_tuple(static_cast<int>(total), k, [&](const std::vector<int>& args) {
      std::vector<std::vector<int>> comps;
      comps.reserve(args.size());
      for (int a : args) comps.push_back(unflat(a));
      std::vector<int> next(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> sub;
        sub.reserve(args.size());
        for (const auto& c : comps) sub.push_back(c[i]);
        next[i] = follow(i, sym, sub);
      }
      out.add_transition(sym, args, flat(next), B::one());
    });
  }
  return out;
}

// Exact partition check through the reachable product states: every reachable
// joint state must be accepted by exactly one component.
template <Bimonoid B>
bool verify_normal_form(const StepMapping<B>& s) {
  Wta<B> prod = step_to_crisp(s);
  std::size_t m = s.steps.size();
  std::vector<int> sizes;
  for (const auto& step : s.steps) sizes.push_back(static_cast<int>(step.acceptor.states.size()));
  auto unflat = [&](int idx) {
    std::vector<int> comp(m);
    for (std::size_t i = m; i-- > 0;) {
      comp[i] = idx % sizes[i];
      idx /= sizes[i];
    }
    return comp;
  };

  // Reachable product states via the crisp transitions.
  std::set<int> reach;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [key, w] : prod.delta) {
      if (reach.count(key.target)) continue;
      bool all = true;
      for (int a : key.args)
        if (!reach.count(a)) {
          all = false;
          break;
        }
      if (all) {
        reach.insert(key.target);
        changed = true;
      }
    }
  }
  for (int idx : reach) {
    auto comp = unflat(idx);
    int accepting = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (s.steps[i].acceptor.finals[static_cast<std::size_t>(comp[i])] != 0) ++accepting;
    if (accepting != 1) return false;
  }
  return true;
}

}  // namespace wta
