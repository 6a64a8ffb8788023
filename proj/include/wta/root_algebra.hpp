#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "wta/automaton.hpp"

namespace wta {

// Finite Sigma-algebra with a root weight per carrier element. The
// interpretation must be total on all rank-correct tuples.
template <Bimonoid B>
struct RootAlgebra {
  using Bim = B;
  using Value = typename B::Value;
  using ThetaKey = std::pair<std::string, std::vector<int>>;

  RankedAlphabet alphabet;
  std::vector<std::string> carrier;
  std::map<ThetaKey, int> theta;
  std::vector<Value> root;

  int apply(const std::string& sym, const std::vector<int>& args) const {
    auto it = theta.find({sym, args});
    if (it == theta.end())
      throw Error("interpretation not total: missing " + sym + " row");
    return it->second;
  }

  void check_total() const {
    int n = static_cast<int>(carrier.size());
    for (const auto& [sym, k] : alphabet.ranks) {
      detail::for_each_tuple(n, k, [&](const std::vector<int>& args) { apply(sym, args); });
    }
  }

  friend bool operator==(const RootAlgebra&, const RootAlgebra&) = default;
};

template <Bimonoid B>
int alg_hom(const RootAlgebra<B>& K, const Tree& t) {
  std::vector<int> args;
  args.reserve(t.children().size());
  for (const Tree& c : t.children()) args.push_back(alg_hom(K, c));
  return K.apply(t.symbol(), args);
}

template <Bimonoid B>
typename B::Value alg_eval(const RootAlgebra<B>& K, const Tree& t) {
  if (auto err = check_tree(K.alphabet, t)) throw AlphabetMismatch(*err);
  return K.root[static_cast<std::size_t>(alg_hom(K, t))];
}

// The crisp-deterministic automaton related to K: weight one exactly on the
// interpretation rows.
template <Bimonoid B>
Wta<B> to_wta(const RootAlgebra<B>& K) {
  K.check_total();
  Wta<B> A;
  A.alphabet = K.alphabet;
  A.states = K.carrier;
  A.finals = K.root;
  for (const auto& [key, target] : K.theta)
    A.add_transition(key.first, key.second, target, B::one());
  return A;
}

template <Bimonoid B>
RootAlgebra<B> to_algebra(const Wta<B>& A) {
  if (!is_crisp_deterministic(A))
    throw NotCrispDeterministic("input automaton is not crisp-deterministic");
  RootAlgebra<B> K;
  K.alphabet = A.alphabet;
  K.carrier = A.states;
  K.root = A.finals;
  for (const auto& [key, w] : A.delta) K.theta[{key.symbol, key.args}] = key.target;
  return K;
}

// Restriction to the carrier elements reachable from the nullary symbols.
// Element order of the original carrier is preserved, so an already
// accessible algebra comes back unchanged.
template <Bimonoid B>
RootAlgebra<B> accessible_part(const RootAlgebra<B>& K) {
  int n = static_cast<int>(K.carrier.size());
  std::vector<bool> reach(static_cast<std::size_t>(n), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [key, target] : K.theta) {
      if (reach[static_cast<std::size_t>(target)]) continue;
      bool all = true;
      for (int a : key.second)
        if (!reach[static_cast<std::size_t>(a)]) {
          all = false;
          break;
        }
      if (all) {
        reach[static_cast<std::size_t>(target)] = true;
        changed = true;
      }
    }
  }
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  RootAlgebra<B> out;
  out.alphabet = K.alphabet;
  for (int i = 0; i < n; ++i) {
    if (reach[static_cast<std::size_t>(i)]) {
      remap[static_cast<std::size_t>(i)] = static_cast<int>(out.carrier.size());
      out.carrier.push_back(K.carrier[static_cast<std::size_t>(i)]);
      out.root.push_back(K.root[static_cast<std::size_t>(i)]);
    }
  }
  for (const auto& [key, target] : K.theta) {
    if (!reach[static_cast<std::size_t>(target)]) continue;
    bool all = true;
    std::vector<int> args;
    args.reserve(key.second.size());
    for (int a : key.second) {
      if (!reach[static_cast<std::size_t>(a)]) {
        all = false;
        break;
      }
      args.push_back(remap[static_cast<std::size_t>(a)]);
    }
    if (all) out.theta[{key.first, std::move(args)}] = remap[static_cast<std::size_t>(target)];
  }
  return out;
}

// Componentwise product; root weight is the left-to-right product of the
// component root weights. Product elements are named (a|b|...).
template <Bimonoid B>
RootAlgebra<B> direct_product(const std::vector<RootAlgebra<B>>& Ks) {
  if (Ks.empty()) throw Error("direct product needs at least one factor");
  for (const auto& K : Ks)
    if (!(K.alphabet == Ks.front().alphabet))
      throw AlphabetMismatch("direct product factors disagree on the ranked alphabet");

  std::size_t m = Ks.size();
  std::vector<int> sizes;
  sizes.reserve(m);
  std::size_t total = 1;
  for (const auto& K : Ks) {
    sizes.push_back(static_cast<int>(K.carrier.size()));
    total *= K.carrier.size();
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

  RootAlgebra<B> out;
  out.alphabet = Ks.front().alphabet;
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto comp = unflat(static_cast<int>(idx));
    std::string name = "(";
    typename B::Value fw = B::one();
    for (std::size_t i = 0; i < m; ++i) {
      if (i) name += '|';
      name += Ks[i].carrier[static_cast<std::size_t>(comp[i])];
      fw = B::times(fw, Ks[i].root[static_cast<std::size_t>(comp[i])]);
    }
    name += ')';
    out.carrier.push_back(std::move(name));
    out.root.push_back(std::move(fw));
  }
  for (const auto& [sym, k] : out.alphabet.ranks) {
    detail::for_each_tuple(static_cast<int>(total), k, [&](const std::vector<int>& args) {
      std::vector<std::vector<int>> comps;
      comps.reserve(args.size());
      for (int a : args) comps.push_back(unflat(a));
      std::vector<int> result(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> sub;
        sub.reserve(args.size());
        for (const auto& c : comps) sub.push_back(c[i]);
        result[i] = Ks[i].apply(sym, sub);
      }
      out.theta[{sym, args}] = flat(result);
    });
  }
  return out;
}

// Canonical relabeling of the accessible part: breadth-first discovery from
// the nullary symbols, symbols in name order and argument tuples in discovery
// order. Two accessible algebras are isomorphic iff their canonical forms are
// structurally equal.
template <Bimonoid B>
RootAlgebra<B> canonical_form(const RootAlgebra<B>& K) {
  std::map<int, int> relabel;  // old index -> discovery index
  std::vector<int> order;      // discovery index -> old index
  std::map<typename RootAlgebra<B>::ThetaKey, int> rows;

  auto discover = [&](int old) {
    if (!relabel.count(old)) {
      relabel[old] = static_cast<int>(order.size());
      order.push_back(old);
    }
    return relabel[old];
  };

  for (const auto& [sym, k] : K.alphabet.ranks)
    if (k == 0) rows[{sym, {}}] = discover(K.apply(sym, {}));

  for (std::size_t next = 0; next < order.size(); ++next) {
    for (const auto& [sym, k] : K.alphabet.ranks) {
      if (k == 0) continue;
      // tuples over the first next+1 discovered elements that use index `next`
      detail::for_each_tuple(static_cast<int>(next) + 1, k, [&](const std::vector<int>& args) {
        bool uses_new = false;
        for (int a : args)
          if (a == static_cast<int>(next)) uses_new = true;
        if (!uses_new) return;
        std::vector<int> old_args;
        old_args.reserve(args.size());
        for (int a : args) old_args.push_back(order[static_cast<std::size_t>(a)]);
        rows[{sym, args}] = discover(K.apply(sym, old_args));
      });
    }
  }

  RootAlgebra<B> out;
  out.alphabet = K.alphabet;
  out.theta = std::move(rows);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.carrier.push_back("c" + std::to_string(i));
    out.root.push_back(K.root[static_cast<std::size_t>(order[i])]);
  }
  return out;
}

template <Bimonoid B>
bool isomorphic_accessible(const RootAlgebra<B>& K1, const RootAlgebra<B>& K2) {
  return canonical_form(K1) == canonical_form(K2);
}

}  // namespace wta
