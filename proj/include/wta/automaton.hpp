#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wta/bimonoid.hpp"
#include "wta/terms.hpp"

namespace wta {

// Transition lookup key: (symbol, argument states, target state). Sorting by
// symbol first lets evaluators scan all entries of one symbol in canonical
// (argument tuple, target) order.
struct TransKey {
  std::string symbol;
  std::vector<int> args;
  int target;
  friend auto operator<=>(const TransKey&, const TransKey&) = default;
};

template <Bimonoid B>
struct Wta {
  using Bim = B;
  using Value = typename B::Value;

  RankedAlphabet alphabet;
  std::vector<std::string> states;      // canonical state order
  std::map<TransKey, Value> delta;      // nonzero transitions only
  std::vector<Value> finals;            // root weights, by state index

  int state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw Error("unknown state: " + name);
  }

  void add_transition(const std::string& sym, std::vector<int> args, int target,
                      const Value& w) {
    if (w == B::zero()) return;  // unlisted means zero
    delta.insert_or_assign(TransKey{sym, std::move(args), target}, w);
  }

  Value weight(const std::string& sym, const std::vector<int>& args, int target) const {
    auto it = delta.find(TransKey{sym, args, target});
    return it == delta.end() ? B::zero() : it->second;
  }

  // Iterate the stored entries for one symbol, in (args, target) order.
  template <class F>
  void for_symbol(const std::string& sym, F&& f) const {
    auto it = delta.lower_bound(TransKey{sym, {}, std::numeric_limits<int>::min()});
    for (; it != delta.end() && it->first.symbol == sym; ++it)
      f(it->first.args, it->first.target, it->second);
  }

  Value final_weight(int q) const { return finals[static_cast<std::size_t>(q)]; }

  friend bool operator==(const Wta&, const Wta&) = default;
};

namespace detail {

// Calls f(args) for every tuple in [0,n)^k, lexicographically.
inline void for_each_tuple(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> args(static_cast<std::size_t>(k), 0);
  if (k == 0) {
    f(args);
    return;
  }
  if (n == 0) return;
  while (true) {
    f(args);
    int i = k - 1;
    while (i >= 0 && args[static_cast<std::size_t>(i)] == n - 1) {
      args[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
    ++args[static_cast<std::size_t>(i)];
  }
}

}  // namespace detail

// At most one nonzero target per (argument tuple, symbol).
template <Bimonoid B>
bool is_bu_deterministic(const Wta<B>& A) {
  // Stored entries are exactly the nonzero ones, so group them by (symbol, args).
  const TransKey* prev = nullptr;
  for (const auto& [key, w] : A.delta) {
    if (prev && prev->symbol == key.symbol && prev->args == key.args) return false;
    prev = &key;
  }
  return true;
}

// At least one nonzero target per (argument tuple, symbol).
template <Bimonoid B>
bool is_total(const Wta<B>& A) {
  int n = static_cast<int>(A.states.size());
  for (const auto& [sym, k] : A.alphabet.ranks) {
    bool ok = true;
    detail::for_each_tuple(n, k, [&](const std::vector<int>& args) {
      if (!ok) return;
      bool hit = false;
      for (int q = 0; q < n && !hit; ++q)
        if (!(A.weight(sym, args, q) == B::zero())) hit = true;
      if (!hit) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// Exactly one target of weight one per (argument tuple, symbol), the rest zero.
template <Bimonoid B>
bool is_crisp_deterministic(const Wta<B>& A) {
  int n = static_cast<int>(A.states.size());
  for (const auto& [sym, k] : A.alphabet.ranks) {
    bool ok = true;
    detail::for_each_tuple(n, k, [&](const std::vector<int>& args) {
      if (!ok) return;
      int ones = 0, nonzero = 0;
      for (int q = 0; q < n; ++q) {
        auto w = A.weight(sym, args, q);
        if (w == B::zero()) continue;
        ++nonzero;
        if (w == B::one()) ++ones;
      }
      if (!(ones == 1 && nonzero == 1)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

// One step of the vector algebra: delta_A(sym) applied to child vectors.
// Products run left-to-right over the children with the transition weight
// last; tuples with a zero factor are skipped, which is sound because zero
// absorbs multiplication. Costs Theta(|Q|^(k+1)) per node in the worst case.
template <Bimonoid B>
std::vector<typename B::Value> apply_delta(const Wta<B>& A, const std::string& sym,
                                           const std::vector<std::vector<typename B::Value>>& kids) {
  int n = static_cast<int>(A.states.size());
  std::vector<typename B::Value> out(static_cast<std::size_t>(n), B::zero());
  A.for_symbol(sym, [&](const std::vector<int>& args, int target, const typename B::Value& w) {
    typename B::Value prod = B::one();
    for (std::size_t i = 0; i < args.size(); ++i) {
      const auto& v = kids[i][static_cast<std::size_t>(args[i])];
      if (v == B::zero()) return;
      prod = B::times(prod, v);
    }
    auto& slot = out[static_cast<std::size_t>(target)];
    slot = B::plus(slot, B::times(prod, w));
  });
  return out;
}

template <Bimonoid B>
std::vector<typename B::Value> eval_vector(const Wta<B>& A, const Tree& t) {
  if (auto err = check_tree(A.alphabet, t)) throw AlphabetMismatch(*err);
  std::vector<std::vector<typename B::Value>> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(eval_vector(A, c));
  return apply_delta(A, t.symbol(), kids);
}

template <Bimonoid B>
typename B::Value eval_init(const Wta<B>& A, const Tree& t) {
  auto h = eval_vector(A, t);
  typename B::Value acc = B::zero();
  for (std::size_t q = 0; q < h.size(); ++q) acc = B::plus(acc, B::times(h[q], A.finals[q]));
  return acc;
}

// p_t(q, b) = number of q-runs on t of weight b, with exact counts. Runs of
// weight zero are counted like any other.
template <Bimonoid B>
using RunProfile = std::map<std::pair<int, typename B::Value>, BigNat>;

template <Bimonoid B>
RunProfile<B> run_profile(const Wta<B>& A, const Tree& t) {
  if (auto err = check_tree(A.alphabet, t)) throw AlphabetMismatch(*err);
  int n = static_cast<int>(A.states.size());
  std::vector<RunProfile<B>> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(run_profile(A, c));

  RunProfile<B> out;
  // Combine one entry per child, in all ways.
  std::function<void(std::size_t, const typename B::Value&, const BigNat&, std::vector<int>&)> rec =
      [&](std::size_t i, const typename B::Value& prod, const BigNat& count,
          std::vector<int>& args) {
        if (i == kids.size()) {
          for (int q = 0; q < n; ++q) {
            typename B::Value b = B::times(prod, A.weight(t.symbol(), args, q));
            out[{q, b}] += count;
          }
          return;
        }
        for (const auto& [key, c] : kids[i]) {
          args.push_back(key.first);
          rec(i + 1, B::times(prod, key.second), count * c, args);
          args.pop_back();
        }
      };
  std::vector<int> args;
  rec(0, B::one(), BigNat(1), args);
  return out;
}

// Run semantics through the counting profile; exact for every input.
template <Bimonoid B>
typename B::Value eval_run(const Wta<B>& A, const Tree& t) {
  RunProfile<B> prof = run_profile(A, t);
  typename B::Value acc = B::zero();
  for (const auto& [key, count] : prof) {
    const auto& [q, b] = key;
    acc = B::plus(acc, nfold_sum<B>(B::times(b, A.finals[static_cast<std::size_t>(q)]), count));
  }
  return acc;
}

inline constexpr std::uint64_t kDefaultRunCap = 1000000;

// Literal enumeration of all |Q|^|pos(t)| runs. Only sensible for small
// inputs; prefer eval_run.
template <Bimonoid B>
typename B::Value eval_run_naive(const Wta<B>& A, const Tree& t,
                                 std::uint64_t cap = kDefaultRunCap) {
  if (auto err = check_tree(A.alphabet, t)) throw AlphabetMismatch(*err);
  int n = static_cast<int>(A.states.size());
  int npos = t.size();
  BigNat total = boost::multiprecision::pow(BigNat(n), static_cast<unsigned>(npos));
  if (total > cap)
    throw SafetyCapExceeded("run count " + total.str() + " exceeds cap " + std::to_string(cap));

  // A run assigns a state to each position, encoded in preorder.
  std::vector<int> run(static_cast<std::size_t>(npos), 0);
  std::function<std::pair<int, typename B::Value>(const Tree&, std::size_t&)> wt =
      [&](const Tree& node, std::size_t& idx) -> std::pair<int, typename B::Value> {
    int my_state = run[idx++];
    typename B::Value prod = B::one();
    std::vector<int> kid_states;
    kid_states.reserve(node.children().size());
    for (const Tree& c : node.children()) {
      auto [qs, w] = wt(c, idx);
      kid_states.push_back(qs);
      prod = B::times(prod, w);
    }
    return {my_state, B::times(prod, A.weight(node.symbol(), kid_states, my_state))};
  };

  typename B::Value acc = B::zero();
  while (true) {
    std::size_t idx = 0;
    auto [root_state, w] = wt(t, idx);
    acc = B::plus(acc, B::times(w, A.finals[static_cast<std::size_t>(root_state)]));
    int i = npos - 1;
    while (i >= 0 && run[static_cast<std::size_t>(i)] == n - 1) {
      run[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++run[static_cast<std::size_t>(i)];
  }
  return acc;
}

template <Bimonoid B>
Wta<B> final_variant(const Wta<B>& A, std::vector<typename B::Value> roots) {
  if (roots.size() != A.states.size()) throw Error("final variant needs one weight per state");
  Wta<B> out = A;
  out.finals = std::move(roots);
  return out;
}

}  // namespace wta
