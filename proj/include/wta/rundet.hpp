#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wta/automaton.hpp"

namespace wta {

template <Bimonoid B>
struct OrderData {
  std::set<typename B::Value> closure;  // multiplicative closure of im(delta)
  BigNat index;                         // largest additive index over closure (x) im(F)
  BigNat period;                        // lcm of the additive periods
};

enum class OrderStage { MultClosure, AdditiveOrder };

struct NotEstablished {
  OrderStage stage;
};

// Collapses a run count into [0, index+period-1] while preserving n*x for
// every element whose index/period divide the given ones.
inline BigNat j_map(const BigNat& n, const BigNat& index, const BigNat& period) {
  if (n < index) return n;
  return index + (n - index) % period;
}

template <Bimonoid B>
BigNat j_map(const BigNat& n, const OrderData<B>& od) {
  return j_map(n, od.index, od.period);
}

// im(delta) as a set: the stored weights, plus zero whenever some transition
// row is unlisted.
template <Bimonoid B>
std::set<typename B::Value> delta_image(const Wta<B>& A) {
  std::set<typename B::Value> img;
  BigNat stored = 0;
  for (const auto& [key, w] : A.delta) {
    img.insert(w);
    ++stored;
  }
  BigNat combos = 0;
  BigNat n = A.states.size();
  for (const auto& [sym, k] : A.alphabet.ranks)
    combos += boost::multiprecision::pow(n, static_cast<unsigned>(k + 1));
  if (stored < combos) img.insert(B::zero());
  return img;
}

// Establishes the finite order data when both budgets suffice: the
// multiplicative closure H of im(delta) must stay within closure_budget
// elements, and every element of H (x) im(F) must reveal its additive
// index/period within order_budget summands. Failure reports which stage gave
// up; the property itself is undecidable, so failure means unknown.
template <Bimonoid B>
std::variant<OrderData<B>, NotEstablished> check_finite_order_property(
    const Wta<B>& A, std::uint64_t closure_budget, std::uint64_t order_budget) {
  auto closure = mult_closure<B>(delta_image(A), closure_budget);
  if (!closure) return NotEstablished{OrderStage::MultClosure};

  std::set<typename B::Value> root_image(A.finals.begin(), A.finals.end());
  OrderData<B> od;
  od.closure = std::move(*closure);
  od.index = 1;
  od.period = 1;
  for (const auto& h : od.closure) {
    for (const auto& f : root_image) {
      auto ord = finite_order<B>(B::times(h, f), order_budget);
      if (!ord) return NotEstablished{OrderStage::AdditiveOrder};
      if (BigNat(ord->index) > od.index) od.index = ord->index;
      od.period = boost::multiprecision::lcm(od.period, BigNat(ord->period));
    }
  }
  return od;
}

// pi state: residues J(p(q,b)) keyed by (state, weight); zero residues are
// never stored, so equality is plain map equality.
template <Bimonoid B>
using PiState = std::map<std::pair<int, typename B::Value>, BigNat>;

// One step of the residue automaton. Mirrors the profile recurrence: for
// every choice of one key per child and every target state, the contributed
// count is the product of the child residues, folded through J. Keys of
// weight zero arise exactly when zero lies in the closure; they are kept,
// matching the profile convention that runs of weight zero are counted, and
// they never change a root weight because zero annihilates the final product.
template <Bimonoid B>
PiState<B> compute_pi(const std::string& sym, const std::vector<PiState<B>>& kids,
                      const Wta<B>& A, const OrderData<B>& od) {
  int n = static_cast<int>(A.states.size());
  PiState<B> out;
  std::vector<int> args;
  std::function<void(std::size_t, const typename B::Value&, const BigNat&)> rec =
      [&](std::size_t i, const typename B::Value& prod, const BigNat& count) {
        if (i == kids.size()) {
          for (int q = 0; q < n; ++q) {
            typename B::Value b = B::times(prod, A.weight(sym, args, q));
            BigNat& slot = out[{q, b}];
            slot = j_map(slot + count, od);
          }
          return;
        }
        for (const auto& [key, r] : kids[i]) {
          args.push_back(key.first);
          rec(i + 1, B::times(prod, key.second), count * r);
          args.pop_back();
        }
      };
  rec(0, B::one(), BigNat(1));
  return out;
}

// Crisp-determinization for the run semantics: saturate the pi states by the
// same worklist scheme as the Nerode construction. Termination is guaranteed
// by |Q_R| <= (index+period)^(|Q|*|H|); max_states only guards memory.
template <Bimonoid B>
std::variant<Wta<B>, BudgetExceeded> build_run_det(const Wta<B>& A, const OrderData<B>& od,
                                                   std::uint64_t max_states) {
  std::map<PiState<B>, int> index_of;
  std::vector<PiState<B>> pis;
  Wta<B> out;
  out.alphabet = A.alphabet;
  bool exceeded = false;

  auto discover = [&](const PiState<B>& pi) -> int {
    auto it = index_of.find(pi);
    if (it != index_of.end()) return it->second;
    if (pis.size() >= max_states) {
      exceeded = true;
      return -1;
    }
    int id = static_cast<int>(pis.size());
    index_of.emplace(pi, id);
    pis.push_back(pi);
    return id;
  };

  for (const auto& [sym, k] : A.alphabet.ranks) {
    if (k != 0) continue;
    int id = discover(compute_pi(sym, {}, A, od));
    if (exceeded) return BudgetExceeded{pis.size()};
    out.add_transition(sym, {}, id, B::one());
  }

  for (std::size_t i = 0; i < pis.size(); ++i) {
    for (const auto& [sym, k] : A.alphabet.ranks) {
      if (k == 0) continue;
      bool stop = false;
      detail::for_each_tuple(static_cast<int>(i) + 1, k, [&](const std::vector<int>& args) {
        if (stop) return;
        bool uses_i = false;
        for (int a : args)
          if (a == static_cast<int>(i)) uses_i = true;
        if (!uses_i) return;
        std::vector<PiState<B>> kid_pis;
        kid_pis.reserve(args.size());
        for (int a : args) kid_pis.push_back(pis[static_cast<std::size_t>(a)]);
        int id = discover(compute_pi(sym, kid_pis, A, od));
        if (exceeded) {
          stop = true;
          return;
        }
        out.add_transition(sym, args, id, B::one());
      });
      if (exceeded) return BudgetExceeded{pis.size()};
    }
  }

  for (std::size_t i = 0; i < pis.size(); ++i) {
    out.states.push_back("r" + std::to_string(i));
    typename B::Value fw = B::zero();
    for (const auto& [key, residue] : pis[i]) {
      const auto& [q, b] = key;
      fw = B::plus(fw,
                   nfold_sum<B>(B::times(b, A.finals[static_cast<std::size_t>(q)]), residue));
    }
    out.finals.push_back(fw);
  }
  return out;
}

}  // namespace wta
