#pragma once

// The randomized property suite, shared between the unit tests (small sample
// counts) and the acceptance run (full counts). Every failure is funneled
// through a reporter callback so both harnesses can present it their own way.

#include <functional>
#include <sstream>
#include <string>

#include "support/generators.hpp"
#include "wta/wta.hpp"

namespace props {

using namespace wta;
using gen::Rng;

struct Reporter {
  // called with a human-readable description of the failed check
  std::function<void(const std::string&)> fail;
  long checks = 0;
  void ok() { ++checks; }
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) fail(what);
  }
};

template <class B>
std::string show(const typename B::Value& v) {
  return B::print(v);
}

// Runs every bullet of the random suite over `n_wta` automata of one weight
// domain. Trees are bounded by max_size (6 in the acceptance run).
template <class B>
void check_family(Rng& rng, int n_wta, int max_size, Reporter& rep) {
  const std::string fam = B::name();
  std::uint64_t naive_cap = 2500;  // enumeration bound for the naive cross-check

  for (int round = 0; round < n_wta; ++round) {
    // --- general automaton: profile counts, naive agreement
    {
      Wta<B> A = gen::random_wta<B>(rng);
      std::vector<Tree> trees{Tree("alpha")};
      for (int i = 0; i < 2; ++i)
        trees.push_back(gen::random_tree(A.alphabet, max_size, rng));
      for (const Tree& t : trees) {
        RunProfile<B> prof = run_profile(A, t);
        BigNat total = 0;
        for (const auto& [key, c] : prof) total += c;
        BigNat expected = boost::multiprecision::pow(BigNat(A.states.size()),
                                                     static_cast<unsigned>(t.size()));
        rep.expect(total == expected,
                   fam + ": profile count sum != |Q|^|pos| on " + t.str());

        BigNat runs = expected;
        if (runs <= naive_cap) {
          auto fast = eval_run(A, t);
          auto slow = eval_run_naive(A, t, naive_cap);
          rep.expect(fast == slow, fam + ": eval_run != eval_run_naive on " + t.str() +
                                       " (" + show<B>(fast) + " vs " + show<B>(slow) + ")");
        }
        if (B::is_semiring) {
          auto i = eval_init(A, t);
          auto r = eval_run(A, t);
          rep.expect(i == r, fam + ": semiring init != run on " + t.str() + " (" +
                                 show<B>(i) + " vs " + show<B>(r) + ")");
        }
      }
    }

    // --- bu-deterministic automaton: init = run, at most one nonzero h entry
    {
      Wta<B> A = gen::random_budet_wta<B>(rng);
      rep.expect(is_bu_deterministic(A), fam + ": generator made a non-bu-det automaton");
      for (int i = 0; i < 2; ++i) {
        Tree t = gen::random_tree(A.alphabet, max_size, rng);
        auto vec = eval_vector(A, t);
        int nonzero = 0;
        for (const auto& v : vec)
          if (!(v == B::zero())) ++nonzero;
        rep.expect(nonzero <= 1, fam + ": bu-det automaton with " + std::to_string(nonzero) +
                                     " nonzero h entries on " + t.str());
        auto iv = eval_init(A, t);
        auto rv = eval_run(A, t);
        rep.expect(iv == rv, fam + ": bu-det init != run on " + t.str() + " (" + show<B>(iv) +
                                 " vs " + show<B>(rv) + ")");
      }
    }

    // --- crisp automaton: relatedness round trip, h one-hot, algebra
    //     agreement, determinizer size comparison
    {
      Wta<B> A = gen::random_crisp_wta<B>(rng);
      rep.expect(is_crisp_deterministic(A), fam + ": generator made a non-crisp automaton");
      RootAlgebra<B> K = to_algebra(A);
      rep.expect(to_wta(K) == A, fam + ": rel round trip changed the automaton");
      for (int i = 0; i < 2; ++i) {
        Tree t = gen::random_tree(A.alphabet, max_size, rng);
        auto vec = eval_vector(A, t);
        int ones = 0, nonzero = 0;
        for (const auto& v : vec) {
          if (!(v == B::zero())) ++nonzero;
          if (v == B::one()) ++ones;
        }
        rep.expect(ones == 1 && nonzero == 1,
                   fam + ": crisp automaton h vector not one-hot on " + t.str());
        rep.expect(alg_eval(K, t) == eval_init(A, t),
                   fam + ": algebra semantics != initial semantics on " + t.str());
      }

      if (B::is_semiring) {  // right distributive
        auto nres = build_nerode(A, 300);
        auto order = check_finite_order_property(A, 300, 300);
        if (std::holds_alternative<NerodeSuccess<B>>(nres) &&
            std::holds_alternative<OrderData<B>>(order)) {
          auto rres = build_run_det(A, std::get<OrderData<B>>(order), 4000);
          if (std::holds_alternative<Wta<B>>(rres)) {
            const auto& ndet = std::get<NerodeSuccess<B>>(nres).automaton;
            const auto& rdet = std::get<Wta<B>>(rres);
            rep.expect(ndet.states.size() <= rdet.states.size(),
                       fam + ": |Q_N| = " + std::to_string(ndet.states.size()) +
                           " > |Q_R| = " + std::to_string(rdet.states.size()));
            // over a semiring both determinizations describe one mapping
            for (int i = 0; i < 2; ++i) {
              Tree t = gen::random_tree(A.alphabet, max_size, rng);
              rep.expect(eval_init(ndet, t) == eval_run(rdet, t),
                         fam + ": the two determinizations disagree on " + t.str());
            }
          } else {
            rep.ok();
          }
        } else {
          rep.ok();
        }
      }
    }

    // --- direct product semantics
    {
      Rng sub(rng());
      RootAlgebra<B> K1 = to_algebra(gen::random_crisp_wta<B>(sub));
      RootAlgebra<B> K2 = to_algebra(gen::random_crisp_wta<B>(sub));
      if (!(K2.alphabet == K1.alphabet)) {
        // fall back to a final variant of K1 so the alphabets line up
        K2 = K1;
        for (auto& w : K2.root) w = gen::random_weight<B>(sub, 0.3);
      }
      RootAlgebra<B> P = direct_product<B>({K1, K2});
      for (int i = 0; i < 2; ++i) {
        Tree t = gen::random_tree(K1.alphabet, max_size, rng);
        auto lhs = alg_eval(P, t);
        auto rhs = B::times(alg_eval(K1, t), alg_eval(K2, t));
        rep.expect(lhs == rhs, fam + ": product semantics mismatch on " + t.str() + " (" +
                                   show<B>(lhs) + " vs " + show<B>(rhs) + ")");
      }
    }
  }
}

}  // namespace props
