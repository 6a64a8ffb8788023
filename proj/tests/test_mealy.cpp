#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "wta/mealy.hpp"
#include "wta/rundet.hpp"

using namespace wta;

namespace {

std::vector<std::string> word(const std::string& letters) {
  std::vector<std::string> w;
  for (char c : letters) w.emplace_back(1, c);
  return w;
}

MealyMachine identity_machine() {
  MealyMachine M;
  M.states = {"p", "q"};
  M.alphabet = {"a", "b"};
  M.tau = {{1, 0}, {0, 1}};  // arbitrary movement
  M.out = {{0, 1}, {0, 1}};  // always copy
  return M;
}

MealyMachine constant_machine() {
  MealyMachine M;
  M.states = {"s"};
  M.alphabet = {"a", "b", "c"};
  M.tau = {{0, 0, 0}};
  M.out = {{2, 2, 2}};  // always c
  return M;
}

}  // namespace

TEST_CASE("induced mappings") {
  CHECK(induced_map(identity_machine(), 0).kind() == SeqFn::Kind::Identity);
  CHECK(induced_map(identity_machine(), 1).kind() == SeqFn::Kind::Identity);
  CHECK(induced_map(identity_machine(), 0) == SeqFnBimonoid::one());

  auto c = induced_map(constant_machine(), 0);
  CHECK(c.apply(word("ab")) == word("cc"));
  CHECK(c.apply(word("")) == word(""));

  // the transducer realizes the recurrence on every short word
  gen::Rng rng(5);
  for (int i = 0; i < 25; ++i) {
    MealyMachine M = gen::random_mealy(rng);
    auto words = oracle::all_words(M.alphabet, 5);
    for (std::size_t q = 0; q < M.states.size(); ++q) {
      SeqFn f = induced_map(M, static_cast<int>(q));
      for (const auto& w : words)
        CHECK(f.apply(w) == oracle::mealy_word(M, static_cast<int>(q), w));
    }
  }
}

TEST_CASE("composition laws and the word oracle") {
  auto swap = induced_map(fixtures::swap_machine(), 0);
  CHECK(compose(SeqFn::identity_fn(), swap) == swap);
  CHECK(compose(swap, SeqFn::identity_fn()) == swap);
  CHECK(compose(SeqFn::zero_fn(), swap) == SeqFn::zero_fn());
  CHECK(compose(swap, SeqFn::zero_fn()) == SeqFn::zero_fn());
  CHECK(compose(swap, swap) == SeqFn::identity_fn());

  gen::Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    MealyMachine M = gen::random_mealy(rng, 3, 2);
    MealyMachine N = gen::random_mealy(rng, 3, 2);
    while (N.alphabet.size() != M.alphabet.size()) N = gen::random_mealy(rng, 3, 2);
    N.alphabet = M.alphabet;  // share the alphabet
    SeqFn f = induced_map(M, 0);
    SeqFn g = induced_map(N, 0);
    SeqFn fg = compose(f, g);
    for (const auto& w : oracle::all_words(M.alphabet, 5)) {
      auto via_g = g.apply(w);
      REQUIRE(via_g.has_value());
      CHECK(fg.apply(w) == f.apply(*via_g));
    }
    // associativity up to canonical form
    SeqFn h = induced_map(M, M.states.size() > 1 ? 1 : 0);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }

  MealyMachine two_letters = fixtures::swap_machine();
  MealyMachine three_letters = constant_machine();
  CHECK_THROWS_AS(compose(induced_map(two_letters, 0), induced_map(three_letters, 0)),
                  AlphabetMismatch);
}

TEST_CASE("canonical forms separate functions exactly") {
  gen::Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    MealyMachine M = gen::random_mealy(rng, 3, 2);
    MealyMachine N = gen::random_mealy(rng, 3, 2);
    while (N.alphabet.size() != M.alphabet.size()) N = gen::random_mealy(rng, 3, 2);
    N.alphabet = M.alphabet;
    SeqFn f = induced_map(M, 0);
    SeqFn g = induced_map(N, 0);
    // distinguishing-word bound: |f| * |g| suffices
    int bound = std::max(1, f.state_count()) * std::max(1, g.state_count());
    bool agree = true;
    for (const auto& w : oracle::all_words(M.alphabet, bound))
      if (f.apply(w) != g.apply(w)) agree = false;
    CHECK((f == g) == agree);
  }
}

TEST_CASE("lcp sum is zero-neutral, idempotent, and otherwise refuses") {
  auto swap = induced_map(fixtures::swap_machine(), 0);
  auto plus_one = induced_map(fixtures::adder_machine(), 1);
  CHECK(lcp_sum(SeqFn::zero_fn(), swap) == swap);
  CHECK(lcp_sum(swap, SeqFn::zero_fn()) == swap);
  CHECK(lcp_sum(swap, swap) == swap);
  CHECK_THROWS_AS(lcp_sum(swap, plus_one), NotRepresentable);
  CHECK_THROWS_AS(lcp_sum(SeqFn::identity_fn(), swap), NotRepresentable);
}

TEST_CASE("monoid exploration") {
  MealyMachine one_state_id;
  one_state_id.states = {"s"};
  one_state_id.alphabet = {"a", "b"};
  one_state_id.tau = {{0, 0}};
  one_state_id.out = {{0, 1}};
  auto tiny = explore_monoid(one_state_id, 10);
  REQUIRE(std::holds_alternative<std::set<SeqFn>>(tiny));
  CHECK(std::get<std::set<SeqFn>>(tiny).size() == 1);

  auto swap_closure = explore_monoid(fixtures::swap_machine(), 10);
  REQUIRE(std::holds_alternative<std::set<SeqFn>>(swap_closure));
  auto& set = std::get<std::set<SeqFn>>(swap_closure);
  CHECK(set.size() == 2);
  CHECK(set.count(SeqFn::identity_fn()) == 1);
  CHECK(set.count(induced_map(fixtures::swap_machine(), 0)) == 1);

  auto adder_closure = explore_monoid(fixtures::adder_machine(), 5);
  REQUIRE(std::holds_alternative<BudgetExceeded>(adder_closure));

  // oracle for the growth: increments by 1..6 are pairwise distinct functions
  SeqFn plus_one = induced_map(fixtures::adder_machine(), 1);
  std::vector<SeqFn> powers{plus_one};
  for (int i = 1; i < 6; ++i) powers.push_back(compose(powers.back(), plus_one));
  std::set<SeqFn> distinct(powers.begin(), powers.end());
  CHECK(distinct.size() == powers.size());
}

TEST_CASE("the simulating automaton evaluates to composition chains") {
  MealyMachine M = fixtures::adder_machine();
  auto A = to_wta(M);
  CHECK(is_bu_deterministic(A));
  CHECK(A.states.size() == 1);

  CHECK(eval_init(A, parse_tree("e")) == SeqFn::identity_fn());

  // chain c1 c0 c1 e, outermost first: composes innermost-first
  Tree chain = parse_tree("c1(c0(c1(e)))");
  SeqFn expected = compose(induced_map(M, 1), compose(induced_map(M, 0), induced_map(M, 1)));
  CHECK(eval_init(A, chain) == expected);

  // initial and run semantics agree on the bu-deterministic simulator
  for (const Tree& t : enumerate_trees(A.alphabet, 5))
    CHECK(eval_init(A, t) == eval_run(A, t));
}

TEST_CASE("image of the simulator matches the explored monoid per depth") {
  for (const MealyMachine& M : {fixtures::swap_machine(), fixtures::adder_machine()}) {
    auto A = to_wta(M);
    for (int depth = 1; depth <= 4; ++depth) {
      std::set<SeqFn> image;
      for (const Tree& t : enumerate_trees(A.alphabet, depth + 1))
        image.insert(eval_init(A, t));
      CHECK(image == monoid_at_depth(M, depth));
    }
  }
}

TEST_CASE("finite order property of the simulator tracks monoid finiteness") {
  auto swap_wta = to_wta(fixtures::swap_machine());
  auto res = check_finite_order_property(swap_wta, 16, 16);
  CHECK(std::holds_alternative<OrderData<SeqFnBimonoid>>(res));

  auto adder_wta = to_wta(fixtures::adder_machine());
  auto res2 = check_finite_order_property(adder_wta, 16, 16);
  auto* failed = std::get_if<NotEstablished>(&res2);
  REQUIRE(failed != nullptr);
  CHECK(failed->stage == OrderStage::MultClosure);
}

TEST_CASE("seqfn text encoding round trips") {
  auto swap = induced_map(fixtures::swap_machine(), 0);
  auto plus_one = induced_map(fixtures::adder_machine(), 1);
  for (const SeqFn& f : {SeqFn::identity_fn(), SeqFn::zero_fn(), swap, plus_one,
                         compose(plus_one, plus_one)}) {
    auto round = SeqFn::decode(f.encode());
    REQUIRE(round.has_value());
    CHECK(*round == f);
  }
  CHECK(!SeqFn::decode("{a=a,b;t=9.a,0.b}").has_value());  // dangling target
  CHECK(!SeqFn::decode("{a=;t=}").has_value());
  CHECK(!SeqFn::decode("junk").has_value());
  // a non-minimal spelling of the identity is rejected as non-canonical
  CHECK(!SeqFn::decode("{a=a,b;t=0.a,0.b}").has_value());
}
