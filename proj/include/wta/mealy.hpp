#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wta/automaton.hpp"

namespace wta {

// Deterministic letter-to-letter transducer; transition and output are total.
struct MealyMachine {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::vector<int>> tau;  // [state][letter] -> state
  std::vector<std::vector<int>> out;  // [state][letter] -> letter

  int state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<int>(i);
    throw Error("unknown mealy state: " + name);
  }
  int letter_index(const std::string& name) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return static_cast<int>(i);
    throw Error("unknown letter: " + name);
  }
};

// A length-preserving sequential function: the mapping induced by a Mealy
// machine at some state, kept as a pointed complete transducer in canonical
// form (reachable part, merged equivalent states, breadth-first numbering,
// initial state 0, letters sorted). The two special points of the function
// bimonoid get their own tags: `zero` maps everything to the absorbing
// infinity point, `id` is the identity on words.
class SeqFn {
 public:
  enum class Kind { Zero, Identity, Machine };

  static SeqFn zero_fn() { return SeqFn(Kind::Zero); }
  static SeqFn identity_fn() { return SeqFn(Kind::Identity); }

  // Builds the canonical form of the transducer (alphabet, tau, out) pointed
  // at `initial`. Matrix columns follow the given alphabet order.
  static SeqFn machine(std::vector<std::string> alphabet, int initial,
                       std::vector<std::vector<int>> tau, std::vector<std::vector<int>> out) {
    SeqFn f(Kind::Machine);
    // sort letters, permuting columns
    std::vector<std::size_t> perm(alphabet.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return alphabet[a] < alphabet[b]; });
    std::vector<int> letter_rank(alphabet.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos)
      letter_rank[perm[pos]] = static_cast<int>(pos);
    f.alphabet_.reserve(alphabet.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos)
      f.alphabet_.push_back(alphabet[perm[pos]]);
    std::size_t n = tau.size();
    f.tau_.resize(n * alphabet.size());
    f.out_.resize(n * alphabet.size());
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t pos = 0; pos < perm.size(); ++pos) {
        f.tau_[s * alphabet.size() + pos] = tau[s][perm[pos]];
        f.out_[s * alphabet.size() + pos] = letter_rank[static_cast<std::size_t>(out[s][perm[pos]])];
      }
    }
    f.n_ = static_cast<int>(n);
    f.initial_ = initial;
    f.canonicalize();
    return f;
  }

  Kind kind() const { return kind_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int state_count() const { return n_; }

  // Applies the function to a word; nullopt encodes the infinity point.
  std::optional<std::vector<std::string>> apply(const std::vector<std::string>& word) const {
    if (kind_ == Kind::Zero) return std::nullopt;
    if (kind_ == Kind::Identity) return word;
    std::vector<std::string> result;
    result.reserve(word.size());
    int s = initial_;
    for (const std::string& a : word) {
      auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), a);
      if (it == alphabet_.end() || *it != a)
        throw AlphabetMismatch("letter " + a + " not in the function's alphabet");
      int l = static_cast<int>(it - alphabet_.begin());
      result.push_back(alphabet_[static_cast<std::size_t>(cell(out_, s, l))]);
      s = cell(tau_, s, l);
    }
    return result;
  }

  friend bool operator==(const SeqFn& a, const SeqFn& b) {
    return a.kind_ == b.kind_ && a.alphabet_ == b.alphabet_ && a.n_ == b.n_ && a.tau_ == b.tau_ &&
           a.out_ == b.out_;
  }
  friend bool operator<(const SeqFn& a, const SeqFn& b) {
    auto ka = static_cast<int>(a.kind_), kb = static_cast<int>(b.kind_);
    if (ka != kb) return ka < kb;
    if (a.alphabet_ != b.alphabet_) return a.alphabet_ < b.alphabet_;
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.tau_ != b.tau_) return a.tau_ < b.tau_;
    return a.out_ < b.out_;
  }

  // Composition f after g: feed the input through g, then through f.
  friend SeqFn compose(const SeqFn& f, const SeqFn& g) {
    if (f.kind_ == Kind::Zero || g.kind_ == Kind::Zero) return zero_fn();
    if (f.kind_ == Kind::Identity) return g;
    if (g.kind_ == Kind::Identity) return f;
    if (f.alphabet_ != g.alphabet_)
      throw AlphabetMismatch("composed functions must share one alphabet");
    int L = static_cast<int>(f.alphabet_.size());
    // reachable product states, breadth-first
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> order;
    std::queue<std::pair<int, int>> work;
    auto visit = [&](std::pair<int, int> p) {
      if (id.emplace(p, static_cast<int>(order.size())).second) {
        order.push_back(p);
        work.push(p);
      }
    };
    visit({f.initial_, g.initial_});
    std::vector<std::vector<int>> tau, out;
    while (!work.empty()) {
      auto [sf, sg] = work.front();
      work.pop();
      std::vector<int> trow(static_cast<std::size_t>(L)), orow(static_cast<std::size_t>(L));
      for (int l = 0; l < L; ++l) {
        int mid = g.cell(g.out_, sg, l);
        orow[static_cast<std::size_t>(l)] = f.cell(f.out_, sf, mid);
        std::pair<int, int> next{f.cell(f.tau_, sf, mid), g.cell(g.tau_, sg, l)};
        visit(next);
        trow[static_cast<std::size_t>(l)] = id[next];
      }
      tau.push_back(std::move(trow));
      out.push_back(std::move(orow));
    }
    return machine(f.alphabet_, 0, std::move(tau), std::move(out));
  }

  // Pointwise longest-common-prefix sum, restricted to the summands that can
  // actually meet here: zero is neutral and equal operands are idempotent.
  // Anything else has no representation in this encoding.
  friend SeqFn lcp_sum(const SeqFn& f, const SeqFn& g) {
    if (f.kind_ == Kind::Zero) return g;
    if (g.kind_ == Kind::Zero) return f;
    if (f == g) return f;
    throw NotRepresentable("lcp of two distinct sequential functions");
  }

  std::string encode() const {
    if (kind_ == Kind::Zero) return "zero";
    if (kind_ == Kind::Identity) return "id";
    std::string s = "{a=";
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      if (i) s += ',';
      s += alphabet_[i];
    }
    s += ";t=";
    for (std::size_t i = 0; i < tau_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(tau_[i]);
      s += '.';
      s += alphabet_[static_cast<std::size_t>(out_[i])];
    }
    s += '}';
    return s;
  }

  // Accepts exactly the canonical spellings produced by encode().
  static std::optional<SeqFn> decode(std::string_view text) {
    if (text == "zero") return zero_fn();
    if (text == "id") return identity_fn();
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
    std::string_view body = text.substr(1, text.size() - 2);
    auto semi = body.find(";t=");
    if (body.substr(0, 2) != "a=" || semi == std::string_view::npos) return std::nullopt;
    std::string_view letters = body.substr(2, semi - 2);
    std::string_view cells = body.substr(semi + 3);

    std::vector<std::string> alphabet;
    for (std::size_t start = 0; start <= letters.size();) {
      auto comma = letters.find(',', start);
      if (comma == std::string_view::npos) comma = letters.size();
      if (comma == start) return std::nullopt;
      alphabet.emplace_back(letters.substr(start, comma - start));
      start = comma + 1;
      if (start == letters.size() + 1) break;
    }
    if (alphabet.empty()) return std::nullopt;

    std::vector<int> tau_flat;
    std::vector<int> out_flat;
    for (std::size_t start = 0; start <= cells.size();) {
      auto comma = cells.find(',', start);
      if (comma == std::string_view::npos) comma = cells.size();
      std::string_view cellv = cells.substr(start, comma - start);
      auto dot = cellv.find('.');
      if (dot == std::string_view::npos || dot == 0) return std::nullopt;
      std::string_view tgt = cellv.substr(0, dot);
      std::string letter(cellv.substr(dot + 1));
      int t = 0;
      for (char c : tgt) {
        if (c < '0' || c > '9') return std::nullopt;
        t = t * 10 + (c - '0');
      }
      auto it = std::find(alphabet.begin(), alphabet.end(), letter);
      if (it == alphabet.end()) return std::nullopt;
      tau_flat.push_back(t);
      out_flat.push_back(static_cast<int>(it - alphabet.begin()));
      start = comma + 1;
      if (start == cells.size() + 1) break;
    }
    if (tau_flat.empty() || tau_flat.size() % alphabet.size() != 0) return std::nullopt;
    std::size_t n = tau_flat.size() / alphabet.size();
    std::vector<std::vector<int>> tau(n), out(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t l = 0; l < alphabet.size(); ++l) {
        int t = tau_flat[s * alphabet.size() + l];
        if (t < 0 || static_cast<std::size_t>(t) >= n) return std::nullopt;
        tau[s].push_back(t);
        out[s].push_back(out_flat[s * alphabet.size() + l]);
      }
    }
    SeqFn f = machine(alphabet, 0, std::move(tau), std::move(out));
    if (f.encode() != std::string(text)) return std::nullopt;  // not canonical
    return f;
  }

 private:
  explicit SeqFn(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<std::string> alphabet_;
  int n_ = 0;
  int initial_ = 0;
  std::vector<int> tau_;  // n x |alphabet|
  std::vector<int> out_;

  int L() const { return static_cast<int>(alphabet_.size()); }
  int cell(const std::vector<int>& m, int s, int l) const {
    return m[static_cast<std::size_t>(s) * static_cast<std::size_t>(L()) +
             static_cast<std::size_t>(l)];
  }
  static int cell_of(const std::vector<int>& m, int width, int s, int l) {
    return m[static_cast<std::size_t>(s) * static_cast<std::size_t>(width) +
             static_cast<std::size_t>(l)];
  }

  void canonicalize() {
    int L_ = L();
    // reachable restriction
    std::vector<int> map_old(static_cast<std::size_t>(n_), -1);
    std::vector<int> order;
    std::queue<int> work;
    map_old[static_cast<std::size_t>(initial_)] = 0;
    order.push_back(initial_);
    work.push(initial_);
    while (!work.empty()) {
      int s = work.front();
      work.pop();
      for (int l = 0; l < L_; ++l) {
        int t = cell(tau_, s, l);
        if (map_old[static_cast<std::size_t>(t)] < 0) {
          map_old[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
          order.push_back(t);
          work.push(t);
        }
      }
    }
    std::vector<int> tau2, out2;
    tau2.reserve(order.size() * static_cast<std::size_t>(L_));
    out2.reserve(order.size() * static_cast<std::size_t>(L_));
    for (int s : order) {
      for (int l = 0; l < L_; ++l) {
        tau2.push_back(map_old[static_cast<std::size_t>(cell(tau_, s, l))]);
        out2.push_back(cell(out_, s, l));
      }
    }
    tau_ = std::move(tau2);
    out_ = std::move(out2);
    n_ = static_cast<int>(order.size());
    initial_ = 0;

    // partition refinement on output behavior
    std::vector<int> cls(static_cast<std::size_t>(n_));
    {
      std::map<std::vector<int>, int> sig_class;
      for (int s = 0; s < n_; ++s) {
        std::vector<int> sig;
        for (int l = 0; l < L_; ++l) sig.push_back(cell(out_, s, l));
        cls[static_cast<std::size_t>(s)] =
            sig_class.emplace(std::move(sig), static_cast<int>(sig_class.size())).first->second;
      }
    }
    while (true) {
      std::map<std::vector<int>, int> sig_class;
      std::vector<int> next(static_cast<std::size_t>(n_));
      for (int s = 0; s < n_; ++s) {
        std::vector<int> sig{cls[static_cast<std::size_t>(s)]};
        for (int l = 0; l < L_; ++l)
          sig.push_back(cls[static_cast<std::size_t>(cell(tau_, s, l))]);
        next[static_cast<std::size_t>(s)] =
            sig_class.emplace(std::move(sig), static_cast<int>(sig_class.size())).first->second;
      }
      if (next == cls) break;
      cls = std::move(next);
    }

    // quotient, then breadth-first renumbering from the initial class
    int classes = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<int> rep(static_cast<std::size_t>(classes), -1);
    for (int s = n_ - 1; s >= 0; --s) rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(s)])] = s;
    std::vector<int> bfs_id(static_cast<std::size_t>(classes), -1);
    std::vector<int> bfs_order;
    std::queue<int> bq;
    int init_cls = cls[static_cast<std::size_t>(initial_)];
    bfs_id[static_cast<std::size_t>(init_cls)] = 0;
    bfs_order.push_back(init_cls);
    bq.push(init_cls);
    while (!bq.empty()) {
      int c = bq.front();
      bq.pop();
      int s = rep[static_cast<std::size_t>(c)];
      for (int l = 0; l < L_; ++l) {
        int tc = cls[static_cast<std::size_t>(cell(tau_, s, l))];
        if (bfs_id[static_cast<std::size_t>(tc)] < 0) {
          bfs_id[static_cast<std::size_t>(tc)] = static_cast<int>(bfs_order.size());
          bfs_order.push_back(tc);
          bq.push(tc);
        }
      }
    }
    std::vector<int> tau3, out3;
    for (int c : bfs_order) {
      int s = rep[static_cast<std::size_t>(c)];
      for (int l = 0; l < L_; ++l) {
        tau3.push_back(bfs_id[static_cast<std::size_t>(cls[static_cast<std::size_t>(cell(tau_, s, l))])]);
        out3.push_back(cell(out_, s, l));
      }
    }
    tau_ = std::move(tau3);
    out_ = std::move(out3);
    n_ = static_cast<int>(bfs_order.size());
    initial_ = 0;

    // the one-state identity transducer is the multiplicative unit
    if (n_ == 1) {
      bool ident = true;
      for (int l = 0; l < L_; ++l)
        if (cell(out_, 0, l) != l) ident = false;
      if (ident) {
        kind_ = Kind::Identity;
        alphabet_.clear();
        tau_.clear();
        out_.clear();
        n_ = 0;
      }
    }
  }
};

// The strong bimonoid of representable sequential functions: lcp as the
// (partial) sum, composition as the product.
struct SeqFnBimonoid {
  using Value = SeqFn;
  static constexpr bool is_semiring = false;
  static constexpr bool is_add_idempotent = true;
  static std::string name() { return "seqfn"; }
  static Value zero() { return SeqFn::zero_fn(); }
  static Value one() { return SeqFn::identity_fn(); }
  static Value plus(const Value& a, const Value& b) { return lcp_sum(a, b); }
  static Value times(const Value& a, const Value& b) { return compose(a, b); }
  static std::string print(const Value& v) { return v.encode(); }
  static std::optional<Value> parse(std::string_view s) { return SeqFn::decode(s); }
};

// nu_q as a canonical sequential function.
inline SeqFn induced_map(const MealyMachine& M, int q) {
  return SeqFn::machine(M.alphabet, q, M.tau, M.out);
}

inline std::vector<SeqFn> generators(const MealyMachine& M) {
  std::vector<SeqFn> gens;
  gens.reserve(M.states.size());
  for (std::size_t q = 0; q < M.states.size(); ++q)
    gens.push_back(induced_map(M, static_cast<int>(q)));
  return gens;
}

// Elements expressible as compositions of at most `depth` induced mappings
// (the identity is the empty composition).
inline std::set<SeqFn> monoid_at_depth(const MealyMachine& M, int depth) {
  std::vector<SeqFn> gens = generators(M);
  std::set<SeqFn> all{SeqFn::identity_fn()};
  std::vector<SeqFn> layer{SeqFn::identity_fn()};
  for (int d = 0; d < depth; ++d) {
    std::vector<SeqFn> next;
    for (const SeqFn& x : layer) {
      for (const SeqFn& g : gens) {
        SeqFn y = compose(x, g);
        if (all.insert(y).second) next.push_back(y);
      }
    }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return all;
}

// Breadth-first closure of the induced mappings under composition; nullopt is
// replaced by BudgetExceeded once more than `budget` distinct elements show
// up. Finiteness of the full monoid is undecidable, so the budget is the only
// stopping rule.
inline std::variant<std::set<SeqFn>, BudgetExceeded> explore_monoid(const MealyMachine& M,
                                                                    std::uint64_t budget) {
  std::vector<SeqFn> gens = generators(M);
  std::set<SeqFn> all{SeqFn::identity_fn()};
  if (all.size() > budget) return BudgetExceeded{all.size()};
  std::queue<SeqFn> work;
  work.push(SeqFn::identity_fn());
  while (!work.empty()) {
    SeqFn x = work.front();
    work.pop();
    for (const SeqFn& g : gens) {
      SeqFn y = compose(x, g);
      if (all.insert(y).second) {
        if (all.size() > budget) return BudgetExceeded{all.size()};
        work.push(y);
      }
    }
  }
  return all;
}

// The one-state automaton over the function bimonoid that simulates M on
// monadic trees: machine states become unary symbols, a fresh nullary symbol
// denotes the empty word, and every weight is an induced mapping.
inline Wta<SeqFnBimonoid> to_wta(const MealyMachine& M) {
  std::string leaf = "e";
  while (std::find(M.states.begin(), M.states.end(), leaf) != M.states.end()) leaf += "_";
  Wta<SeqFnBimonoid> A;
  for (const std::string& q : M.states) A.alphabet.ranks[q] = 1;
  A.alphabet.ranks[leaf] = 0;
  A.states = {"*"};
  A.finals = {SeqFn::identity_fn()};
  A.add_transition(leaf, {}, 0, SeqFn::identity_fn());
  for (std::size_t q = 0; q < M.states.size(); ++q)
    A.add_transition(M.states[q], {0}, 0, induced_map(M, static_cast<int>(q)));
  return A;
}

}  // namespace wta
