#pragma once

#include <cctype>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "wta/automaton.hpp"
#include "wta/mealy.hpp"
#include "wta/root_algebra.hpp"
#include "wta/stepmap.hpp"

namespace wta {

namespace io_detail {

inline std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct Line {
  int number;
  std::string text;
};

// Strips comments and blank lines.
inline std::vector<Line> logical_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string text = strip(raw);
    if (!text.empty()) out.push_back({number, std::move(text)});
  }
  return out;
}

// "sym(a,b)" -> (sym, [a, b]); "sym" and "sym()" both mean rank 0.
inline std::pair<std::string, std::vector<std::string>> split_lhs(const std::string& lhs,
                                                                  int line) {
  auto open = lhs.find('(');
  if (open == std::string::npos) return {strip(lhs), {}};
  if (lhs.back() != ')') throw ParseError("malformed left-hand side: " + lhs, line);
  std::string sym = strip(lhs.substr(0, open));
  std::string inner = strip(lhs.substr(open + 1, lhs.size() - open - 2));
  std::vector<std::string> args;
  if (!inner.empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = inner.find(',', start);
      if (comma == std::string::npos) {
        args.push_back(strip(inner.substr(start)));
        break;
      }
      args.push_back(strip(inner.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  if (sym.empty()) throw ParseError("missing symbol name: " + lhs, line);
  for (const auto& a : args)
    if (a.empty()) throw ParseError("empty argument in: " + lhs, line);
  return {sym, args};
}

}  // namespace io_detail

// Neutral form of an automaton/algebra file; weights still unparsed text.
struct WtaDoc {
  std::string bimonoid;
  bool algebra_mode = false;
  RankedAlphabet alphabet;
  std::vector<std::string> states;
  std::vector<std::pair<std::string, std::string>> finals;  // state, weight text
  struct Row {
    std::string symbol;
    std::vector<std::string> args;
    std::string target;
    std::string weight;  // empty for algebra rows
    int line;
  };
  std::vector<Row> rows;
};

inline WtaDoc read_wta_doc(std::istream& in) {
  WtaDoc doc;
  bool saw_alphabet = false, saw_states = false;
  for (const auto& [number, text] : io_detail::logical_lines(in)) {
    auto toks = io_detail::tokens(text);
    const std::string& kw = toks[0];
    if (kw == "bimonoid") {
      if (toks.size() != 2) throw ParseError("expected: bimonoid <name>", number);
      doc.bimonoid = toks[1];
    } else if (kw == "mode") {
      if (toks.size() != 2 || toks[1] != "algebra")
        throw ParseError("expected: mode algebra", number);
      doc.algebra_mode = true;
    } else if (kw == "alphabet") {
      if (toks.size() < 2) throw ParseError("alphabet needs at least one symbol", number);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto colon = toks[i].find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == toks[i].size())
          throw ParseError("expected sym:rank, got " + toks[i], number);
        std::string sym = toks[i].substr(0, colon);
        std::string rk = toks[i].substr(colon + 1);
        for (char c : rk)
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("bad rank in " + toks[i], number);
        if (doc.alphabet.ranks.count(sym)) throw ParseError("duplicate symbol " + sym, number);
        doc.alphabet.ranks[sym] = std::stoi(rk);
      }
      saw_alphabet = true;
    } else if (kw == "states") {
      if (toks.size() < 2) throw ParseError("states needs at least one state", number);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        for (const auto& s : doc.states)
          if (s == toks[i]) throw ParseError("duplicate state " + toks[i], number);
        doc.states.push_back(toks[i]);
      }
      saw_states = true;
    } else if (kw == "final") {
      if (toks.size() != 3) throw ParseError("expected: final <state> <weight>", number);
      doc.finals.emplace_back(toks[1], toks[2]);
    } else if (kw == "trans" || kw == "map") {
      auto arrow = text.find("->");
      if (arrow == std::string::npos) throw ParseError("expected -> in " + kw + " line", number);
      std::string lhs = io_detail::strip(text.substr(kw.size(), arrow - kw.size()));
      std::string rhs = io_detail::strip(text.substr(arrow + 2));
      WtaDoc::Row row;
      row.line = number;
      std::tie(row.symbol, row.args) = io_detail::split_lhs(lhs, number);
      if (kw == "trans") {
        auto colon = rhs.find(':');
        if (colon == std::string::npos)
          throw ParseError("expected : <weight> after target state", number);
        row.target = io_detail::strip(rhs.substr(0, colon));
        row.weight = io_detail::strip(rhs.substr(colon + 1));
        if (row.weight.empty()) throw ParseError("missing weight", number);
      } else {
        row.target = rhs;
        if (!doc.algebra_mode) throw ParseError("map rows need mode algebra", number);
      }
      if (row.target.empty() || row.target.find(' ') != std::string::npos)
        throw ParseError("bad target state in: " + text, number);
      doc.rows.push_back(std::move(row));
    } else {
      throw ParseError("unknown keyword: " + kw, number);
    }
  }
  if (doc.bimonoid.empty()) throw ParseError("missing bimonoid line");
  if (!saw_alphabet) throw ParseError("missing alphabet line");
  if (!saw_states) throw ParseError("missing states line");
  if (!doc.alphabet.has_nullary()) throw ParseError("alphabet needs a symbol of rank 0");
  return doc;
}

template <Bimonoid B>
typename B::Value parse_weight_text(const std::string& text, int line) {
  auto v = B::parse(text);
  if (!v) throw ParseError("cannot parse " + B::name() + " weight: " + text, line);
  return *v;
}

template <Bimonoid B>
Wta<B> wta_from_doc(const WtaDoc& doc) {
  if (doc.algebra_mode) throw ParseError("file declares mode algebra, not an automaton");
  Wta<B> A;
  A.alphabet = doc.alphabet;
  A.states = doc.states;
  A.finals.assign(A.states.size(), B::zero());
  auto resolve = [&](const std::string& name, int line) {
    for (std::size_t i = 0; i < A.states.size(); ++i)
      if (A.states[i] == name) return static_cast<int>(i);
    throw ParseError("unknown state: " + name, line);
  };
  for (const auto& [state, wtext] : doc.finals)
    A.finals[static_cast<std::size_t>(resolve(state, 0))] = parse_weight_text<B>(wtext, 0);
  for (const auto& row : doc.rows) {
    if (!A.alphabet.contains(row.symbol))
      throw ParseError("unknown symbol " + row.symbol, row.line);
    if (A.alphabet.rank(row.symbol) != static_cast<int>(row.args.size()))
      throw ParseError("arity mismatch for " + row.symbol, row.line);
    std::vector<int> args;
    args.reserve(row.args.size());
    for (const auto& a : row.args) args.push_back(resolve(a, row.line));
    A.add_transition(row.symbol, std::move(args), resolve(row.target, row.line),
                     parse_weight_text<B>(row.weight, row.line));
  }
  return A;
}

template <Bimonoid B>
RootAlgebra<B> algebra_from_doc(const WtaDoc& doc) {
  if (!doc.algebra_mode) throw ParseError("file lacks mode algebra");
  RootAlgebra<B> K;
  K.alphabet = doc.alphabet;
  K.carrier = doc.states;
  K.root.assign(K.carrier.size(), B::zero());
  auto index = [&](const std::string& name) {
    for (std::size_t i = 0; i < K.carrier.size(); ++i)
      if (K.carrier[i] == name) return static_cast<int>(i);
    throw ParseError("unknown carrier element: " + name);
  };
  for (const auto& [state, wtext] : doc.finals)
    K.root[static_cast<std::size_t>(index(state))] = parse_weight_text<B>(wtext, 0);
  for (const auto& row : doc.rows) {
    if (!K.alphabet.contains(row.symbol))
      throw ParseError("unknown symbol " + row.symbol, row.line);
    if (K.alphabet.rank(row.symbol) != static_cast<int>(row.args.size()))
      throw ParseError("arity mismatch for " + row.symbol, row.line);
    std::vector<int> args;
    args.reserve(row.args.size());
    for (const auto& a : row.args) args.push_back(index(a));
    K.theta[{row.symbol, std::move(args)}] = index(row.target);
  }
  K.check_total();
  return K;
}

template <Bimonoid B>
std::string print_wta(const Wta<B>& A) {
  std::ostringstream os;
  os << "bimonoid " << B::name() << "\n";
  os << "alphabet";
  for (const auto& [sym, k] : A.alphabet.ranks) os << " " << sym << ":" << k;
  os << "\nstates";
  for (const auto& s : A.states) os << " " << s;
  os << "\n";
  for (std::size_t q = 0; q < A.states.size(); ++q)
    if (!(A.finals[q] == B::zero()))
      os << "final " << A.states[q] << " " << B::print(A.finals[q]) << "\n";
  for (const auto& [key, w] : A.delta) {
    os << "trans " << key.symbol << "(";
    for (std::size_t i = 0; i < key.args.size(); ++i) {
      if (i) os << ",";
      os << A.states[static_cast<std::size_t>(key.args[i])];
    }
    os << ") -> " << A.states[static_cast<std::size_t>(key.target)] << " : " << B::print(w)
       << "\n";
  }
  return os.str();
}

template <Bimonoid B>
std::string print_algebra(const RootAlgebra<B>& K) {
  std::ostringstream os;
  os << "bimonoid " << B::name() << "\nmode algebra\n";
  os << "alphabet";
  for (const auto& [sym, k] : K.alphabet.ranks) os << " " << sym << ":" << k;
  os << "\nstates";
  for (const auto& s : K.carrier) os << " " << s;
  os << "\n";
  for (std::size_t q = 0; q < K.carrier.size(); ++q)
    if (!(K.root[q] == B::zero()))
      os << "final " << K.carrier[q] << " " << B::print(K.root[q]) << "\n";
  for (const auto& [key, target] : K.theta) {
    os << "map " << key.first << "(";
    for (std::size_t i = 0; i < key.second.size(); ++i) {
      if (i) os << ",";
      os << K.carrier[static_cast<std::size_t>(key.second[i])];
    }
    os << ") -> " << K.carrier[static_cast<std::size_t>(target)] << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Dynamic dispatch over the registered weight domains.

using AnyWta = std::variant<Wta<BoolSemiring>, Wta<TropicalSemiring>, Wta<TropicalBimonoid>,
                            Wta<NatSemiring>, Wta<CutBimonoid>, Wta<SeqFnBimonoid>>;
using AnyAlgebra =
    std::variant<RootAlgebra<BoolSemiring>, RootAlgebra<TropicalSemiring>,
                 RootAlgebra<TropicalBimonoid>, RootAlgebra<NatSemiring>,
                 RootAlgebra<CutBimonoid>, RootAlgebra<SeqFnBimonoid>>;

inline const std::vector<std::string>& bimonoid_names() {
  static const std::vector<std::string> names = {"bool", "tropical", "tbm",
                                                 "nat",  "cut14",    "seqfn"};
  return names;
}

template <class F>
auto dispatch_bimonoid(const std::string& name, F&& f) {
  if (name == "bool") return f(std::type_identity<BoolSemiring>{});
  if (name == "tropical") return f(std::type_identity<TropicalSemiring>{});
  if (name == "tbm") return f(std::type_identity<TropicalBimonoid>{});
  if (name == "nat") return f(std::type_identity<NatSemiring>{});
  if (name == "cut14") return f(std::type_identity<CutBimonoid>{});
  if (name == "seqfn") return f(std::type_identity<SeqFnBimonoid>{});
  throw ParseError("unknown bimonoid: " + name);
}

inline AnyWta parse_wta(std::istream& in) {
  WtaDoc doc = read_wta_doc(in);
  return dispatch_bimonoid(doc.bimonoid, [&](auto tag) -> AnyWta {
    using B = typename decltype(tag)::type;
    return wta_from_doc<B>(doc);
  });
}

inline AnyWta parse_wta(const std::string& text) {
  std::istringstream is(text);
  return parse_wta(is);
}

inline AnyAlgebra parse_algebra(std::istream& in) {
  WtaDoc doc = read_wta_doc(in);
  return dispatch_bimonoid(doc.bimonoid, [&](auto tag) -> AnyAlgebra {
    using B = typename decltype(tag)::type;
    return algebra_from_doc<B>(doc);
  });
}

inline AnyAlgebra parse_algebra(const std::string& text) {
  std::istringstream is(text);
  return parse_algebra(is);
}

// Peeks at a parsed document without committing to a weight domain.
inline WtaDoc read_wta_doc(const std::string& text) {
  std::istringstream is(text);
  return read_wta_doc(is);
}

// ---------------------------------------------------------------------------
// Step mapping files: `stepmap <bimonoid>` then `step <weight> <file>` rows.
// Acceptor files are fetched through the loader, typically relative to the
// directory of the step file.

template <Bimonoid B>
StepMapping<B> parse_stepmap(std::istream& in,
                             const std::function<std::string(const std::string&)>& load) {
  StepMapping<B> s;
  bool saw_header = false;
  for (const auto& [number, text] : io_detail::logical_lines(in)) {
    auto toks = io_detail::tokens(text);
    if (toks[0] == "stepmap") {
      if (toks.size() != 2) throw ParseError("expected: stepmap <bimonoid>", number);
      if (toks[1] != B::name())
        throw ParseError("step file declares bimonoid " + toks[1] + ", expected " + B::name(),
                         number);
      saw_header = true;
    } else if (toks[0] == "step") {
      if (toks.size() != 3) throw ParseError("expected: step <weight> <file>", number);
      if (!saw_header) throw ParseError("step before stepmap header", number);
      typename B::Value w = parse_weight_text<B>(toks[1], number);
      std::istringstream acc_in(load(toks[2]));
      WtaDoc doc = read_wta_doc(acc_in);
      if (doc.bimonoid != BoolSemiring::name())
        throw MalformedAcceptor("step acceptor must live over the boolean semiring");
      s.steps.push_back({std::move(w), wta_from_doc<BoolSemiring>(doc)});
    } else {
      throw ParseError("unknown keyword in step file: " + toks[0], number);
    }
  }
  if (!saw_header) throw ParseError("missing stepmap header");
  if (s.steps.empty()) throw ParseError("step file has no steps");
  return s;
}

// ---------------------------------------------------------------------------
// Mealy machine files.

inline MealyMachine parse_mealy(std::istream& in) {
  MealyMachine M;
  bool saw_header = false;
  struct Row {
    int from, letter, to, out;
  };
  std::vector<Row> rows;
  for (const auto& [number, text] : io_detail::logical_lines(in)) {
    auto toks = io_detail::tokens(text);
    if (toks[0] == "mealy") {
      saw_header = true;
    } else if (toks[0] == "alphabet") {
      if (toks.size() < 2) throw ParseError("alphabet needs at least one letter", number);
      M.alphabet.assign(toks.begin() + 1, toks.end());
    } else if (toks[0] == "states") {
      if (toks.size() < 2) throw ParseError("states needs at least one state", number);
      M.states.assign(toks.begin() + 1, toks.end());
    } else if (toks[0] == "trans") {
      // trans <state> <letter> -> <state> / <letter>
      if (toks.size() != 7 || toks[3] != "->" || toks[5] != "/")
        throw ParseError("expected: trans <state> <letter> -> <state> / <letter>", number);
      rows.push_back({M.state_index(toks[1]), M.letter_index(toks[2]), M.state_index(toks[4]),
                      M.letter_index(toks[6])});
    } else {
      throw ParseError("unknown keyword in mealy file: " + toks[0], number);
    }
  }
  if (!saw_header) throw ParseError("missing mealy header");
  if (M.states.empty() || M.alphabet.empty())
    throw ParseError("mealy machine needs states and alphabet");
  M.tau.assign(M.states.size(), std::vector<int>(M.alphabet.size(), -1));
  M.out.assign(M.states.size(), std::vector<int>(M.alphabet.size(), -1));
  for (const auto& r : rows) {
    auto& t = M.tau[static_cast<std::size_t>(r.from)][static_cast<std::size_t>(r.letter)];
    if (t != -1) throw ParseError("duplicate mealy transition");
    t = r.to;
    M.out[static_cast<std::size_t>(r.from)][static_cast<std::size_t>(r.letter)] = r.out;
  }
  for (std::size_t q = 0; q < M.states.size(); ++q)
    for (std::size_t l = 0; l < M.alphabet.size(); ++l)
      if (M.tau[q][l] == -1)
        throw ParseError("mealy transition missing for state " + M.states[q] + " and letter " +
                         M.alphabet[l]);
  return M;
}

inline std::string print_mealy(const MealyMachine& M) {
  std::ostringstream os;
  os << "mealy\nalphabet";
  for (const auto& a : M.alphabet) os << " " << a;
  os << "\nstates";
  for (const auto& q : M.states) os << " " << q;
  os << "\n";
  for (std::size_t q = 0; q < M.states.size(); ++q)
    for (std::size_t l = 0; l < M.alphabet.size(); ++l)
      os << "trans " << M.states[q] << " " << M.alphabet[l] << " -> "
         << M.states[static_cast<std::size_t>(M.tau[q][l])] << " / "
         << M.alphabet[static_cast<std::size_t>(M.out[q][l])] << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Word sugar for monadic alphabets: a word maps to the chain tree whose root
// is the last letter and whose innermost node wraps the nullary symbol.

inline bool is_monadic(const RankedAlphabet& sigma) {
  int nullary = 0;
  for (const auto& [sym, k] : sigma.ranks) {
    if (k == 0)
      ++nullary;
    else if (k != 1)
      return false;
  }
  return nullary == 1;
}

inline Tree word_to_tree(const RankedAlphabet& sigma, const std::vector<std::string>& letters) {
  if (!is_monadic(sigma)) throw Error("word input needs a monadic alphabet");
  std::string leaf;
  for (const auto& [sym, k] : sigma.ranks)
    if (k == 0) leaf = sym;
  Tree t{leaf};
  for (const std::string& a : letters) {
    if (!sigma.contains(a) || sigma.rank(a) != 1) throw Error("letter " + a + " is not unary");
    t = Tree(a, {t});
  }
  return t;
}

}  // namespace wta
