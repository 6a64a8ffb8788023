#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wta/bimonoid.hpp"

namespace wta {

struct ParseError : Error {
  explicit ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line(line) {}
  int line;
};

struct RankedAlphabet {
  std::map<std::string, int> ranks;

  bool contains(const std::string& sym) const { return ranks.count(sym) != 0; }
  int rank(const std::string& sym) const {
    auto it = ranks.find(sym);
    if (it == ranks.end()) throw Error("unknown symbol: " + sym);
    return it->second;
  }
  int max_rank() const {
    int m = 0;
    for (auto& [s, k] : ranks) m = std::max(m, k);
    return m;
  }
  bool has_nullary() const {
    for (auto& [s, k] : ranks)
      if (k == 0) return true;
    return false;
  }
  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;
};

class Tree {
 public:
  explicit Tree(std::string symbol, std::vector<Tree> children = {}) {
    int n = 1;
    for (const Tree& c : children) n += c.size();
    node_ = std::make_shared<const Node>(Node{std::move(symbol), std::move(children), n});
  }

  const std::string& symbol() const { return node_->symbol; }
  const std::vector<Tree>& children() const { return node_->children; }
  int size() const { return node_->size; }

  std::string str() const {
    std::string out;
    write(out);
    return out;
  }

  friend bool operator==(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return true;
    if (a.size() != b.size() || a.symbol() != b.symbol()) return false;
    for (std::size_t i = 0; i < a.children().size(); ++i)
      if (!(a.children()[i] == b.children()[i])) return false;
    return true;
  }
  friend bool operator<(const Tree& a, const Tree& b) {
    if (a.symbol() != b.symbol()) return a.symbol() < b.symbol();
    return std::lexicographical_compare(a.children().begin(), a.children().end(),
                                        b.children().begin(), b.children().end());
  }

 private:
  struct Node {
    std::string symbol;
    std::vector<Tree> children;
    int size;
  };
  std::shared_ptr<const Node> node_;

  void write(std::string& out) const {
    out += symbol();
    if (!children().empty()) {
      out += '(';
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) out += ',';
        children()[i].write(out);
      }
      out += ')';
    }
  }
};

using Position = std::vector<int>;  // 1-based child steps; empty = root

inline std::string position_str(const Position& p) {
  if (p.empty()) return "e";
  std::string s;
  for (int i : p) s += std::to_string(i);
  return s;
}

inline void collect_positions(const Tree& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    cur.push_back(static_cast<int>(i + 1));
    collect_positions(t.children()[i], cur, out);
    cur.pop_back();
  }
}

// pos(t) in preorder; its length is the node count.
inline std::vector<Position> positions(const Tree& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

// Symbol reserved for the context hole.
inline const std::string kHole = "_";

inline int count_holes(const Tree& t) {
  int n = t.symbol() == kHole ? 1 : 0;
  for (const Tree& c : t.children()) n += count_holes(c);
  return n;
}

// A tree with exactly one occurrence of the hole.
class Context {
 public:
  explicit Context(Tree skeleton) : tree_(std::move(skeleton)) {
    if (count_holes(tree_) != 1) throw Error("context must contain exactly one hole");
  }
  static Context hole() { return Context(Tree(kHole)); }
  const Tree& tree() const { return tree_; }

  friend bool operator==(const Context& a, const Context& b) { return a.tree_ == b.tree_; }

 private:
  Tree tree_;
};

inline Tree replace_hole(const Tree& t, const Tree& filler) {
  if (t.symbol() == kHole) return filler;
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const Tree& c : t.children()) kids.push_back(replace_hole(c, filler));
  return Tree(t.symbol(), std::move(kids));
}

inline Tree substitute(const Context& c, const Tree& t) { return replace_hole(c.tree(), t); }
inline Context substitute(const Context& c, const Context& inner) {
  return Context(replace_hole(c.tree(), inner.tree()));
}

// --- tree text syntax: name(child,child,...), bare name for rank 0; also
// accepts name^n(t) sugar for n-fold application of a unary symbol.
namespace detail {

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*';
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  Tree parse() {
    Tree t = parse_tree();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input in tree: " + remainder());
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  std::string remainder() const { return std::string(text_.substr(pos_)); }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string parse_name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError("expected symbol name in tree");
    return std::string(text_.substr(start, pos_ - start));
  }

  Tree parse_tree() {
    std::string name = parse_name();
    long repeat = 1;
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == start) throw ParseError("expected repetition count after ^");
      repeat = std::stol(std::string(text_.substr(start, pos_ - start)));
      if (!eat('(')) throw ParseError("expected ( after ^n");
      Tree inner = parse_tree();
      if (!eat(')')) throw ParseError("expected ) in tree");
      Tree t = inner;
      for (long i = 0; i < repeat; ++i) t = Tree(name, {t});
      return t;
    }
    std::vector<Tree> kids;
    if (eat('(')) {
      skip_ws();
      if (!eat(')')) {
        kids.push_back(parse_tree());
        while (eat(',')) kids.push_back(parse_tree());
        if (!eat(')')) throw ParseError("expected ) in tree");
      }
    }
    return Tree(std::move(name), std::move(kids));
  }
};

}  // namespace detail

inline Tree parse_tree(std::string_view text) { return detail::TreeParser(text).parse(); }

// nullopt when t is a well-formed tree over sigma; otherwise a message.
inline std::optional<std::string> check_tree(const RankedAlphabet& sigma, const Tree& t) {
  if (!sigma.contains(t.symbol())) return "unknown symbol: " + t.symbol();
  if (sigma.rank(t.symbol()) != static_cast<int>(t.children().size()))
    return "symbol " + t.symbol() + " used with arity " + std::to_string(t.children().size()) +
           ", declared rank " + std::to_string(sigma.rank(t.symbol()));
  for (const Tree& c : t.children())
    if (auto err = check_tree(sigma, c)) return err;
  return std::nullopt;
}

// Yields every tree of node count <= max_size exactly once, smaller sizes
// first and each size class in lexicographic order of the text form.
class TreeStream {
 public:
  TreeStream(RankedAlphabet sigma, int max_size)
      : sigma_(std::move(sigma)), max_size_(max_size), by_size_(max_size + 1) {}

  std::optional<Tree> next() {
    while (true) {
      if (size_ > max_size_) return std::nullopt;
      if (!built_[static_cast<std::size_t>(size_)]) build(size_);
      const auto& cls = by_size_[static_cast<std::size_t>(size_)];
      if (idx_ < cls.size()) return cls[idx_++];
      ++size_;
      idx_ = 0;
    }
  }

 private:
  RankedAlphabet sigma_;
  int max_size_;
  std::vector<std::vector<Tree>> by_size_;
  std::vector<bool> built_ = std::vector<bool>(static_cast<std::size_t>(max_size_) + 1, false);
  int size_ = 1;
  std::size_t idx_ = 0;

  void build(int s) {
    auto& out = by_size_[static_cast<std::size_t>(s)];
    for (const auto& [sym, k] : sigma_.ranks) {
      if (k == 0) {
        if (s == 1) out.push_back(Tree(sym));
        continue;
      }
      if (s - 1 < k) continue;
      std::vector<Tree> kids;
      compose(sym, k, s - 1, kids, out);
    }
    std::sort(out.begin(), out.end(),
              [](const Tree& a, const Tree& b) { return a.str() < b.str(); });
    built_[static_cast<std::size_t>(s)] = true;
  }

  void compose(const std::string& sym, int slots, int budget, std::vector<Tree>& kids,
               std::vector<Tree>& out) {
    if (slots == 0) {
      if (budget == 0) out.push_back(Tree(sym, kids));
      return;
    }
    for (int s = 1; s + (slots - 1) <= budget; ++s) {
      if (!built_[static_cast<std::size_t>(s)]) build(s);
      for (const Tree& t : by_size_[static_cast<std::size_t>(s)]) {
        kids.push_back(t);
        compose(sym, slots - 1, budget - s, kids, out);
        kids.pop_back();
      }
    }
  }
};

inline std::vector<Tree> enumerate_trees(const RankedAlphabet& sigma, int max_size) {
  TreeStream stream(sigma, max_size);
  std::vector<Tree> out;
  while (auto t = stream.next()) out.push_back(*t);
  return out;
}

}  // namespace wta
