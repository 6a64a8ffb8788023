#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wta {

using BigNat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AlphabetMismatch : Error {
  using Error::Error;
};
struct NotCrispDeterministic : Error {
  using Error::Error;
};
struct MalformedAcceptor : Error {
  using Error::Error;
};
struct NotRepresentable : Error {
  using Error::Error;
};
struct SafetyCapExceeded : Error {
  using Error::Error;
};

struct BudgetExceeded {
  std::uint64_t explored = 0;
};

// A weight domain: commutative additive monoid (plus, zero), multiplicative
// monoid (times, one), zero absorbing for times. The two capability flags are
// declared per instance and validated by tests, never assumed blindly.
template <class B>
concept Bimonoid = requires(const typename B::Value& a, const typename B::Value& b,
                            std::string_view text) {
  typename B::Value;
  { B::zero() } -> std::same_as<typename B::Value>;
  { B::one() } -> std::same_as<typename B::Value>;
  { B::plus(a, b) } -> std::same_as<typename B::Value>;
  { B::times(a, b) } -> std::same_as<typename B::Value>;
  { B::name() } -> std::convertible_to<std::string>;
  { B::print(a) } -> std::convertible_to<std::string>;
  { B::parse(text) } -> std::same_as<std::optional<typename B::Value>>;
  { B::is_semiring } -> std::convertible_to<bool>;
  { B::is_add_idempotent } -> std::convertible_to<bool>;
};

// n-fold sum nb by binary doubling; 0b is the additive unit.
template <Bimonoid B>
typename B::Value nfold_sum(const typename B::Value& b, BigNat n) {
  typename B::Value acc = B::zero();
  typename B::Value addend = b;
  while (n > 0) {
    if ((n & 1) != 0) acc = B::plus(acc, addend);
    n >>= 1;
    if (n > 0) addend = B::plus(addend, addend);
  }
  return acc;
}

template <Bimonoid B>
struct FiniteOrder {
  std::uint64_t index = 0;   // least i >= 1 with i*b == (i+p)*b
  std::uint64_t period = 0;  // least such p >= 1
  std::vector<typename B::Value> orbit;  // the distinct values 0b, b, 2b, ...
};

// Iterates nb until the first repeat; nullopt when no repeat shows up within
// `budget` additions (order unknown, possibly infinite).
template <Bimonoid B>
std::optional<FiniteOrder<B>> finite_order(const typename B::Value& b, std::uint64_t budget) {
  std::vector<typename B::Value> seq;
  std::map<typename B::Value, std::uint64_t> seen;
  typename B::Value cur = B::zero();
  seq.push_back(cur);
  seen.emplace(cur, 0);
  for (std::uint64_t n = 1; n <= budget; ++n) {
    cur = B::plus(cur, b);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      std::uint64_t first = it->second;
      FiniteOrder<B> res;
      res.period = n - first;
      // first == 0 only for b == zero (or a cycle through zero); the index is
      // defined as a positive integer, and periodicity propagates forward.
      res.index = first == 0 ? 1 : first;
      std::uint64_t len = first == 0 ? res.period : res.index + res.period;
      res.orbit.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(len));
      return res;
    }
    seen.emplace(cur, n);
    seq.push_back(cur);
  }
  return std::nullopt;
}

// Closure of `seed` under times, with the multiplicative unit included as the
// empty product. nullopt once the closure grows past `budget` elements.
template <Bimonoid B>
std::optional<std::set<typename B::Value>> mult_closure(
    const std::set<typename B::Value>& seed, std::uint64_t budget) {
  std::set<typename B::Value> closure = seed;
  closure.insert(B::one());
  if (closure.size() > budget) return std::nullopt;
  std::queue<typename B::Value> work;
  for (const auto& v : closure) work.push(v);
  while (!work.empty()) {
    typename B::Value v = work.front();
    work.pop();
    std::vector<typename B::Value> fresh;
    for (const auto& u : closure) {
      for (const auto& p : {B::times(v, u), B::times(u, v)}) {
        if (!closure.count(p)) fresh.push_back(p);
      }
    }
    for (auto& p : fresh) {
      if (closure.insert(p).second) {
        if (closure.size() > budget) return std::nullopt;
        work.push(p);
      }
    }
  }
  return closure;
}

// ---------------------------------------------------------------------------
// Shipped weight domains.

// Naturals extended with an absorbing infinity.
class ExtNat {
 public:
  ExtNat() = default;
  explicit ExtNat(BigNat v) : value_(std::move(v)) {}
  explicit ExtNat(std::uint64_t v) : value_(v) {}
  static ExtNat inf() {
    ExtNat e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  const BigNat& finite_value() const { return value_; }

  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return inf();
    return ExtNat(a.value_ + b.value_);
  }
  static ExtNat min(const ExtNat& a, const ExtNat& b) { return a < b ? a : b; }

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }

 private:
  bool inf_ = false;
  BigNat value_ = 0;
};

namespace detail {

inline bool is_canonical_nat(std::string_view s) {
  if (s.empty()) return false;
  if (s == "0") return true;
  if (s[0] == '0') return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline std::optional<ExtNat> parse_extnat(std::string_view s) {
  if (s == "inf") return ExtNat::inf();
  if (!is_canonical_nat(s)) return std::nullopt;
  return ExtNat(BigNat(std::string(s)));
}

inline std::string print_extnat(const ExtNat& v) {
  return v.is_inf() ? "inf" : v.finite_value().str();
}

}  // namespace detail

struct BoolSemiring {
  using Value = std::uint8_t;  // 0 or 1
  static constexpr bool is_semiring = true;
  static constexpr bool is_add_idempotent = true;
  static std::string name() { return "bool"; }
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static Value plus(Value a, Value b) { return a | b; }
  static Value times(Value a, Value b) { return a & b; }
  static std::string print(Value v) { return v ? "1" : "0"; }
  static std::optional<Value> parse(std::string_view s) {
    if (s == "0") return Value{0};
    if (s == "1") return Value{1};
    return std::nullopt;
  }
};

// (N u {inf}, min, +, inf, 0)
struct TropicalSemiring {
  using Value = ExtNat;
  static constexpr bool is_semiring = true;
  static constexpr bool is_add_idempotent = true;
  static std::string name() { return "tropical"; }
  static Value zero() { return ExtNat::inf(); }
  static Value one() { return ExtNat(BigNat(0)); }
  static Value plus(const Value& a, const Value& b) { return ExtNat::min(a, b); }
  static Value times(const Value& a, const Value& b) { return a + b; }
  static std::string print(const Value& v) { return detail::print_extnat(v); }
  static std::optional<Value> parse(std::string_view s) { return detail::parse_extnat(s); }
};

// (N u {inf}, +, min, 0, inf) -- a strong bimonoid that is not a semiring.
struct TropicalBimonoid {
  using Value = ExtNat;
  static constexpr bool is_semiring = false;
  static constexpr bool is_add_idempotent = false;
  static std::string name() { return "tbm"; }
  static Value zero() { return ExtNat(BigNat(0)); }
  static Value one() { return ExtNat::inf(); }
  static Value plus(const Value& a, const Value& b) { return a + b; }
  static Value times(const Value& a, const Value& b) { return ExtNat::min(a, b); }
  static std::string print(const Value& v) { return detail::print_extnat(v); }
  static std::optional<Value> parse(std::string_view s) { return detail::parse_extnat(s); }
};

struct NatSemiring {
  using Value = BigNat;
  static constexpr bool is_semiring = true;
  static constexpr bool is_add_idempotent = false;
  static std::string name() { return "nat"; }
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static Value plus(const Value& a, const Value& b) { return a + b; }
  static Value times(const Value& a, const Value& b) { return a * b; }
  static std::string print(const Value& v) { return v.str(); }
  static std::optional<Value> parse(std::string_view s) {
    if (!detail::is_canonical_nat(s)) return std::nullopt;
    return BigNat(std::string(s));
  }
};

// Carrier {0} u [1/4, 1] over exact rationals; a (+) b = min(a+b, 1) and
// a (*) b = a*b cut down to 0 below the 1/4 threshold. Bi-locally finite but
// not locally finite, and not a semiring.
struct CutBimonoid {
  using Value = Rational;
  static constexpr bool is_semiring = false;
  static constexpr bool is_add_idempotent = false;
  static std::string name() { return "cut14"; }
  static Value zero() { return Rational(0); }
  static Value one() { return Rational(1); }
  static Value lambda() { return Rational(1, 4); }
  static Value plus(const Value& a, const Value& b) {
    Value s = a + b;
    return s > 1 ? one() : s;
  }
  static Value times(const Value& a, const Value& b) {
    Value p = a * b;
    return p < lambda() ? zero() : p;
  }
  static std::string print(const Value& v) {
    if (v == 0) return "0";
    return numerator(v).str() + "/" + denominator(v).str();
  }
  // Accepts exactly the canonical spellings: "0" or "p/q" in lowest terms
  // within the carrier, so print(parse(s)) == s.
  static std::optional<Value> parse(std::string_view s) {
    if (s == "0") return zero();
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    std::string_view p = s.substr(0, slash);
    std::string_view q = s.substr(slash + 1);
    if (!detail::is_canonical_nat(p) || !detail::is_canonical_nat(q)) return std::nullopt;
    if (p == "0" || q == "0") return std::nullopt;
    BigNat num{std::string(p)};
    BigNat den{std::string(q)};
    Rational v{num, den};
    if (numerator(v).str() != std::string(p) || denominator(v).str() != std::string(q))
      return std::nullopt;  // not in lowest terms
    if (v < lambda() || v > 1) return std::nullopt;
    return v;
  }
};

}  // namespace wta
