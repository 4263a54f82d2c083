#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morasslab {

/// Thrown by left_subtract when the left operand exceeds the right one.
class OrdinalUnderflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when an ordinal string does not match the "w^k*c + ... + n" grammar.
class OrdinalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CnfTerm {
  std::uint32_t exponent = 0;
  std::uint64_t coefficient = 1;

  bool operator==(const CnfTerm&) const = default;
};

/// A countable ordinal below w^w, stored in Cantor normal form.
///
/// The term sequence has strictly decreasing exponents and positive
/// coefficients; zero is the empty sequence. Every constructor path
/// normalises, so two equal ordinals always have identical terms and
/// defaulted equality is extensional.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  /// w^k * c
  static Ordinal omega_power(std::uint32_t k, std::uint64_t c = 1);
  /// Validates the CNF invariants; throws std::invalid_argument on violation.
  static Ordinal from_terms(std::vector<CnfTerm> terms);
  /// Parses the textual grammar produced by to_string(). Sums are evaluated
  /// with ordinal addition, so "3 + w" parses to w.
  static Ordinal parse(std::string_view text);

  const std::vector<CnfTerm>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
  }
  /// Nonzero with a last term of exponent >= 1. Zero is neither limit nor
  /// successor.
  bool is_limit() const noexcept { return !terms_.empty() && terms_.back().exponent >= 1; }
  bool is_successor() const noexcept { return !terms_.empty() && terms_.back().exponent == 0; }

  /// Coefficient of w^0.
  std::uint64_t finite_part() const noexcept;
  /// Exponent of the leading term; 0 for finite ordinals (including zero).
  std::uint32_t degree() const noexcept { return terms_.empty() ? 0 : terms_.front().exponent; }

  std::string to_string() const;

  std::strong_ordering operator<=>(const Ordinal& other) const noexcept;
  bool operator==(const Ordinal&) const = default;

 private:
  explicit Ordinal(std::vector<CnfTerm> terms) : terms_(std::move(terms)) {}
  friend Ordinal operator+(const Ordinal&, const Ordinal&);
  friend Ordinal left_subtract(const Ordinal&, const Ordinal&);
  friend Ordinal nat_multiply(const Ordinal&, std::uint64_t);

  std::vector<CnfTerm> terms_;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) noexcept;

/// Ordinal sum; terms of `a` below the leading exponent of `b` are absorbed.
Ordinal operator+(const Ordinal& a, const Ordinal& b);
inline Ordinal& operator+=(Ordinal& a, const Ordinal& b) { return a = a + b; }

/// The unique c with a + c == b. Requires a <= b.
Ordinal left_subtract(const Ordinal& a, const Ordinal& b);

/// a + a + ... + a (n copies); n == 0 yields zero.
Ordinal nat_multiply(const Ordinal& a, std::uint64_t n);

inline bool is_limit(const Ordinal& a) noexcept { return a.is_limit(); }

std::ostream& operator<<(std::ostream& os, const Ordinal& a);

inline const Ordinal kOmega = Ordinal::omega_power(1);

}  // namespace morasslab

template <>
struct std::hash<morasslab::Ordinal> {
  std::size_t operator()(const morasslab::Ordinal& a) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& t : a.terms()) {
      h ^= std::hash<std::uint64_t>{}(t.coefficient) + 0x9e3779b9 + (h << 6) + (h >> 2);
      h ^= std::hash<std::uint32_t>{}(t.exponent) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
  }
};
