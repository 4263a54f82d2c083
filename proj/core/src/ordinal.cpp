#include "morasslab/ordinal.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace morasslab {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return a * b;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    skip_space();
    if (at_end()) fail("empty ordinal");
    Ordinal sum = term();
    skip_space();
    while (!at_end()) {
      if (!accept("+")) fail("expected '+'");
      sum += term();
      skip_space();
    }
    return sum;
  }

 private:
  Ordinal term() {
    skip_space();
    if (accept("w") || accept("\xcf\x89")) {  // 'w' or UTF-8 omega
      std::uint64_t exponent = 1;
      std::uint64_t coefficient = 1;
      skip_space();
      if (accept("^")) exponent = number();
      skip_space();
      if (accept("*")) coefficient = number();
      if (coefficient == 0) fail("zero coefficient");
      if (exponent > std::numeric_limits<std::uint32_t>::max()) fail("exponent too large");
      return Ordinal::omega_power(static_cast<std::uint32_t>(exponent), coefficient);
    }
    return Ordinal::finite(number());
  }

  std::uint64_t number() {
    skip_space();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected digit");
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = checked_add(checked_mul(value, 10), static_cast<std::uint64_t>(text_[pos_] - '0'));
      ++pos_;
    }
    return value;
  }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const char* what) const {
    throw OrdinalParseError(std::string(what) + " at offset " + std::to_string(pos_) + " in \"" +
                            std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  if (n == 0) return {};
  return Ordinal({CnfTerm{0, n}});
}

Ordinal Ordinal::omega_power(std::uint32_t k, std::uint64_t c) {
  if (c == 0) return {};
  return Ordinal({CnfTerm{k, c}});
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw std::invalid_argument("CNF coefficient must be positive");
    if (i > 0 && terms[i].exponent >= terms[i - 1].exponent) {
      throw std::invalid_argument("CNF exponents must be strictly decreasing");
    }
  }
  return Ordinal(std::move(terms));
}

Ordinal Ordinal::parse(std::string_view text) { return Parser(text).parse(); }

std::uint64_t Ordinal::finite_part() const noexcept {
  if (terms_.empty() || terms_.back().exponent != 0) return 0;
  return terms_.back().coefficient;
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != 1) out += '^' + std::to_string(t.exponent);
    if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const noexcept {
  const auto& a = terms_;
  const auto& b = other.terms_;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].exponent != b[i].exponent) return a[i].exponent <=> b[i].exponent;
    if (a[i].coefficient != b[i].coefficient) return a[i].coefficient <=> b[i].coefficient;
  }
  return a.size() <=> b.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) noexcept { return a <=> b; }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.terms_.empty()) return a;
  const std::uint32_t lead = b.terms_.front().exponent;
  std::vector<CnfTerm> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  for (const auto& t : a.terms_) {
    if (t.exponent < lead) break;
    out.push_back(t);
  }
  auto it = b.terms_.begin();
  if (!out.empty() && out.back().exponent == lead) {
    out.back().coefficient = checked_add(out.back().coefficient, it->coefficient);
    ++it;
  }
  out.insert(out.end(), it, b.terms_.end());
  return Ordinal(std::move(out));
}

Ordinal left_subtract(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  if (k == x.size()) {
    return Ordinal(std::vector<CnfTerm>(y.begin() + static_cast<std::ptrdiff_t>(k), y.end()));
  }
  if (k == y.size()) {
    throw OrdinalUnderflow("left_subtract: " + a.to_string() + " > " + b.to_string());
  }
  if (y[k].exponent > x[k].exponent) {
    return Ordinal(std::vector<CnfTerm>(y.begin() + static_cast<std::ptrdiff_t>(k), y.end()));
  }
  if (y[k].exponent == x[k].exponent && y[k].coefficient > x[k].coefficient) {
    std::vector<CnfTerm> out;
    out.push_back({y[k].exponent, y[k].coefficient - x[k].coefficient});
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(k) + 1, y.end());
    return Ordinal(std::move(out));
  }
  throw OrdinalUnderflow("left_subtract: " + a.to_string() + " > " + b.to_string());
}

Ordinal nat_multiply(const Ordinal& a, std::uint64_t n) {
  if (n == 0 || a.terms_.empty()) return {};
  std::vector<CnfTerm> out = a.terms_;
  out.front().coefficient = checked_mul(out.front().coefficient, n);
  return Ordinal(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << a.to_string(); }

}  // namespace morasslab
