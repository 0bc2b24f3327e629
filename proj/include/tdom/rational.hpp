#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdom {

/// Exact non-negative rational used for every threshold comparison (lambda, x, beta, alpha).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// Parses "p/q" or a bare integer "p".
  static Rational parse(std::string_view text) {
    auto to_int = [&](std::string_view s) -> std::int64_t {
      if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      std::size_t pos = 0;
      std::int64_t value = 0;
      try {
        value = std::stoll(std::string(s), &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      }
      if (pos != s.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      return value;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(text), 1);
    const auto den = to_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    return Rational(to_int(text.substr(0, slash)), den);
  }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  /// floor(this * k) for k >= 0.
  [[nodiscard]] std::int64_t floor_times(std::int64_t k) const {
    const __int128 p = static_cast<__int128>(num_) * k;
    __int128 q = p / den_;
    if (p % den_ != 0 && p < 0) --q;
    return static_cast<std::int64_t>(q);
  }

  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend Rational operator/(const Rational& a, const Rational& b) { return {a.num_ * b.den_, a.den_ * b.num_}; }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace tdom
