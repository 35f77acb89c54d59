#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace ocposet {

namespace detail {

inline std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

}  // namespace detail

// Exact dyadic rational: num / 2^exp, canonical (num odd, or exp == 0).
// Bounds produced by the recognizer stay within [-n-2, n+2] and exponents are
// at most the pass count, so an __int128 numerator has headroom up to
// exponents ~110; past that we refuse rather than silently wrap.
class Dyadic {
public:
  static constexpr int max_exponent = 110;

  constexpr Dyadic() = default;
  constexpr Dyadic(long long v) : num_(v) {}  // NOLINT: implicit by design

  static Dyadic half_pow(int k) {  // 1 / 2^k
    if (k < 0 || k > max_exponent) fail(Errc::overflow, "half_pow exponent out of range");
    Dyadic d;
    d.num_ = 1;
    d.exp_ = k;
    return d;
  }

  static Dyadic from_parts(__int128 num, int exp) {
    Dyadic d;
    d.num_ = num;
    d.exp_ = exp;
    d.normalize();
    return d;
  }

  __int128 num() const { return num_; }
  int exp() const { return exp_; }
  bool is_integer() const { return exp_ == 0; }
  bool is_zero() const { return num_ == 0; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    return from_parts(shifted(a.num_, e - a.exp_) + shifted(b.num_, e - b.exp_), e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    return from_parts(shifted(a.num_, e - a.exp_) - shifted(b.num_, e - b.exp_), e);
  }
  Dyadic operator-() const { return from_parts(-num_, exp_); }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    __int128 x = shifted(a.num_, e - a.exp_);
    __int128 y = shifted(b.num_, e - b.exp_);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // "p" when integral, else "p/q" with q = 2^exp.
  std::string str() const {
    if (exp_ == 0) return detail::int128_to_string(num_);
    return detail::int128_to_string(num_) + "/" +
           detail::int128_to_string(static_cast<__int128>(1) << exp_);
  }

  static Dyadic parse(const std::string& s) {
    std::size_t pos = 0;
    __int128 num = parse_int(s, pos, "numerator");
    int exp = 0;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      __int128 den = parse_int(s, pos, "denominator");
      if (den <= 0) fail(Errc::parse_error, "denominator must be positive in '" + s + "'");
      while (den > 1) {
        if (den % 2 != 0) fail(Errc::parse_error, "denominator not a power of two in '" + s + "'");
        den /= 2;
        ++exp;
      }
    }
    if (pos != s.size()) fail(Errc::parse_error, "trailing junk in fraction '" + s + "'");
    return from_parts(num, exp);
  }

  // floor(value * scale); scale small and positive (layout arithmetic).
  long long floor_scaled(long long scale) const {
    __int128 t = num_ * static_cast<__int128>(scale);
    if (exp_ > 0) {
      __int128 pow = static_cast<__int128>(1) << exp_;
      __int128 q = t / pow;
      if (t % pow != 0 && t < 0) --q;
      return static_cast<long long>(q);
    }
    return static_cast<long long>(t);
  }

  // Exact decimal string of value * scale (denominators are powers of two, so
  // the decimal expansion always terminates). Used for SVG coordinates.
  std::string decimal_scaled(long long scale) const {
    __int128 t = num_ * static_cast<__int128>(scale);
    int e = exp_;
    while (e > 0 && t % 2 == 0) {
      t /= 2;
      --e;
    }
    if (e > 35) fail(Errc::overflow, "decimal expansion too deep");
    for (int i = 0; i < e; ++i) t *= 5;  // t / 2^e == (t * 5^e) / 10^e
    bool neg = t < 0;
    std::string digits = detail::int128_to_string(neg ? -t : t);
    if (static_cast<int>(digits.size()) <= e) digits.insert(0, e + 1 - digits.size(), '0');
    std::string out = digits;
    if (e > 0) {
      out.insert(digits.size() - e, ".");
      while (out.back() == '0') out.pop_back();
      if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
  }

private:
  static __int128 shifted(__int128 v, int k) {
    if (k < 0 || k > 126) fail(Errc::overflow, "dyadic alignment shift too large");
    if (v != 0) {
      __int128 mag = v < 0 ? -v : v;
      if (mag >= (static_cast<__int128>(1) << (126 - k)))
        fail(Errc::overflow, "dyadic numerator too large");
    }
    return v << k;
  }

  static __int128 parse_int(const std::string& s, std::size_t& pos, const char* part) {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
      fail(Errc::parse_error, std::string("missing ") + part + " in fraction '" + s + "'");
    __int128 v = 0;
    int ndig = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (++ndig > 36) fail(Errc::overflow, "fraction literal too long");
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }

  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && num_ % 2 == 0) {
      num_ /= 2;
      --exp_;
    }
    if (exp_ > max_exponent) fail(Errc::overflow, "dyadic exponent exceeds supported depth");
  }

  __int128 num_ = 0;
  int exp_ = 0;
};

}  // namespace ocposet
