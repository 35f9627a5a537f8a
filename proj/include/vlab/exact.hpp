#pragma once

// Exact arithmetic building blocks: a non-negative arbitrary-precision
// counter and exact rationals (GMP-backed). Counts are ground truth for
// every other module, so all arithmetic here is exact by construction.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "vlab/errors.hpp"

namespace vlab {

using BigInt = mpz_class;
using Rat = mpq_class;

// Non-negative arbitrary-precision integer holding solution counts.
class ExactCount {
 public:
  ExactCount() : v_(0) {}
  ExactCount(std::uint64_t v) : v_() { set_u64(v); }
  explicit ExactCount(const BigInt& v) : v_(v) {
    if (v_ < 0) throw PreconditionError("ExactCount: negative value");
  }

  static ExactCount from_u128(unsigned __int128 v);
  static ExactCount from_decimal(const std::string& s);

  ExactCount& operator+=(const ExactCount& o) {
    v_ += o.v_;
    return *this;
  }
  ExactCount& operator*=(const ExactCount& o) {
    v_ *= o.v_;
    return *this;
  }
  friend ExactCount operator+(ExactCount a, const ExactCount& b) {
    a += b;
    return a;
  }
  friend ExactCount operator*(ExactCount a, const ExactCount& b) {
    a *= b;
    return a;
  }
  ExactCount squared() const { return ExactCount(BigInt(v_ * v_)); }

  friend bool operator==(const ExactCount& a, const ExactCount& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const ExactCount& a, const ExactCount& b) {
    return !(a == b);
  }
  friend bool operator<(const ExactCount& a, const ExactCount& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExactCount& a, const ExactCount& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const ExactCount& a, const ExactCount& b) {
    return b < a;
  }
  friend bool operator>=(const ExactCount& a, const ExactCount& b) {
    return b <= a;
  }

  bool is_zero() const { return v_ == 0; }
  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }
  // Natural log; requires value > 0.
  double log_natural() const;
  const BigInt& raw() const { return v_; }

 private:
  void set_u64(std::uint64_t v);
  BigInt v_;
};

// Exact conversions. A double is a dyadic rational, so from_double is exact.
Rat rat_from_double(double x);

// Parses "a/b", "a", or a plain decimal/float literal (the latter converted
// through its exact double value).
Rat parse_rational(const std::string& s);

// pow for small exact integers; e >= 0.
BigInt bigint_pow(std::uint64_t base, unsigned e);

}  // namespace vlab
