#include "vlab/exact.hpp"

#include <cmath>

namespace vlab {

void ExactCount::set_u64(std::uint64_t v) {
  mpz_import(v_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

ExactCount ExactCount::from_u128(unsigned __int128 v) {
  const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
  const std::uint64_t lo = static_cast<std::uint64_t>(v);
  ExactCount r(hi);
  mpz_mul_2exp(r.v_.get_mpz_t(), r.v_.get_mpz_t(), 64);
  r += ExactCount(lo);
  return r;
}

ExactCount ExactCount::from_decimal(const std::string& s) {
  BigInt v;
  if (v.set_str(s, 10) != 0) throw PreconditionError("ExactCount: bad decimal string '" + s + "'");
  return ExactCount(v);
}

double ExactCount::log_natural() const {
  if (v_ <= 0) throw PreconditionError("ExactCount::log_natural: value must be positive");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v_.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453;
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("rat_from_double: non-finite input");
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);  // exact: doubles are dyadic rationals
  return r;
}

Rat parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  const bool fraction = slash != std::string::npos;
  const bool plain_int = !fraction && s.find_first_of(".eE") == std::string::npos;
  if (fraction || plain_int) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
      throw PreconditionError("parse_rational: cannot parse '" + s + "'");
    mpq_canonicalize(r.get_mpq_t());
    if (fraction && mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
      throw PreconditionError("parse_rational: zero denominator in '" + s + "'");
    return r;
  }
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw PreconditionError("parse_rational: cannot parse '" + s + "'");
  }
  if (pos != s.size()) throw PreconditionError("parse_rational: trailing junk in '" + s + "'");
  return rat_from_double(v);
}

BigInt bigint_pow(std::uint64_t base, unsigned e) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace vlab
