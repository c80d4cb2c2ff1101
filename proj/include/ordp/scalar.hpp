#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "errors.hpp"

namespace ordp {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// p-adic valuation of a nonzero integer.
inline long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw ZeroValuation("valuation of 0");
  Integer m = abs(n);
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

inline long valuation(const Rational& q, const Integer& p) {
  if (q == 0) throw ZeroValuation("valuation of 0");
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer mod_floor(const Integer& a, const Integer& n) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& n) {
  Integer r;
  if (n == 1) return Integer(0);
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

/// Symmetric residue in (-n/2, n/2].
inline Integer symmetric_residue(const Integer& a, const Integer& n) {
  Integer r = mod_floor(a, n);
  if (2 * r > n) r -= n;
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

enum class CoefficientKind { Integers, Rationals, Modular };

/// The ring that polynomial coefficients live in.
///
/// Integers admits rational intermediates (integrality is checked where it
/// matters); Modular stores canonical representatives in [0, n).
class CoefficientDomain {
 public:
  static CoefficientDomain integers() { return CoefficientDomain(CoefficientKind::Integers, 0); }
  static CoefficientDomain rationals() { return CoefficientDomain(CoefficientKind::Rationals, 0); }
  static CoefficientDomain modular(const Integer& n) {
    if (n < 1) throw DomainError("modulus must be positive");
    return CoefficientDomain(CoefficientKind::Modular, n);
  }

  CoefficientKind kind() const { return kind_; }
  const Integer& modulus() const { return modulus_; }
  bool is_modular() const { return kind_ == CoefficientKind::Modular; }

  Rational normalize(const Rational& q) const {
    if (kind_ != CoefficientKind::Modular) return q;
    Integer num = q.get_num();
    Integer den = q.get_den();
    if (den != 1) {
      auto inv = mod_inverse(den, modulus_);
      if (!inv) throw DomainError("denominator " + den.get_str() + " not invertible mod " + modulus_.get_str());
      num *= *inv;
    }
    return Rational(mod_floor(num, modulus_));
  }

  bool is_zero(const Rational& q) const { return normalize(q) == 0; }

  bool is_unit(const Rational& q) const {
    switch (kind_) {
      case CoefficientKind::Integers: return q == 1 || q == -1;
      case CoefficientKind::Rationals: return q != 0;
      case CoefficientKind::Modular: {
        Integer g;
        Integer r = normalize(q).get_num();
        mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
        return g == 1;
      }
    }
    return false;
  }

  /// Inverse within the domain; Integers permits rational inverses only for
  /// the caller that asked for exact division (see divide()).
  std::optional<Rational> inverse(const Rational& q) const {
    if (!is_unit(q)) return std::nullopt;
    if (kind_ == CoefficientKind::Modular) {
      return Rational(*mod_inverse(normalize(q).get_num(), modulus_));
    }
    return Rational(1) / q;
  }

  /// Exact division. Over Integers and Rationals this yields a rational; over
  /// a residue ring the divisor must be a unit.
  Rational divide(const Rational& a, const Rational& b) const {
    if (kind_ == CoefficientKind::Modular) {
      auto inv = inverse(b);
      if (!inv) throw DomainError(b.get_str() + " is not a unit mod " + modulus_.get_str());
      return normalize(a * *inv);
    }
    if (b == 0) throw DomainError("division by zero");
    return a / b;
  }

  bool operator==(const CoefficientDomain& o) const { return kind_ == o.kind_ && modulus_ == o.modulus_; }

  std::string describe() const {
    switch (kind_) {
      case CoefficientKind::Integers: return "Z";
      case CoefficientKind::Rationals: return "Q";
      case CoefficientKind::Modular: return "Z/" + modulus_.get_str();
    }
    return "?";
  }

 private:
  CoefficientDomain(CoefficientKind k, Integer n) : kind_(k), modulus_(std::move(n)) {}
  CoefficientKind kind_;
  Integer modulus_;
};

}  // namespace ordp
