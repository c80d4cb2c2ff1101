#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "scalar.hpp"

namespace ordp {

/// Residue modulo p^N with absolute precision N.
class PAdicInt {
 public:
  PAdicInt() = default;
  PAdicInt(Integer p, unsigned precision, const Integer& value)
      : p_(std::move(p)), n_(precision), modulus_(ipow(p_, precision)) {
    if (p_ < 2) throw DomainError("p-adic prime must be at least 2");
    residue_ = mod_floor(value, modulus_);
  }

  const Integer& prime() const { return p_; }
  unsigned precision() const { return n_; }
  const Integer& residue() const { return residue_; }
  const Integer& modulus() const { return modulus_; }

  bool is_zero() const { return residue_ == 0; }

  /// Number of leading zero digits; equals precision for zero.
  unsigned valuation() const {
    if (is_zero()) return n_;
    return static_cast<unsigned>(ordp::valuation(residue_, p_));
  }

  bool is_unit() const { return n_ > 0 && residue_ % p_ != 0; }

  PAdicInt with_precision(unsigned n) const {
    return PAdicInt(p_, std::min(n, n_), residue_);
  }

  PAdicInt operator+(const PAdicInt& o) const {
    check(o);
    return PAdicInt(p_, std::min(n_, o.n_), residue_ + o.residue_);
  }
  PAdicInt operator-(const PAdicInt& o) const {
    check(o);
    return PAdicInt(p_, std::min(n_, o.n_), residue_ - o.residue_);
  }
  PAdicInt operator-() const { return PAdicInt(p_, n_, -residue_); }

  /// x*y is known modulo p^min(N_x + v(y), N_y + v(x)).
  PAdicInt operator*(const PAdicInt& o) const {
    check(o);
    unsigned n = std::min(n_ + o.valuation(), o.n_ + valuation());
    return PAdicInt(p_, n, residue_ * o.residue_);
  }

  PAdicInt inverse() const {
    if (!is_unit()) throw DomainError("p-adic inverse of a non-unit");
    return PAdicInt(p_, n_, *mod_inverse(residue_, modulus_));
  }

  PAdicInt pow(unsigned long e) const {
    PAdicInt r(p_, n_, 1);
    PAdicInt b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  bool operator==(const PAdicInt& o) const {
    return p_ == o.p_ && n_ == o.n_ && residue_ == o.residue_;
  }

  /// Agreement modulo the smaller of the two precisions.
  bool agrees_with(const PAdicInt& o) const {
    check(o);
    Integer m = ipow(p_, std::min(n_, o.n_));
    return mod_floor(residue_ - o.residue_, m) == 0;
  }

  /// Small integer represented by this residue, if |r| < p^(N/2).
  std::optional<Integer> recognize() const {
    Integer r = symmetric_residue(residue_, modulus_);
    Integer bound = ipow(p_, n_ / 2);
    if (abs(r) < bound || (n_ > 0 && r == 0)) return r;
    return std::nullopt;
  }

  /// Digit string, most significant digit first, annotated with O(p^N).
  std::string str() const {
    return residue_.get_str() + " + O(" + p_.get_str() + "^" + std::to_string(n_) + ")";
  }

 private:
  void check(const PAdicInt& o) const {
    if (p_ != o.p_) throw RingMismatch("p-adic operands with different primes");
  }

  Integer p_ = 2;
  unsigned n_ = 0;
  Integer modulus_ = 1;
  Integer residue_ = 0;
};

inline bool is_prime(const Integer& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

/// Teichmuller lift chi(m): the (p-1)-th root of unity congruent to m.
inline PAdicInt teichmuller(const Integer& p, const Integer& m, unsigned precision) {
  if (!is_prime(p)) throw DomainError("teichmuller: " + p.get_str() + " is not prime");
  if (m < 0 || m >= p) throw DomainError("teichmuller: residue out of range");
  if (precision == 0) throw DomainError("teichmuller: precision must be positive");
  Integer mod = ipow(p, precision);
  Integer x = m;
  // x -> x^p converges one digit per step
  for (unsigned i = 0; i < precision; ++i) {
    Integer next;
    mpz_powm(next.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t(), mod.get_mpz_t());
    if (next == x) break;
    x = next;
  }
  return PAdicInt(p, precision, x);
}

inline unsigned default_precision() {
  if (const char* env = std::getenv("ORDP_PRECISION")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 40;
}

struct WConstants {
  Integer prime;
  unsigned precision = 0;
  std::vector<PAdicInt> values;              // w_1 .. w_p
  std::vector<std::optional<Integer>> exact;  // small-integer recognition

  const PAdicInt& w(unsigned i) const { return values.at(i - 1); }
};

namespace detail {

/// Polynomials in z modulo (z^p - 1) and p^N, as coefficient vectors.
struct CyclicAlgebra {
  unsigned p;
  Integer mod;

  std::vector<Integer> mul(const std::vector<Integer>& a, const std::vector<Integer>& b) const {
    std::vector<Integer> r(p, 0);
    for (unsigned i = 0; i < p; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < p; ++j) r[(i + j) % p] += a[i] * b[j];
    }
    for (auto& c : r) c = mod_floor(c, mod);
    return r;
  }
};

inline std::optional<WConstants> try_w_constants(const Integer& p, unsigned n) {
  unsigned pu = static_cast<unsigned>(p.get_ui());
  Integer mod = ipow(p, n);
  CyclicAlgebra alg{pu, mod};
  std::vector<Integer> chi_inv(pu, 0);
  for (unsigned m = 1; m < pu; ++m) chi_inv[m] = teichmuller(p, m, n).inverse().residue();

  // y_i = sum_m chi(m)^(-i) (1 - z^m)
  auto y_i = [&](unsigned i) {
    std::vector<Integer> v(pu, 0);
    for (unsigned m = 1; m < pu; ++m) {
      Integer c;
      mpz_powm_ui(c.get_mpz_t(), chi_inv[m].get_mpz_t(), i, mod.get_mpz_t());
      v[0] += c;
      v[m] -= c;
    }
    for (auto& c : v) c = mod_floor(c, mod);
    return v;
  };

  WConstants out{p, n, {}, {}};
  const auto y = y_i(1);
  auto power = y;
  for (unsigned i = 1; i <= pu; ++i) {
    if (i > 1) power = alg.mul(power, y);
    auto target = y_i(i == pu ? 1 : i);
    // coefficient of z in y_i is -1, always a unit
    Integer pivot = target[1];
    auto inv = mod_inverse(pivot, mod);
    if (!inv) return std::nullopt;
    Integer w = mod_floor(power[1] * *inv, mod);
    for (unsigned k = 0; k < pu; ++k) {
      if (mod_floor(power[k] - w * target[k], mod) != 0) {
        throw InvariantViolation("y^" + std::to_string(i) + " is not proportional to y_" + std::to_string(i));
      }
    }
    out.values.emplace_back(p, n, w);
  }

  // w_p / p must be a unit, which needs at least two digits
  if (n < 2 || out.values.back().valuation() != 1) return std::nullopt;
  if (!out.values.front().agrees_with(PAdicInt(p, n, 1))) {
    throw InvariantViolation("w_1 != 1");
  }
  auto wp = out.values.back();
  auto scaled = out.values[pu - 2] * PAdicInt(p, n, p);
  if (!wp.agrees_with(scaled)) throw InvariantViolation("w_p != p w_(p-1)");
  for (const auto& v : out.values) out.exact.push_back(v.recognize());
  return out;
}

}  // namespace detail

/// Constants w_i with y^i = w_i y_i in Lambda[z]/(z^p - 1).
inline WConstants derive_w_constants(const Integer& p, unsigned precision) {
  if (!is_prime(p)) throw DomainError("derive_w_constants: " + p.get_str() + " is not prime");
  if (p > 1000) throw UnsupportedRing("derive_w_constants: prime too large");
  if (precision == 0) throw DomainError("derive_w_constants: precision must be positive");
  unsigned n = precision;
  for (int attempt = 0; attempt < 6; ++attempt, n *= 2) {
    if (auto w = detail::try_w_constants(p, n)) return *w;
  }
  throw PrecisionExhausted("could not certify w constants for p = " + p.get_str());
}

/// Images of chi(F_p) and of w_1..w_p in a ring with coefficients of
/// characteristic p^k, or exact integers when they are recognized.
struct LambdaStructure {
  Integer prime;
  std::vector<RingElement> chi;  // chi(0) .. chi(p-1)
  std::vector<RingElement> w;    // w_1 .. w_p at index 0 .. p-1

  const RingElement& w_at(unsigned i) const { return w.at(i - 1); }
  const RingElement& w_p() const { return w.back(); }
  /// chi(m)^(-1) = chi(m^(-1))
  const RingElement& chi_inverse(unsigned m) const {
    unsigned p = static_cast<unsigned>(prime.get_ui());
    auto inv = mod_inverse(Integer(m), prime);
    if (!inv || m % p == 0) throw DomainError("chi(0) is not invertible");
    return chi.at(inv->get_ui());
  }
};

inline LambdaStructure lambda_structure(const PresentedRing& ring, const Integer& p) {
  if (!is_prime(p)) throw DomainError("lambda_structure: " + p.get_str() + " is not prime");
  const auto& coeffs = ring.coefficients();
  LambdaStructure out{p, {}, {}};
  unsigned pu = static_cast<unsigned>(p.get_ui());
  if (coeffs.is_modular()) {
    Integer n = coeffs.modulus();
    long k = valuation(n, p);
    if (n == 1) {
      for (unsigned m = 0; m < pu; ++m) out.chi.push_back(ring.zero());
      for (unsigned i = 0; i < pu; ++i) out.w.push_back(ring.zero());
      return out;
    }
    if (ipow(p, static_cast<unsigned long>(k)) != n) {
      throw UnsupportedRing("coefficients Z/" + n.get_str() + " are not a Z/p^k for p = " + p.get_str());
    }
    unsigned prec = static_cast<unsigned>(k);
    out.chi.push_back(ring.zero());
    for (unsigned m = 1; m < pu; ++m) out.chi.push_back(ring.constant(teichmuller(p, m, prec).residue()));
    auto w = derive_w_constants(p, std::max(prec, 2u));
    for (const auto& v : w.values) out.w.push_back(ring.constant(v.residue()));
    return out;
  }
  // characteristic zero: only primes whose data is integral
  unsigned prec = default_precision();
  auto w = derive_w_constants(p, prec);
  out.chi.push_back(ring.zero());
  for (unsigned m = 1; m < pu; ++m) {
    auto r = teichmuller(p, m, prec).recognize();
    if (!r) throw UnsupportedRing("chi(" + std::to_string(m) + ") is not an integer for p = " + p.get_str());
    out.chi.push_back(ring.constant(*r));
  }
  for (const auto& e : w.exact) {
    if (!e) throw UnsupportedRing("w constants are not integers for p = " + p.get_str());
    out.w.push_back(ring.constant(*e));
  }
  return out;
}

}  // namespace ordp
