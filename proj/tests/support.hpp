#pragma once

// Shared fixtures for the test suites: standard presentations and random
// element generators.

#include <ordp/algebra.hpp>

#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace ordp {

inline void PrintTo(const RingElement& e, std::ostream* os) { *os << e.sexpr(); }

}  // namespace ordp

namespace ordp::testing {

/// O = Z[E,F]/(E^(p-1) F - p).
inline PresentedRing universal_ring(int p) {
  auto zef = PresentedRing::polynomial(PresentedRing::integers(), {"E", "F"});
  auto E = zef.variable("E");
  auto F = zef.variable("F");
  return PresentedRing::quotient(zef, {rewrite_relation(E.pow(p - 1) * F, zef.constant(p))});
}

inline PresentedRing z_localized(int p) {
  auto q = PresentedRing::rationals();
  return PresentedRing::valued_local(q, q.constant(p), p);
}

/// Z[zeta]/(zeta^2 + zeta + 1) localized at (1 - zeta).
inline PresentedRing eisenstein_local() {
  auto zz = PresentedRing::polynomial(PresentedRing::integers(), {"z"});
  auto z = zz.variable("z");
  auto base = PresentedRing::quotient(zz, {monic_relation("z", z * z + z + 1)});
  return PresentedRing::valued_local(base, 1 - base.variable("z"), 3);
}

/// Z[pi]/(pi^e - p) localized at (pi).
inline PresentedRing pure_ramified_local(int p, unsigned e) {
  auto zz = PresentedRing::polynomial(PresentedRing::integers(), {"pi"});
  auto x = zz.variable("pi");
  auto base = PresentedRing::quotient(zz, {monic_relation("pi", x.pow(e) - p)});
  return PresentedRing::valued_local(base, base.variable("pi"), p);
}

/// F_p[s]/(s^n) viewed as a truncated equal-characteristic DVR.
inline PresentedRing truncated_series(int p, unsigned n) {
  auto fs = PresentedRing::polynomial(PresentedRing::integers_mod(p), {"s"});
  auto s = fs.variable("s");
  auto base = PresentedRing::quotient(fs, {monic_relation("s", s.pow(n))});
  return PresentedRing::valued_local(base, base.variable("s"), p);
}

/// (Z/p^n)[E,F]/(E^(p-1) F - p).
inline PresentedRing universal_ring_mod(int p, unsigned n) {
  auto zef = PresentedRing::polynomial(PresentedRing::integers_mod(ipow(p, n)), {"E", "F"});
  auto E = zef.variable("E");
  auto F = zef.variable("F");
  return PresentedRing::quotient(zef, {rewrite_relation(E.pow(p - 1) * F, zef.constant(p))});
}

/// (Z/p^n)[z]/(1 + z + ... + z^(p-1)).
inline PresentedRing cyclotomic_mod(int p, unsigned n) {
  auto rz = PresentedRing::polynomial(PresentedRing::integers_mod(ipow(p, n)), {"z"});
  auto z = rz.variable("z");
  RingElement phi = rz.zero();
  for (int i = 0; i < p; ++i) phi += z.pow(i);
  return PresentedRing::quotient(rz, {monic_relation("z", phi)});
}

class Random {
 public:
  explicit Random(std::uint32_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

  Rational rational(long span, bool allow_fraction) {
    Rational q(integer(-span, span));
    if (allow_fraction && integer(0, 3) == 0) {
      q /= integer(1, 6);
    }
    return q;
  }

  /// Random element with up to `terms` terms and exponents below `max_exp`.
  RingElement element(const PresentedRing& ring, int terms = 4, std::uint32_t max_exp = 4, long span = 5) {
    Terms raw;
    bool fractions = ring.coefficients().kind() != CoefficientKind::Modular;
    for (int k = 0; k < terms; ++k) {
      Monomial m(ring.num_variables());
      for (auto& e : m) e = static_cast<std::uint32_t>(integer(0, max_exp - 1));
      add_term(raw, m, rational(span, fractions && ring.kind() != RingKind::Integers));
    }
    return ring.element(raw);
  }

  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

}  // namespace ordp::testing
