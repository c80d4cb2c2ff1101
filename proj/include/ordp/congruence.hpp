#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "padic.hpp"
#include "verdict.hpp"

namespace ordp {

/// (lambda, mu) with lambda^(p-1) mu = p.
class CongruenceDatum {
 public:
  CongruenceDatum(const Integer& p, RingElement lambda, RingElement mu)
      : p_(p), lambda_(std::move(lambda)), mu_(std::move(mu)) {
    if (!is_prime(p_)) throw DomainError(p_.get_str() + " is not prime");
    if (lambda_.ring() != mu_.ring()) throw RingMismatch("lambda and mu live in different rings");
    auto lhs = lambda_.pow(this->p() - 1) * mu_;
    if (lhs != ring().constant(p_)) {
      throw InvariantViolation("lambda^(p-1) mu = " + lhs.sexpr() + ", expected " + p_.get_str());
    }
  }

  const Integer& prime() const { return p_; }
  unsigned p() const { return static_cast<unsigned>(p_.get_ui()); }
  const PresentedRing& ring() const { return lambda_.ring(); }
  const RingElement& lambda() const { return lambda_; }
  const RingElement& mu() const { return mu_; }

  bool operator==(const CongruenceDatum& o) const { return p_ == o.p_ && lambda_ == o.lambda_ && mu_ == o.mu_; }

  std::string sexpr() const {
    return "(congruence :p " + p_.get_str() + " :ring " + ring().sexpr() + " :lambda " + lambda_.sexpr() + " :mu " +
           mu_.sexpr() + ")";
  }

 private:
  Integer p_;
  RingElement lambda_;
  RingElement mu_;
};

/// C(p, i) / p, exact.
inline Integer divided_binomial(unsigned p, unsigned i) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), p, i);
  Integer q;
  mpz_divexact_ui(q.get_mpz_t(), c.get_mpz_t(), p);
  return q;
}

/// P(X) = X^p + sum_{i=1}^{p-1} (C(p,i)/p) lambda^(i-1) mu X^i, evaluated at X
/// in any ring whose variables include those of D's ring.
inline RingElement isogeny_polynomial(const CongruenceDatum& d, const RingElement& X) {
  const auto& target = X.ring();
  RingElement lam = lift(d.lambda(), target);
  RingElement mu = lift(d.mu(), target);
  const unsigned p = d.p();
  // Horner in X, highest degree first
  RingElement acc = target.one();
  std::vector<RingElement> coeff(p, target.zero());
  RingElement lp = target.one();
  for (unsigned i = 1; i < p; ++i) {
    coeff[i] = target.constant(divided_binomial(p, i)) * lp * mu;
    lp = lp * lam;
  }
  for (unsigned i = p - 1; i >= 1; --i) acc = acc * X + coeff[i];
  return acc * X;
}

/// P as a polynomial in a fresh variable over D's ring.
inline RingElement isogeny_polynomial(const CongruenceDatum& d) {
  auto name = fresh_variable(d.ring(), "X");
  auto rx = PresentedRing::polynomial(d.ring(), {name});
  return isogeny_polynomial(d, rx.variable(name));
}

/// Z[E,F]/(E^(p-1) F - p), the universal base.
inline PresentedRing universal_base(unsigned p) {
  auto zef = PresentedRing::polynomial(PresentedRing::integers(), {"E", "F"});
  auto E = zef.variable("E");
  auto F = zef.variable("F");
  return PresentedRing::quotient(zef, {rewrite_relation(E.pow(p - 1) * F, zef.constant(p))});
}

inline CongruenceDatum universal_datum(unsigned p) {
  auto o = universal_base(p);
  return CongruenceDatum(p, o.variable("E"), o.variable("F"));
}

struct IdentityReport {
  unsigned p;
  std::vector<Verdict> verdicts;
  std::vector<std::size_t> term_counts;  // normal-form size of each left side
};

inline constexpr unsigned kIdentityPrimeBound = 13;

namespace detail {

inline Verdict compare(const std::string& name, const RingElement& lhs, const RingElement& rhs) {
  bool ok = lhs == rhs;
  return {name, ok, ok ? std::to_string(lhs.terms().size()) + " terms" : "difference " + (lhs - rhs).sexpr()};
}

}  // namespace detail

/// Identities (1) 1 + lambda^p P(X) = (1 + lambda X)^p and
/// (2) P(X + Y + lambda XY) = P(X) + P(Y) + lambda^p P(X) P(Y) over any datum.
inline std::vector<Verdict> isogeny_identities(const CongruenceDatum& d, std::vector<std::size_t>* counts = nullptr) {
  auto x = fresh_variable(d.ring(), "X");
  auto probe = PresentedRing::polynomial(d.ring(), {x});
  auto y = fresh_variable(probe, "Y");
  auto rxy = PresentedRing::polynomial(d.ring(), {x, y});
  auto X = rxy.variable(x);
  auto Y = rxy.variable(y);
  auto lam = lift(d.lambda(), rxy);
  const unsigned p = d.p();
  auto lam_p = lam.pow(p);
  auto PX = isogeny_polynomial(d, X);
  auto PY = isogeny_polynomial(d, Y);

  auto lhs1 = rxy.one() + lam_p * PX;
  auto rhs1 = (rxy.one() + lam * X).pow(p);
  auto lhs2 = isogeny_polynomial(d, X + Y + lam * X * Y);
  auto rhs2 = PX + PY + lam_p * PX * PY;
  if (counts) *counts = {lhs1.terms().size(), lhs2.terms().size()};
  return {detail::compare("identity (1): 1 + lambda^p P(X) = (1 + lambda X)^p", lhs1, rhs1),
          detail::compare("identity (2): P(X + Y + lambda X Y) = P(X) + P(Y) + lambda^p P(X) P(Y)", lhs2, rhs2)};
}

inline IdentityReport verify_universal_identities(unsigned p, unsigned bound = kIdentityPrimeBound) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (p > bound) throw DomainError("p = " + std::to_string(p) + " exceeds the configured bound " + std::to_string(bound));
  IdentityReport r{p, {}, {}};
  r.verdicts = isogeny_identities(universal_datum(p), &r.term_counts);
  return r;
}

/// Rank-p Hopf algebra base[x]/(f) with a polynomial group law.
struct HopfPresentation {
  Integer prime;
  PresentedRing base;
  PresentedRing algebra;
  std::string var;
  std::vector<std::string> law_vars;  // x1, x2 in the law ring
  RingElement relation;               // monic f in base[x]
  RingElement law;                    // m(x1, x2) in base[x1, x2]
  RingElement antipode;               // iota(x) in algebra
  std::optional<RingElement> ambient_phi;  // coordinate of G^(lambda^p), in base[x]
  std::optional<RingElement> ambient_mu;   // coordinate z of mu_p, in algebra

  unsigned p() const { return static_cast<unsigned>(prime.get_ui()); }
  RingElement x() const { return algebra.variable(var); }

  std::string sexpr() const {
    return "(hopf :algebra " + algebra.sexpr() + " :law " + law.sexpr() + " :counit 0 :antipode " + antipode.sexpr() +
           ")";
  }
};

/// base[y_1..y_n]/(f(y_i)): the n-fold tensor power of the algebra.
inline PresentedRing tensor_power(const HopfPresentation& h, unsigned n, std::vector<std::string>& names) {
  names.clear();
  PresentedRing probe = h.base;
  for (unsigned i = 1; i <= n; ++i) {
    auto name = fresh_variable(probe, h.var + std::to_string(i));
    names.push_back(name);
    probe = PresentedRing::polynomial(probe, {name});
  }
  auto poly = PresentedRing::polynomial(h.base, names);
  std::vector<RelationSpec> rels;
  for (const auto& name : names) {
    rels.push_back(monic_relation(name, substitute(h.relation, poly, {{h.var, poly.variable(name)}})));
  }
  return PresentedRing::quotient(poly, rels);
}

/// m(a, b) for a, b in a common ring over the base.
inline RingElement apply_law(const HopfPresentation& h, const RingElement& a, const RingElement& b) {
  return substitute(h.law, a.ring(), {{h.law_vars[0], a}, {h.law_vars[1], b}});
}

/// [m](x): the m-fold iterate of the law, reduced in the algebra.
inline RingElement multiplication_by_m(const HopfPresentation& h, unsigned m) {
  if (m == 0) return h.algebra.zero();
  RingElement acc = h.x();
  for (unsigned k = 1; k < m; ++k) acc = apply_law(h, acc, h.x());
  return acc;
}

inline std::vector<Verdict> hopf_verdicts(const HopfPresentation& h) {
  std::vector<Verdict> out;
  std::vector<std::string> n2, n3;
  auto b2 = tensor_power(h, 2, n2);
  auto b3 = tensor_power(h, 3, n3);
  {
    auto y1 = b3.variable(n3[0]), y2 = b3.variable(n3[1]), y3 = b3.variable(n3[2]);
    out.push_back(detail::compare("coassociativity", apply_law(h, apply_law(h, y1, y2), y3),
                                  apply_law(h, y1, apply_law(h, y2, y3))));
  }
  auto x = h.x();
  out.push_back(detail::compare("counit", apply_law(h, x, h.algebra.zero()), x));
  out.push_back(detail::compare("antipode", apply_law(h, x, h.antipode), h.algebra.zero()));
  {
    auto y1 = b2.variable(n2[0]), y2 = b2.variable(n2[1]);
    out.push_back(detail::compare("commutativity", apply_law(h, y1, y2), apply_law(h, y2, y1)));
    // the law preserves the relation, so comultiplication is well defined
    auto f_of_m = substitute(h.relation, b2, {{h.var, apply_law(h, y1, y2)}});
    out.push_back(detail::compare("law respects relation", f_of_m, b2.zero()));
  }
  out.push_back(detail::compare("[p](x) = 0", multiplication_by_m(h, h.p()), h.algebra.zero()));
  return out;
}

/// H = ker(phi) with law x1 + x2 + lambda x1 x2.
inline HopfPresentation kernel_hopf(const CongruenceDatum& d, const std::string& var = "x") {
  const auto& base = d.ring();
  auto name = fresh_variable(base, var);
  auto bx = PresentedRing::polynomial(base, {name});
  auto P = isogeny_polynomial(d, bx.variable(name));
  auto algebra = PresentedRing::quotient(bx, {monic_relation(name, P)});

  std::vector<std::string> law_vars;
  {
    auto probe = base;
    for (int i = 1; i <= 2; ++i) {
      law_vars.push_back(fresh_variable(probe, name + std::to_string(i)));
      probe = PresentedRing::polynomial(probe, {law_vars.back()});
    }
  }
  auto lr = PresentedRing::polynomial(base, law_vars);
  auto x1 = lr.variable(law_vars[0]);
  auto x2 = lr.variable(law_vars[1]);
  auto law = x1 + x2 + lift(d.lambda(), lr) * x1 * x2;

  auto x = algebra.variable(name);
  auto lam = lift(d.lambda(), algebra);
  auto antipode = -x * (algebra.one() + lam * x).pow(d.p() - 1);

  HopfPresentation h{d.prime(), base, algebra, name, law_vars, P, law, antipode, P, algebra.one() + lam * x};
  auto verdicts = hopf_verdicts(h);
  if (!all_hold(verdicts)) throw InvariantViolation("kernel Hopf structure: " + first_failure(verdicts));
  return h;
}

/// The diagram H -> G^(lambda) -> G^(lambda^p) over mu_p -> G_m -> G_m,
/// with vertical maps 1 + lambda(-) and 1 + lambda^p(-).
struct EmbeddingDiagram {
  CongruenceDatum datum;
  HopfPresentation kernel;
  RingElement phi;                  // P(X)
  RingElement vertical;             // 1 + lambda x in the kernel algebra
  RingElement vertical_inverse;     // (1 + lambda x)^(p-1)
  std::vector<Verdict> verdicts;
};

inline EmbeddingDiagram embedding_diagram(const CongruenceDatum& d) {
  auto h = kernel_hopf(d);
  std::vector<Verdict> verdicts = isogeny_identities(d);
  verdicts[0].name = "square commutes: (1 + lambda^p X')|_{X' = P(X)} = (1 + lambda X)^p";
  verdicts[1].name = "phi is a homomorphism";
  auto z = *h.ambient_mu;
  auto inv = z.pow(d.p() - 1);
  verdicts.push_back(detail::compare("(1 + lambda x)^p = 1 in the kernel algebra", z.pow(d.p()), h.algebra.one()));
  verdicts.push_back(detail::compare("1 + lambda x is a unit", z * inv, h.algebra.one()));
  if (!all_hold(verdicts)) throw InvariantViolation("embedding diagram: " + first_failure(verdicts));
  return {d, h, *h.ambient_phi, z, inv, verdicts};
}

}  // namespace ordp
