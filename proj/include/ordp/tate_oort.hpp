#pragma once

#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "padic.hpp"

namespace ordp {

/// Tate-Oort data (a, b) on a trivialized line bundle, with ab = w_p.
class TateOortTriple {
 public:
  TateOortTriple(const Integer& p, RingElement a, RingElement b)
      : p_(p), a_(std::move(a)), b_(std::move(b)), lambda_(lambda_structure(a_.ring(), p)) {
    if (a_.ring() != b_.ring()) throw RingMismatch("triple entries live in different rings");
    if (a_ * b_ != lambda_.w_p()) {
      throw InvariantViolation("a*b = " + (a_ * b_).sexpr() + " differs from w_p = " + lambda_.w_p().sexpr());
    }
  }

  const Integer& prime() const { return p_; }
  unsigned p() const { return static_cast<unsigned>(p_.get_ui()); }
  const PresentedRing& ring() const { return a_.ring(); }
  const RingElement& a() const { return a_; }
  const RingElement& b() const { return b_; }
  const LambdaStructure& lambda() const { return lambda_; }

  bool operator==(const TateOortTriple& o) const { return p_ == o.p_ && a_ == o.a_ && b_ == o.b_; }

  std::string sexpr() const {
    return "(triple :p " + p_.get_str() + " :ring " + ring().sexpr() + " :a " + a_.sexpr() + " :b " + b_.sexpr() + ")";
  }

 private:
  Integer p_;
  RingElement a_;
  RingElement b_;
  LambdaStructure lambda_;
};

enum class SectionDirection { TowardG, FromG };

/// A morphism Z/p -> G (value u, u^p = ua) or G -> mu_p (value v, v^p = vb).
struct Section {
  SectionDirection direction;
  RingElement value;
};

inline Section make_section(const TateOortTriple& t, SectionDirection dir, const RingElement& value) {
  if (value.ring() != t.ring()) throw RingMismatch("section value is not in the triple's ring");
  const RingElement& c = dir == SectionDirection::TowardG ? t.a() : t.b();
  if (value.pow(t.p()) != value * c) {
    throw InvariantViolation(std::string(dir == SectionDirection::TowardG ? "u^p != u a" : "v^p != v b") +
                             " for " + value.sexpr());
  }
  return {dir, value};
}

/// R[x]/(x^p - a x).
inline PresentedRing group_algebra(const TateOortTriple& t, const std::string& var = "x") {
  auto name = fresh_variable(t.ring(), var);
  auto rx = PresentedRing::polynomial(t.ring(), {name});
  auto x = rx.variable(name);
  return PresentedRing::quotient(rx, {monic_relation(name, x.pow(t.p()) - lift(t.a(), rx) * x)});
}

inline TateOortTriple cartier_dual(const TateOortTriple& t) { return TateOortTriple(t.prime(), t.b(), t.a()); }

/// Coordinate change x' = f x for a unit f: (a, b) -> (f^(p-1) a, f^(1-p) b).
inline TateOortTriple rescale(const TateOortTriple& t, const RingElement& f) {
  auto inv = unit_inverse(f);
  if (!inv) throw DomainError("rescale: " + f.sexpr() + " is not a unit");
  return TateOortTriple(t.prime(), t.a() * f.pow(t.p() - 1), t.b() * inv->pow(t.p() - 1));
}

inline bool is_generator(const TateOortTriple& t, const Section& u) {
  if (u.direction != SectionDirection::TowardG) throw DomainError("is_generator expects a section toward G");
  return u.value.pow(t.p() - 1) == t.a();
}

inline bool is_cogenerator(const TateOortTriple& t, const Section& v) {
  if (v.direction != SectionDirection::FromG) throw DomainError("is_cogenerator expects a section from G");
  return v.value.pow(t.p() - 1) == t.b();
}

/// Result of the norm comparison, with both sides for diagnostics.
struct KatzMazurCheck {
  bool holds;
  RingElement norm;
  RingElement product;
};

/// Compares Norm(f) with prod_i f(chi(i) u) for the universal
/// f = c_0 + c_1 x + ... + c_(p-1) x^(p-1).
inline KatzMazurCheck katz_mazur_check(const TateOortTriple& t, const Section& u) {
  if (u.direction != SectionDirection::TowardG) throw DomainError("katz_mazur_oracle expects a section toward G");
  const unsigned p = t.p();
  std::vector<std::string> cs;
  {
    auto probe = t.ring();
    for (unsigned i = 0; i < p; ++i) {
      std::string name = fresh_variable(probe, "c" + std::to_string(i));
      cs.push_back(name);
      probe = PresentedRing::polynomial(probe, {name});
    }
  }
  auto universal = PresentedRing::polynomial(t.ring(), cs);
  std::string xname = fresh_variable(universal, "x");
  auto ux = PresentedRing::polynomial(universal, {xname});
  auto X = ux.variable(xname);
  auto algebra = PresentedRing::quotient(ux, {monic_relation(xname, X.pow(p) - lift(t.a(), ux) * X)});
  auto x = algebra.variable(xname);

  RingElement f = algebra.zero();
  for (unsigned i = 0; i < p; ++i) f += algebra.variable(cs[i]) * x.pow(i);
  auto basis = standard_basis(algebra, {algebra.require_variable(xname)});
  if (!basis || basis->monomials.size() != p) throw InvariantViolation("group algebra is not free of rank p");
  RingElement norm = norm_over(f, *basis, universal);

  RingElement product = universal.one();
  RingElement uu = lift(u.value, universal);
  for (unsigned i = 0; i < p; ++i) {
    RingElement point = lift(t.lambda().chi[i], universal) * uu;
    RingElement value = universal.zero();
    for (unsigned k = p; k-- > 0;) value = value * point + universal.variable(cs[k]);
    product *= value;
  }
  return {norm == product, norm, product};
}

inline bool katz_mazur_oracle(const TateOortTriple& t, const Section& u) { return katz_mazur_check(t, u).holds; }

}  // namespace ordp
