#pragma once

#include <map>
#include <string>
#include <vector>

#include "congruence.hpp"
#include "tate_oort.hpp"

namespace ordp {

namespace detail {

inline MonomialBasis kernel_basis(const HopfPresentation& h) {
  auto basis = standard_basis(h.algebra, {h.algebra.require_variable(h.var)});
  if (!basis || basis->monomials.size() != h.p()) throw InvariantViolation("kernel algebra is not free of rank p");
  return *basis;
}

inline Matrix<RingElement> mat_mul(const Matrix<RingElement>& a, const Matrix<RingElement>& b, const PresentedRing& r) {
  const std::size_t n = a.size();
  Matrix<RingElement> c(n, std::vector<RingElement>(n, r.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace detail

/// f([m](x)).
inline RingElement pullback_by_m(const HopfPresentation& h, unsigned m, const RingElement& f) {
  return substitute(f, h.algebra, {{h.var, multiplication_by_m(h, m)}});
}

/// e_i = (1/(p-1)) sum_m chi(m)^(-i) [m]^*, acting on the basis 1, x, ..., x^(p-1).
struct EigenData {
  unsigned index;
  Matrix<RingElement> projector;  // column j = coordinates of e_i(x^j)

  bool operator==(const EigenData& o) const { return index == o.index && projector == o.projector; }
};

inline RingElement apply_eigen(const HopfPresentation& h, const LambdaStructure& lam, unsigned i, const RingElement& f) {
  const unsigned p = h.p();
  RingElement acc = h.algebra.zero();
  for (unsigned m = 1; m < p; ++m) {
    auto c = lift(lam.chi_inverse(m).pow(i), h.algebra);
    acc += c * pullback_by_m(h, m, f);
  }
  return acc.divided_by(p - 1);
}

inline EigenData eigen_projector(const HopfPresentation& h, unsigned i) {
  const unsigned p = h.p();
  if (i < 1 || i > p - 1) throw DomainError("eigen index must lie in 1..p-1");
  auto lam = lambda_structure(h.base, h.prime);
  auto basis = detail::kernel_basis(h);
  Matrix<RingElement> m(p, std::vector<RingElement>(p, h.base.zero()));
  for (unsigned j = 0; j < p; ++j) {
    Terms bj;
    bj.emplace(basis.monomials[j], 1);
    auto col = coordinates_over(apply_eigen(h, lam, i, h.algebra.element(bj)), basis, h.base);
    for (unsigned r = 0; r < p; ++r) m[r][j] = col[r];
  }
  EigenData e{i, m};
  if (detail::mat_mul(m, m, h.base) != m) throw InvariantViolation("e_" + std::to_string(i) + " is not idempotent");
  return e;
}

/// t = (p-1) e_1(-x) = -sum_m chi(m)^(-1) [m](x).
inline RingElement distinguished_t(const HopfPresentation& h) {
  auto lam = lambda_structure(h.base, h.prime);
  RingElement t = h.algebra.zero();
  for (unsigned m = 1; m < h.p(); ++m) t -= lift(lam.chi_inverse(m), h.algebra) * multiplication_by_m(h, m);
  return t;
}

inline RingElement distinguished_t(const CongruenceDatum& d) { return distinguished_t(kernel_hopf(d)); }

/// x = (t + lambda t^2 / w_2 + ... + lambda^(p-2) t^(p-1) / w_(p-1)) / (1 - p),
/// as a polynomial in a fresh variable over the base.
inline RingElement x_of_t(const CongruenceDatum& d, const LambdaStructure& lam, std::string& tvar) {
  const unsigned p = d.p();
  tvar = fresh_variable(d.ring(), "t");
  auto rt = PresentedRing::polynomial(d.ring(), {tvar});
  auto t = rt.variable(tvar);
  auto l = lift(d.lambda(), rt);
  RingElement acc = rt.zero();
  for (unsigned i = 1; i < p; ++i) {
    auto winv = unit_inverse(lam.w_at(i));
    if (!winv) throw NonUnitW("w_" + std::to_string(i) + " = " + lam.w_at(i).sexpr() + " is not a unit");
    acc += l.pow(i - 1) * t.pow(i) * lift(*winv, rt);
  }
  return acc.divided_by(Rational(1) - Rational(d.prime()));
}

struct TranslationCertificate {
  CongruenceDatum datum;
  TateOortTriple triple;
  Section cogenerator;
  HopfPresentation kernel;
  RingElement t;         // in the kernel algebra
  std::string t_var;
  RingElement x_of_t;    // in base[t]
  std::vector<Verdict> verdicts;
};

/// (lambda_0, mu_0) -> (a, b) = (w_(p-1) mu_0, lambda_0^(p-1)), cogenerator v = lambda_0.
inline TranslationCertificate tcg_to_tgc(const CongruenceDatum& d) {
  const unsigned p = d.p();
  auto lam = lambda_structure(d.ring(), d.prime());
  auto h = kernel_hopf(d);
  auto t = distinguished_t(h);
  const auto& w_pm1 = lam.w_at(p - 1);
  RingElement a = w_pm1 * d.mu();
  RingElement v = d.lambda();
  TateOortTriple triple(d.prime(), a, v.pow(p - 1));
  auto cog = make_section(triple, SectionDirection::FromG, v);

  std::vector<Verdict> verdicts;
  auto mu_a = lift(d.mu(), h.algebra) * lift(w_pm1, h.algebra);
  verdicts.push_back(detail::compare("t^p = w_(p-1) mu_0 t", t.pow(p), mu_a * t));
  verdicts.push_back(detail::compare("a b = w_p", triple.a() * triple.b(), lam.w_p()));
  verdicts.push_back({"v is a cogenerator", is_cogenerator(triple, cog), "v = " + v.sexpr()});
  std::string tvar;
  auto xt = x_of_t(d, lam, tvar);
  verdicts.push_back(detail::compare("x(t(x)) = x", substitute(xt, h.algebra, {{tvar, t}}), h.x()));
  if (!all_hold(verdicts)) throw InvariantViolation("tcg_to_tgc: " + first_failure(verdicts));
  return {d, triple, cog, h, t, tvar, xt, verdicts};
}

/// (a, v) with v a cogenerator -> (lambda_0, mu_0) = (v, a / w_(p-1)).
inline TranslationCertificate tgc_to_tcg(const TateOortTriple& t, const Section& v) {
  if (v.direction != SectionDirection::FromG) throw DomainError("tgc_to_tcg expects a section from G");
  if (!is_cogenerator(t, v)) {
    throw NotACogenerator("v^(p-1) = " + v.value.pow(t.p() - 1).sexpr() + " differs from b = " + t.b().sexpr());
  }
  const auto& lam = t.lambda();
  for (unsigned i = 2; i < t.p(); ++i) {
    if (!is_unit(lam.w_at(i))) throw NonUnitW("w_" + std::to_string(i) + " is not a unit in " + t.ring().sexpr());
  }
  auto winv = unit_inverse(lam.w_at(t.p() - 1));
  if (!winv) throw NonUnitW("w_(p-1) is not a unit in " + t.ring().sexpr());
  CongruenceDatum d(t.prime(), v.value, t.a() * *winv);
  auto cert = tcg_to_tgc(d);
  if (!(cert.triple == t) || cert.cogenerator.value != v.value) {
    throw InvariantViolation("round trip does not return the input triple");
  }
  return cert;
}

/// (lambda_0, mu_0) -> (alpha^(-1) lambda_0, alpha^(p-1) mu_0).
inline CongruenceDatum rescale(const CongruenceDatum& d, const RingElement& alpha) {
  auto inv = unit_inverse(alpha);
  if (!inv) throw DomainError("rescale: " + alpha.sexpr() + " is not a unit");
  return CongruenceDatum(d.prime(), d.lambda() * *inv, d.mu() * alpha.pow(d.p() - 1));
}

/// omega(L, a, v) = (L, a, v^(p-1)).
inline TateOortTriple forget_cogenerator(const TranslationCertificate& c) { return c.triple; }

}  // namespace ordp
