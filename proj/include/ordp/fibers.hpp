#pragma once

#include <optional>
#include <string>
#include <vector>

#include "congruence.hpp"
#include "tate_oort.hpp"

namespace ordp {

/// Dense polynomials over F_q, coefficients low degree first.
namespace fp {

using Poly = std::vector<Integer>;

inline Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly normalize(Poly a, const Integer& q) {
  for (auto& c : a) c = mod_floor(c, q);
  return trim(std::move(a));
}

inline Poly add(const Poly& a, const Poly& b, const Integer& q, long sign = 1) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  return normalize(std::move(r), q);
}

inline Poly mul(const Poly& a, const Poly& b, const Integer& q) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return normalize(std::move(r), q);
}

inline Poly derivative(const Poly& a, const Integer& q) {
  Poly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  return normalize(std::move(r), q);
}

/// a = quot * b + rem, b nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, const Integer& q) {
  a = normalize(std::move(a), q);
  Poly bb = normalize(b, q);
  if (bb.empty()) throw DomainError("polynomial division by zero");
  Integer lead_inv = *mod_inverse(bb.back(), q);
  Poly quot(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0, 0);
  while (a.size() >= bb.size() && !a.empty()) {
    std::size_t shift = a.size() - bb.size();
    Integer c = mod_floor(a.back() * lead_inv, q);
    quot[shift] = c;
    for (std::size_t i = 0; i < bb.size(); ++i) a[shift + i] -= c * bb[i];
    a = normalize(std::move(a), q);
  }
  return {trim(quot), a};
}

struct Bezout {
  Poly gcd;  // monic
  Poly s;
  Poly t;    // s a + t b = gcd
};

inline Bezout ext_gcd(const Poly& a, const Poly& b, const Integer& q) {
  Poly r0 = normalize(a, q), r1 = normalize(b, q);
  Poly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [quot, rem] = divmod(r0, r1, q);
    Poly s2 = add(s0, mul(quot, s1, q), q, -1);
    Poly t2 = add(t0, mul(quot, t1, q), q, -1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty()) {
    Integer inv = *mod_inverse(r0.back(), q);
    Poly c{inv};
    r0 = mul(r0, c, q);
    s0 = mul(s0, c, q);
    t0 = mul(t0, c, q);
  }
  return {r0, s0, t0};
}

inline std::string sexpr(const Poly& a, const std::string& var = "X") {
  Terms t;
  for (std::size_t i = 0; i < a.size(); ++i) add_term(t, Monomial{static_cast<std::uint32_t>(i)}, Rational(a[i]));
  return terms_sexpr(t, {var});
}

}  // namespace fp

enum class FiberTag { Multiplicative, Etale, Alpha };

inline std::string to_string(FiberTag t) {
  switch (t) {
    case FiberTag::Multiplicative: return "Multiplicative";
    case FiberTag::Etale: return "Etale";
    case FiberTag::Alpha: return "Alpha";
  }
  return "?";
}

enum class FiberPoint { Generic, Special };

/// Fiber type with the evidence that selected it.
struct FiberType {
  FiberTag tag;
  std::string witness;
  std::optional<RingElement> inverse;   // Multiplicative (or Etale on the triple route)
  std::optional<fp::Bezout> separable;  // Etale, congruence route, special fiber
  fp::Poly polynomial;                  // reduced kernel polynomial, congruence route
};

namespace detail {

inline fp::Poly reduced_isogeny(const CongruenceDatum& d, const DVRSpec& dvr) {
  const unsigned p = d.p();
  const Integer& q = dvr.prime();
  Integer lam = dvr.residue(d.lambda()).constant_value()->get_num();
  Integer mu = dvr.residue(d.mu()).constant_value()->get_num();
  fp::Poly out(p + 1, 0);
  out[p] = 1;
  Integer lp = 1;
  for (unsigned i = 1; i < p; ++i) {
    out[i] = divided_binomial(p, i) * lp * mu;
    lp *= lam;
  }
  return fp::normalize(out, q);
}

inline FiberType etale_witness(const fp::Poly& pbar, const Integer& q) {
  auto b = fp::ext_gcd(pbar, fp::derivative(pbar, q), q);
  if (b.gcd != fp::Poly{1}) throw InvalidValuations("reduced polynomial " + fp::sexpr(pbar) + " is not separable");
  return {FiberTag::Etale, "gcd(P, P') = 1: (" + fp::sexpr(b.s) + ") P + (" + fp::sexpr(b.t) + ") P' = 1",
          std::nullopt, b, pbar};
}

}  // namespace detail

inline FiberType classify_fiber(const CongruenceDatum& d, FiberPoint which) {
  DVRSpec dvr(d.ring());
  const unsigned p = d.p();
  if (which == FiberPoint::Generic) {
    if (!d.lambda().is_zero()) {
      auto v = dvr.valuation(d.lambda());
      return {FiberTag::Multiplicative, "lambda != 0 in K, v(lambda) = " + v.get_str(), dvr.inverse(d.lambda()),
              std::nullopt, {}};
    }
    if (!d.mu().is_zero()) {
      return {FiberTag::Etale, "lambda = 0, mu != 0 in K: P = X^p + mu X with P' = mu", std::nullopt, std::nullopt,
              {}};
    }
    return {FiberTag::Alpha, "lambda = mu = 0: P = X^p", std::nullopt, std::nullopt, {}};
  }
  auto pbar = detail::reduced_isogeny(d, dvr);
  const Integer& q = dvr.prime();
  if (dvr.is_unit(d.lambda())) {
    auto inv = dvr.inverse(d.lambda());
    return {FiberTag::Multiplicative, "lambda is a unit with inverse " + inv->sexpr(), inv, std::nullopt, pbar};
  }
  bool mu_unit = dvr.is_unit(d.mu());
  if (mu_unit) return detail::etale_witness(pbar, q);
  fp::Poly xp(p + 1, 0);
  xp[p] = 1;
  if (fp::normalize(xp, q) == pbar) return {FiberTag::Alpha, "P reduces to X^p", std::nullopt, std::nullopt, pbar};
  throw InvalidValuations("no fiber type applies to " + d.sexpr());
}

/// Triple route: Multiplicative when b is invertible, Etale when a is,
/// Alpha when both reduce to 0.
inline FiberType classify_fiber(const TateOortTriple& t, FiberPoint which) {
  DVRSpec dvr(t.ring());
  if (which == FiberPoint::Generic) {
    if (!t.b().is_zero()) return {FiberTag::Multiplicative, "b != 0 in K", dvr.inverse(t.b()), std::nullopt, {}};
    if (!t.a().is_zero()) return {FiberTag::Etale, "b = 0, a != 0 in K", dvr.inverse(t.a()), std::nullopt, {}};
    return {FiberTag::Alpha, "a = b = 0", std::nullopt, std::nullopt, {}};
  }
  if (dvr.is_unit(t.b())) {
    auto inv = dvr.inverse(t.b());
    return {FiberTag::Multiplicative, "b is a unit with inverse " + inv->sexpr(), inv, std::nullopt, {}};
  }
  if (dvr.is_unit(t.a())) {
    auto inv = dvr.inverse(t.a());
    return {FiberTag::Etale, "a is a unit with inverse " + inv->sexpr(), inv, std::nullopt, {}};
  }
  if (dvr.residue(t.a()).is_zero() && dvr.residue(t.b()).is_zero()) {
    return {FiberTag::Alpha, "a and b reduce to 0", std::nullopt, std::nullopt, {}};
  }
  throw InvalidValuations("no fiber type applies to " + t.sexpr());
}

struct DegenerationReport {
  CongruenceDatum datum;
  FiberType generic;
  FiberType special;
  std::optional<Rational> v_lambda;  // nullopt = infinity
  std::optional<Rational> v_mu;
  std::optional<Rational> v_p;
  fp::Poly special_polynomial;
};

inline std::string valuation_string(const std::optional<Rational>& v) { return v ? v->get_str() : "inf"; }

inline DegenerationReport degeneration_report(const CongruenceDatum& d) {
  DVRSpec dvr(d.ring());
  auto vl = dvr.extended_valuation(d.lambda());
  auto vm = dvr.extended_valuation(d.mu());
  auto vp = dvr.extended_valuation(d.ring().constant(d.prime()));
  const unsigned p = d.p();
  if (vp) {
    if (!vl || !vm || *vl * (p - 1) + *vm != *vp) {
      throw InvalidValuations("v(lambda)(p-1) + v(mu) != v(p) for " + d.sexpr());
    }
  } else if (vl && vm) {
    // truncated equal-characteristic model: lambda^(p-1) mu vanishes by truncation
    if (*vl * (p - 1) + *vm < dvr.data().truncation) {
      throw InvalidValuations("lambda^(p-1) mu is nonzero although p = 0 for " + d.sexpr());
    }
  }
  auto generic = classify_fiber(d, FiberPoint::Generic);
  auto special = classify_fiber(d, FiberPoint::Special);
  return {d, generic, special, vl, vm, vp, special.polynomial};
}

}  // namespace ordp
