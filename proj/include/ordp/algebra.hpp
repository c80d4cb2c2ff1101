#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "ring.hpp"

namespace ordp {

/// Monomial basis of a ring that is free over a subring, the subring being
/// generated by every variable outside `extension_vars`.
struct MonomialBasis {
  std::vector<std::size_t> extension_vars;
  std::vector<Monomial> monomials;  // full-arity monomials supported on extension_vars

  std::optional<std::size_t> index_of(const Monomial& m) const {
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      if (monomials[i] == m) return i;
    }
    return std::nullopt;
  }
};

/// Standard monomials in the given variables, or nullopt when some variable
/// has no pure-power rule (the module is then free of infinite rank).
inline std::optional<MonomialBasis> standard_basis(const PresentedRing& ring, const std::vector<std::size_t>& vars) {
  const std::size_t n = ring.num_variables();
  std::vector<std::uint32_t> bound(n, 0);
  for (auto v : vars) {
    std::uint32_t best = 0;
    for (const auto& r : ring.rules()) {
      bool pure = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != v && r.lhs[i] != 0) pure = false;
      }
      if (pure && r.lhs[v] > 0 && (best == 0 || r.lhs[v] < best)) best = r.lhs[v];
    }
    if (best == 0) return std::nullopt;
    bound[v] = best;
  }
  MonomialBasis basis;
  basis.extension_vars = vars;
  Monomial m(n, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == vars.size()) {
      for (const auto& r : ring.rules()) {
        if (divides(r.lhs, m)) return;
      }
      basis.monomials.push_back(m);
      return;
    }
    for (std::uint32_t e = 0; e < bound[vars[k]]; ++e) {
      m[vars[k]] = e;
      walk(k + 1);
    }
    m[vars[k]] = 0;
  };
  walk(0);
  std::sort(basis.monomials.begin(), basis.monomials.end(), MonomialOrder{});
  return basis;
}

inline std::optional<MonomialBasis> standard_basis(const PresentedRing& ring) {
  std::vector<std::size_t> all(ring.num_variables());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return standard_basis(ring, all);
}

/// Splits a normal-form polynomial by the extension-variable part of each
/// monomial: extension monomial -> coefficient terms in the remaining variables.
inline std::map<Monomial, Terms, MonomialOrder> split_coordinates(const Terms& t, const std::vector<std::size_t>& ext) {
  std::map<Monomial, Terms, MonomialOrder> out;
  for (const auto& [m, c] : t) {
    Monomial outer(m.size(), 0);
    Monomial inner = m;
    for (auto v : ext) {
      outer[v] = m[v];
      inner[v] = 0;
    }
    add_term(out[outer], inner, c);
  }
  return out;
}

/// Matrix of multiplication by e over the coefficient domain, in the
/// standard monomial basis (column j = coordinates of e * b_j).
inline Matrix<Rational> multiplication_matrix(const RingElement& e, const MonomialBasis& basis) {
  const std::size_t n = basis.monomials.size();
  Matrix<Rational> m(n, std::vector<Rational>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    Terms bj;
    bj.emplace(basis.monomials[j], 1);
    RingElement prod = e * e.ring().element(bj);
    for (const auto& [mono, c] : prod.terms()) {
      auto i = basis.index_of(mono);
      if (!i) throw InvariantViolation("multiplication escapes the monomial basis");
      m[*i][j] = c;
    }
  }
  return m;
}

/// Norm over the coefficient domain of a ring that is finite free over it.
inline Rational norm(const RingElement& e) {
  auto basis = standard_basis(e.ring());
  if (!basis) throw Undecidable("norm: " + e.ring().sexpr() + " is not finite over its coefficients");
  Matrix<Rational> m = multiplication_matrix(e, *basis);
  if (e.ring().coefficients().is_modular()) {
    const auto& dom = e.ring().coefficients();
    struct Mod {
      Rational v;
      const CoefficientDomain* d;
      Mod operator+(const Mod& o) const { return {d->normalize(v + o.v), d}; }
      Mod operator-(const Mod& o) const { return {d->normalize(v - o.v), d}; }
      Mod operator*(const Mod& o) const { return {d->normalize(v * o.v), d}; }
    };
    Matrix<Mod> mm(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (const auto& x : m[i]) mm[i].push_back({x, &dom});
    }
    return determinant(mm, Mod{0, &dom}, Mod{1, &dom}).v;
  }
  return determinant(std::move(m));
}

/// Reads full-arity terms free of extension variables as an element of a
/// base ring whose variables are a prefix of the ambient ones.
inline RingElement restrict_to_base(const Terms& t, const PresentedRing& base) {
  const std::size_t k = base.num_variables();
  Terms out;
  for (const auto& [m, c] : t) {
    for (std::size_t i = k; i < m.size(); ++i) {
      if (m[i] != 0) throw RingMismatch("coefficient leaves " + base.sexpr());
    }
    add_term(out, Monomial(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k)), c);
  }
  return base.element(out);
}

inline void check_prefix(const PresentedRing& base, const PresentedRing& total) {
  const auto& bv = base.variables();
  const auto& tv = total.variables();
  if (bv.size() > tv.size() || !std::equal(bv.begin(), bv.end(), tv.begin())) {
    throw RingMismatch(base.sexpr() + " is not a base of " + total.sexpr());
  }
}

/// Coordinates of e in the basis, as elements of the base ring.
inline std::vector<RingElement> coordinates_over(const RingElement& e, const MonomialBasis& basis,
                                                 const PresentedRing& base) {
  check_prefix(base, e.ring());
  std::vector<RingElement> out(basis.monomials.size(), base.zero());
  for (const auto& [outer, inner] : split_coordinates(e.terms(), basis.extension_vars)) {
    auto i = basis.index_of(outer);
    if (!i) throw InvariantViolation("element escapes the monomial basis");
    out[*i] = restrict_to_base(inner, base);
  }
  return out;
}

/// Inverse of coordinates_over.
inline RingElement from_coordinates(const std::vector<RingElement>& coords, const MonomialBasis& basis,
                                    const PresentedRing& total) {
  Terms acc;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (const auto& [m, c] : coords[i].terms()) {
      Monomial full = basis.monomials[i];
      for (std::size_t v = 0; v < m.size(); ++v) full[v] += m[v];
      add_term(acc, full, c);
    }
  }
  return total.element(acc);
}

/// Multiplication by e as a matrix over the base ring (column j = coordinates
/// of e * b_j).
inline Matrix<RingElement> multiplication_matrix_over(const RingElement& e, const MonomialBasis& basis,
                                                      const PresentedRing& base) {
  const std::size_t n = basis.monomials.size();
  Matrix<RingElement> m(n, std::vector<RingElement>(n, base.zero()));
  for (std::size_t j = 0; j < n; ++j) {
    Terms bj;
    bj.emplace(basis.monomials[j], 1);
    auto col = coordinates_over(e * e.ring().element(bj), basis, base);
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

/// Norm of e down to the base ring, by a division-free determinant.
inline RingElement norm_over(const RingElement& e, const MonomialBasis& basis, const PresentedRing& base) {
  return determinant(multiplication_matrix_over(e, basis, base), base.zero(), base.one());
}

/// A variable name not yet used in the ring.
inline std::string fresh_variable(const PresentedRing& ring, const std::string& stem) {
  if (!ring.variable_index(stem)) return stem;
  for (int k = 1;; ++k) {
    std::string name = stem + std::to_string(k);
    if (!ring.variable_index(name)) return name;
  }
}

namespace detail {

/// Inverse by Cayley-Hamilton: e^n + c1 e^(n-1) + ... + cn = 0, so
/// e * (e^(n-1) + ... + c_{n-1}) = -cn. Requires cn to be a unit scalar.
inline std::optional<RingElement> finite_inverse(const RingElement& e, const MonomialBasis& basis) {
  const auto& ring = e.ring();
  const auto& dom = ring.coefficients();
  Matrix<RingElement> m;
  {
    Matrix<Rational> raw = multiplication_matrix(e, basis);
    PresentedRing scalars = dom.is_modular() ? PresentedRing::integers_mod(dom.modulus()) : PresentedRing::rationals();
    for (const auto& row : raw) {
      std::vector<RingElement> r;
      for (const auto& x : row) r.push_back(scalars.constant(x));
      m.push_back(std::move(r));
    }
  }
  auto zero = m.empty() ? ring.zero() : m[0][0].ring().zero();
  auto one = m.empty() ? ring.one() : m[0][0].ring().one();
  auto c = characteristic_polynomial(m, zero, one);
  const std::size_t n = c.size() - 1;
  Rational cn = *c[n].constant_value();
  if (!dom.is_unit(cn)) return std::nullopt;
  RingElement acc = ring.zero();
  for (std::size_t k = 0; k < n; ++k) acc = acc * e + ring.constant(*c[k].constant_value());
  RingElement inv = acc.scaled(dom.divide(-1, cn));
  if (!(inv * e - ring.one()).is_zero()) throw InvariantViolation("inverse witness failed to verify");
  return inv;
}

inline Integer radical(const Integer& n) {
  Integer m = n;
  Integer rad = 1;
  for (Integer q = 2; q * q <= m; ++q) {
    if (q > 1000000) {
      if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) throw Undecidable("cannot factor modulus " + n.get_str());
      break;
    }
    if (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) {
      rad *= q;
      while (mpz_divisible_p(m.get_mpz_t(), q.get_mpz_t())) m /= q;
    }
  }
  if (m > 1) rad *= m;
  return rad;
}

}  // namespace detail

/// Discrete valuation ring view of a ValuedLocal ring (elements are read in
/// its fraction field). Valuations are normalized so that the uniformizer
/// has valuation 1.
class DVRSpec {
 public:
  explicit DVRSpec(PresentedRing ring) : ring_(std::move(ring)) {
    if (ring_.kind() != RingKind::ValuedLocal || !ring_.dvr()) {
      throw UnsupportedRing(ring_.sexpr() + " carries no valuation data");
    }
  }

  const PresentedRing& ring() const { return ring_; }
  const DvrData& data() const { return *ring_.dvr(); }
  const Integer& prime() const { return data().prime; }
  RingElement uniformizer() const { return ring_.element(data().uniformizer); }
  PresentedRing residue_field() const { return PresentedRing::integers_mod(prime()); }

  Rational valuation(const RingElement& e) const {
    check(e);
    if (e.is_zero()) throw ZeroValuation("valuation of 0 is undefined");
    switch (data().kind) {
      case DvrKind::RationalPrime: return Rational(ordp::valuation(*e.constant_value(), prime()));
      case DvrKind::TotallyRamified: return Rational(ordp::valuation(norm(e), prime()));
      case DvrKind::EqualCharacteristic: {
        std::uint32_t best = data().truncation;
        for (const auto& [m, c] : e.terms()) best = std::min(best, m[0]);
        return Rational(best);
      }
    }
    throw InvariantViolation("unknown valuation kind");
  }

  /// Valuation of the integer p, nullopt standing for infinity.
  std::optional<Rational> valuation_of_p() const {
    RingElement pe = ring_.constant(Rational(prime()));
    if (pe.is_zero()) return std::nullopt;
    return valuation(pe);
  }

  /// Valuation with 0 sent to infinity (nullopt), for reports.
  std::optional<Rational> extended_valuation(const RingElement& e) const {
    if (e.is_zero()) return std::nullopt;
    return valuation(e);
  }

  bool contains(const RingElement& e) const { return e.is_zero() || valuation(e) >= 0; }

  /// Image in the residue field F_p. Requires valuation >= 0.
  RingElement residue(const RingElement& e) const {
    check(e);
    PresentedRing k = residue_field();
    if (e.is_zero()) return k.zero();
    if (valuation(e) < 0) throw NonIntegral("element of negative valuation has no residue");
    const Integer& p = prime();
    auto reduce = [&](const Rational& c) {
      if (mpz_divisible_p(c.get_den().get_mpz_t(), p.get_mpz_t())) {
        throw NonIntegral("coefficient " + c.get_str() + " is not p-integral");
      }
      return k.constant(c);
    };
    switch (data().kind) {
      case DvrKind::RationalPrime: return reduce(*e.constant_value());
      case DvrKind::TotallyRamified: {
        RingElement acc = k.zero();
        for (const auto& [m, c] : e.terms()) {
          acc += reduce(c) * k.constant(Rational(ipow(data().residue_root, m[0])));
        }
        return acc;
      }
      case DvrKind::EqualCharacteristic: {
        Monomial zero(1, 0);
        auto it = e.terms().find(zero);
        return it == e.terms().end() ? k.zero() : k.constant(it->second);
      }
    }
    throw InvariantViolation("unknown valuation kind");
  }

  /// Inverse in the fraction field (or, in the truncated equal-characteristic
  /// model, in the ring itself when e is a unit).
  std::optional<RingElement> inverse(const RingElement& e) const {
    check(e);
    if (e.is_zero()) return std::nullopt;
    if (data().kind == DvrKind::RationalPrime) return ring_.constant(1 / *e.constant_value());
    auto basis = standard_basis(ring_);
    return detail::finite_inverse(e, *basis);
  }

  bool is_unit(const RingElement& e) const { return !e.is_zero() && valuation(e) == 0; }

 private:
  void check(const RingElement& e) const {
    if (e.ring() != ring_) throw RingMismatch("element is not in " + ring_.sexpr());
  }
  PresentedRing ring_;
};

/// Unit test with witness: returns the inverse when e is a unit, nullopt when
/// it is not, and throws Undecidable where no exact procedure applies.
inline std::optional<RingElement> unit_inverse(const RingElement& e) {
  const auto& ring = e.ring();
  const auto& dom = ring.coefficients();
  if (ring.one().is_zero()) return ring.zero();
  if (ring.kind() == RingKind::ValuedLocal) {
    DVRSpec dvr(ring);
    if (!dvr.is_unit(e)) return std::nullopt;
    return dvr.inverse(e);
  }
  if (e.is_zero()) return std::nullopt;
  if (auto c = e.constant_value(); c && dom.is_unit(*c)) {
    return ring.constant(dom.divide(1, *c));
  }
  if (auto basis = standard_basis(ring)) return detail::finite_inverse(e, *basis);
  if (ring.rules().empty()) {
    if (!dom.is_modular()) return std::nullopt;
    // Over Z/n a polynomial is a unit iff its constant term is a unit and the
    // remaining coefficients are nilpotent.
    Integer rad = detail::radical(dom.modulus());
    Monomial one(ring.num_variables(), 0);
    auto it = e.terms().find(one);
    if (it == e.terms().end() || !dom.is_unit(it->second)) return std::nullopt;
    for (const auto& [m, c] : e.terms()) {
      if (m == one) continue;
      if (!mpz_divisible_p(c.get_num().get_mpz_t(), rad.get_mpz_t())) return std::nullopt;
    }
    Rational c0inv = dom.divide(1, it->second);
    RingElement nil = e.scaled(c0inv) - ring.one();
    RingElement term = ring.one();
    RingElement sum = ring.zero();
    while (!term.is_zero()) {
      sum += term;
      term = -(term * nil);
    }
    return sum.scaled(c0inv);
  }
  throw Undecidable("unit test is not implemented for " + ring.sexpr());
}

inline bool is_unit(const RingElement& e) { return unit_inverse(e).has_value(); }

inline PresentedRing PresentedRing::valued_local(const PresentedRing& base, const RingElement& uniformizer,
                                                 const Integer& p) {
  if (uniformizer.ring() != base) throw RingMismatch("uniformizer must lie in the base ring");
  if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw DomainError(p.get_str() + " is not prime");
  if (base.kind() == RingKind::ValuedLocal) throw UnsupportedRing("base is already local");
  DvrData data;
  data.prime = p;
  data.uniformizer = uniformizer.terms();
  CoefficientDomain coeffs = base.coefficients();
  const auto& dom = base.coefficients();
  if (!dom.is_modular() && base.num_variables() == 0) {
    data.kind = DvrKind::RationalPrime;
    auto c = uniformizer.constant_value();
    if (!c || *c == 0 || valuation(*c, p) != 1) throw DomainError("uniformizer of Z_(p) must have p-valuation 1");
    coeffs = CoefficientDomain::rationals();
  } else if (!dom.is_modular() && base.num_variables() == 1 && base.rules().size() == 1 &&
             base.rules()[0].kind == RelationKind::Monic) {
    data.kind = DvrKind::TotallyRamified;
    const Rule& rule = base.rules()[0];
    const std::uint32_t n = rule.lhs[0];
    std::vector<Rational> f(n + 1, 0);
    f[n] = 1;
    for (const auto& [m, c] : rule.rhs) f[m[0]] = -c;
    for (const auto& c : f) {
      if (!is_integral(c)) throw UnsupportedRing("defining polynomial must have integer coefficients");
    }
    bool found = false;
    for (Integer r = 0; r < p && !found; ++r) {
      // Coefficients of f(X + r).
      std::vector<Integer> g(n + 1, 0);
      for (std::uint32_t k = 0; k <= n; ++k) {
        Integer binom = 1;
        for (std::uint32_t j = 0; j <= k; ++j) {
          if (j > 0) binom = binom * (k - j + 1) / j;
          g[j] += Integer(f[k].get_num()) * binom * ipow(r, k - j);
        }
      }
      bool eisenstein = g[0] != 0 && mpz_divisible_p(g[0].get_mpz_t(), p.get_mpz_t()) &&
                        !mpz_divisible_p(g[0].get_mpz_t(), Integer(p * p).get_mpz_t());
      for (std::uint32_t j = 1; j < n && eisenstein; ++j) {
        eisenstein = mpz_divisible_p(g[j].get_mpz_t(), p.get_mpz_t()) != 0;
      }
      if (eisenstein) {
        data.residue_root = r;
        found = true;
      }
    }
    if (!found) throw UnsupportedRing("defining polynomial is not Eisenstein at " + p.get_str() + " after a shift");
    data.degree = n;
    coeffs = CoefficientDomain::rationals();
  } else if (dom.is_modular() && dom.modulus() == p && base.num_variables() == 1 && base.rules().size() == 1 &&
             base.rules()[0].rhs.empty()) {
    data.kind = DvrKind::EqualCharacteristic;
    data.truncation = base.rules()[0].lhs[0];
  } else {
    throw UnsupportedRing("no valuation model for " + base.sexpr());
  }

  auto impl = std::make_shared<Impl>();
  impl->kind = RingKind::ValuedLocal;
  impl->coeffs = coeffs;
  impl->vars = base.variables();
  impl->rules = base.rules();
  impl->base = base.impl_;
  impl->dvr = data;
  impl->signature = "(local " + base.sexpr() + " :uniformizer " + uniformizer.sexpr() + " :p " + p.get_str() + ")";
  PresentedRing ring(std::move(impl));
  DVRSpec dvr(ring);
  if (dvr.valuation(ring.element(data.uniformizer)) != 1) {
    throw DomainError("uniformizer " + uniformizer.sexpr() + " does not have valuation 1");
  }
  return ring;
}

}  // namespace ordp
