#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

namespace ordp {

enum class RingKind { Integers, IntegersMod, Rationals, PAdic, Polynomial, Quotient, ValuedLocal };

enum class RelationKind { Monic, MonomialRewrite };

/// A rewrite rule lhs -> rhs, strictly decreasing in MonomialOrder.
struct Rule {
  RelationKind kind;
  std::size_t variable = 0;  // Monic only
  Monomial lhs;
  Terms rhs;
};

/// Relation as written by the caller, in the variable indexing of the base.
struct RelationSpec {
  RelationKind kind;
  std::string variable;  // Monic: the reduced variable
  Terms polynomial;      // Monic: the monic polynomial itself
  Monomial lhs;          // MonomialRewrite
  Terms rhs;             // MonomialRewrite

  static RelationSpec monic(std::string var, Terms poly) {
    return RelationSpec{RelationKind::Monic, std::move(var), std::move(poly), {}, {}};
  }
  static RelationSpec rewrite(Monomial lhs, Terms rhs) {
    return RelationSpec{RelationKind::MonomialRewrite, {}, {}, std::move(lhs), std::move(rhs)};
  }
};

enum class DvrKind { RationalPrime, TotallyRamified, EqualCharacteristic };

/// Valuation data attached to a ValuedLocal ring.
struct DvrData {
  DvrKind kind;
  Integer prime;         // residue characteristic
  Terms uniformizer;
  Integer residue_root;  // image of the generator in F_p (TotallyRamified)
  std::uint32_t truncation = 0;  // EqualCharacteristic: s^truncation = 0
  std::size_t degree = 1;        // rank over Z_(p) (TotallyRamified)
};

class RingElement;

/// Immutable presentation of a commutative ring: a coefficient domain, a
/// variable list and a terminating, locally confluent rewrite system.
/// Copies share the underlying presentation.
class PresentedRing {
 public:
  static PresentedRing integers() { return make_atomic(RingKind::Integers, CoefficientDomain::integers(), "(int)"); }
  static PresentedRing rationals() { return make_atomic(RingKind::Rationals, CoefficientDomain::rationals(), "(rat)"); }
  static PresentedRing integers_mod(const Integer& n) {
    return make_atomic(RingKind::IntegersMod, CoefficientDomain::modular(n), "(intmod " + n.get_str() + ")");
  }
  static PresentedRing padic(const Integer& p, unsigned precision) {
    if (precision == 0) throw DomainError("p-adic precision must be positive");
    auto r = make_atomic(RingKind::PAdic, CoefficientDomain::modular(ipow(p, precision)),
                         "(padic " + p.get_str() + " " + std::to_string(precision) + ")");
    auto impl = std::make_shared<Impl>(*r.impl_);
    impl->padic_prime = p;
    impl->padic_precision = precision;
    return PresentedRing(std::move(impl));
  }

  static PresentedRing polynomial(const PresentedRing& base, const std::vector<std::string>& new_vars);
  static PresentedRing quotient(const PresentedRing& base, const std::vector<RelationSpec>& relations);
  /// Declared in algebra.hpp: validates the ramification data.
  static PresentedRing valued_local(const PresentedRing& base, const RingElement& uniformizer, const Integer& p);

  RingKind kind() const { return impl_->kind; }
  const CoefficientDomain& coefficients() const { return impl_->coeffs; }
  const std::vector<std::string>& variables() const { return impl_->vars; }
  std::size_t num_variables() const { return impl_->vars.size(); }
  const std::vector<Rule>& rules() const { return impl_->rules; }
  /// Rules introduced at this level of the tower (Quotient only).
  const std::vector<Rule>& level_rules() const { return impl_->level_rules; }
  const std::vector<std::string>& level_variables() const { return impl_->level_vars; }
  std::optional<PresentedRing> base() const {
    if (!impl_->base) return std::nullopt;
    return PresentedRing(impl_->base);
  }
  const std::optional<DvrData>& dvr() const { return impl_->dvr; }
  /// Nearest ValuedLocal ring in the tower (this ring or a base).
  std::optional<PresentedRing> valued_ancestor() const {
    for (auto r = std::optional<PresentedRing>(*this); r; r = r->base()) {
      if (r->kind() == RingKind::ValuedLocal) return r;
    }
    return std::nullopt;
  }
  const Integer& padic_prime() const { return impl_->padic_prime; }
  unsigned padic_precision() const { return impl_->padic_precision; }

  std::optional<std::size_t> variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < impl_->vars.size(); ++i) {
      if (impl_->vars[i] == name) return i;
    }
    return std::nullopt;
  }
  std::size_t require_variable(const std::string& name) const {
    auto i = variable_index(name);
    if (!i) throw UnknownVariable("'" + name + "' is not a variable of " + sexpr());
    return *i;
  }

  /// The unique normal form of raw terms under the rewrite system.
  Terms normal_form(const Terms& raw) const { return reduce(raw, impl_->rules, impl_->coeffs); }

  RingElement element(const Terms& raw) const;
  RingElement zero() const;
  RingElement one() const;
  RingElement constant(const Rational& c) const;
  RingElement variable(const std::string& name) const;

  const std::string& sexpr() const { return impl_->signature; }

  bool operator==(const PresentedRing& o) const {
    return impl_ == o.impl_ || impl_->signature == o.impl_->signature;
  }
  bool operator!=(const PresentedRing& o) const { return !(*this == o); }

  /// Reduction of raw terms by an explicit rule list; exposed for the
  /// confluence checker.
  static Terms reduce(const Terms& raw, const std::vector<Rule>& rules, const CoefficientDomain& coeffs) {
    Terms work;
    for (const auto& [m, c] : raw) add_term(work, m, coeffs.normalize(c));
    Terms result;
    while (!work.empty()) {
      auto it = std::prev(work.end());
      Monomial m = it->first;
      Rational c = it->second;
      work.erase(it);
      const Rule* hit = nullptr;
      for (const auto& r : rules) {
        if (divides(r.lhs, m)) {
          hit = &r;
          break;
        }
      }
      if (!hit) {
        Rational n = coeffs.normalize(c);
        if (n != 0) result.emplace(std::move(m), n);
        continue;
      }
      Monomial q = mono_div(m, hit->lhs);
      for (const auto& [rm, rc] : hit->rhs) {
        Rational nc = coeffs.normalize(c * rc);
        if (nc == 0) continue;
        Monomial target = mono_mul(q, rm);
        auto [pos, inserted] = work.try_emplace(std::move(target), nc);
        if (!inserted) {
          pos->second = coeffs.normalize(pos->second + nc);
          if (pos->second == 0) work.erase(pos);
        }
      }
    }
    return result;
  }

 private:
  struct Impl {
    RingKind kind;
    CoefficientDomain coeffs = CoefficientDomain::integers();
    std::vector<std::string> vars;
    std::vector<Rule> rules;
    std::vector<Rule> level_rules;
    std::vector<std::string> level_vars;
    std::shared_ptr<const Impl> base;
    std::optional<DvrData> dvr;
    Integer padic_prime = 0;
    unsigned padic_precision = 0;
    std::string signature;
  };

  explicit PresentedRing(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static PresentedRing make_atomic(RingKind kind, CoefficientDomain coeffs, std::string sig) {
    auto impl = std::make_shared<Impl>();
    impl->kind = kind;
    impl->coeffs = std::move(coeffs);
    impl->signature = std::move(sig);
    return PresentedRing(std::move(impl));
  }

  static std::string relation_sexpr(const Rule& r, const std::vector<std::string>& vars) {
    if (r.kind == RelationKind::Monic) {
      Terms f = terms_scale(r.rhs, -1);
      add_term(f, r.lhs, 1);
      return "(monic " + vars[r.variable] + " " + terms_sexpr(f, vars) + ")";
    }
    Terms lhs;
    lhs.emplace(r.lhs, 1);
    return "(rewrite " + terms_sexpr(lhs, vars) + " " + terms_sexpr(r.rhs, vars) + ")";
  }

  static void check_confluence(const std::vector<Rule>& rules, std::size_t first_new, const CoefficientDomain& coeffs,
                               const std::vector<std::string>& vars);

  std::shared_ptr<const Impl> impl_;

  friend class RingElement;
};

/// An element of a PresentedRing, always held in normal form.
class RingElement {
 public:
  RingElement(PresentedRing ring, Terms reduced) : ring_(std::move(ring)), terms_(std::move(reduced)) {}

  const PresentedRing& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Constant term as a scalar, if the element is constant.
  std::optional<Rational> constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0) return terms_.begin()->second;
    return std::nullopt;
  }

  RingElement operator+(const RingElement& o) const {
    check_same(o);
    return ring_.element(terms_add(terms_, o.terms_));
  }
  RingElement operator-(const RingElement& o) const {
    check_same(o);
    return ring_.element(terms_add(terms_, o.terms_, -1));
  }
  RingElement operator-() const { return ring_.element(terms_scale(terms_, -1)); }
  RingElement operator*(const RingElement& o) const {
    check_same(o);
    return ring_.element(terms_mul(terms_, o.terms_));
  }
  RingElement scaled(const Rational& c) const { return ring_.element(terms_scale(terms_, c)); }
  /// Division by a scalar of the coefficient domain (exact; residue rings
  /// require a unit).
  RingElement divided_by(const Rational& c) const {
    return ring_.element(terms_scale(terms_, ring_.coefficients().divide(1, c)));
  }
  RingElement pow(unsigned long e) const {
    RingElement result = ring_.one();
    RingElement base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }

  bool operator==(const RingElement& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  bool is_integral() const {
    for (const auto& [m, c] : terms_) {
      if (!ordp::is_integral(c)) return false;
    }
    return true;
  }

  std::string sexpr() const { return terms_sexpr(terms_, ring_.variables()); }
  std::string infix() const { return terms_infix(terms_, ring_.variables()); }

 private:
  void check_same(const RingElement& o) const {
    if (ring_ != o.ring_) throw RingMismatch(ring_.sexpr() + " vs " + o.ring_.sexpr());
  }

  PresentedRing ring_;
  Terms terms_;
};

inline RingElement PresentedRing::element(const Terms& raw) const {
  for (const auto& [m, c] : raw) {
    if (m.size() != num_variables()) throw UnknownVariable("monomial arity does not match " + sexpr());
  }
  return RingElement(*this, normal_form(raw));
}
inline RingElement PresentedRing::zero() const { return RingElement(*this, {}); }
inline RingElement PresentedRing::one() const { return constant(1); }
inline RingElement PresentedRing::constant(const Rational& c) const {
  return RingElement(*this, normal_form(terms_constant(num_variables(), c)));
}
inline RingElement PresentedRing::variable(const std::string& name) const {
  return RingElement(*this, normal_form(terms_variable(num_variables(), require_variable(name))));
}

inline RingElement operator*(const Rational& c, const RingElement& e) { return e.scaled(c); }
inline RingElement operator+(const RingElement& e, const Rational& c) { return e + e.ring().constant(c); }
inline RingElement operator-(const RingElement& e, const Rational& c) { return e - e.ring().constant(c); }
inline RingElement operator+(const Rational& c, const RingElement& e) { return e.ring().constant(c) + e; }
inline RingElement operator-(const Rational& c, const RingElement& e) { return e.ring().constant(c) - e; }

/// Monic relation f(var) = 0 given by an element of the base ring.
inline RelationSpec monic_relation(const std::string& var, const RingElement& f) {
  return RelationSpec::monic(var, f.terms());
}

/// Rewrite rule lhs -> rhs; lhs must be a bare monomial.
inline RelationSpec rewrite_relation(const RingElement& lhs, const RingElement& rhs) {
  if (lhs.terms().size() != 1 || lhs.terms().begin()->second != 1) {
    throw DomainError("rewrite left-hand side must be a monomial with coefficient 1");
  }
  return RelationSpec::rewrite(lhs.terms().begin()->first, rhs.terms());
}

inline void PresentedRing::check_confluence(const std::vector<Rule>& rules, std::size_t first_new,
                                            const CoefficientDomain& coeffs, const std::vector<std::string>& vars) {
  for (std::size_t j = first_new; j < rules.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Rule& a = rules[i];
      const Rule& b = rules[j];
      if (coprime(a.lhs, b.lhs)) continue;
      Monomial l = mono_lcm(a.lhs, b.lhs);
      Terms sa;
      Terms sb;
      for (const auto& [m, c] : a.rhs) add_term(sa, mono_mul(mono_div(l, a.lhs), m), c);
      for (const auto& [m, c] : b.rhs) add_term(sb, mono_mul(mono_div(l, b.lhs), m), c);
      Terms diff = reduce(terms_add(sa, sb, -1), rules, coeffs);
      if (!diff.empty()) {
        Terms lt;
        lt.emplace(l, 1);
        throw NonConfluentPresentation("critical pair at " + terms_sexpr(lt, vars) + " does not resolve: " +
                                       terms_sexpr(diff, vars) + " != 0");
      }
    }
  }
}

inline PresentedRing PresentedRing::polynomial(const PresentedRing& base, const std::vector<std::string>& new_vars) {
  auto impl = std::make_shared<Impl>();
  impl->kind = RingKind::Polynomial;
  impl->coeffs = base.coefficients();
  impl->vars = base.variables();
  for (const auto& v : new_vars) {
    if (v.empty()) throw DomainError("empty variable name");
    if (base.variable_index(v) || std::count(impl->level_vars.begin(), impl->level_vars.end(), v)) {
      throw DomainError("variable '" + v + "' declared twice");
    }
    impl->vars.push_back(v);
    impl->level_vars.push_back(v);
  }
  const std::size_t n = impl->vars.size();
  for (Rule r : base.rules()) {
    r.lhs.resize(n, 0);
    Terms rhs;
    for (const auto& [m, c] : r.rhs) {
      Monomial mm = m;
      mm.resize(n, 0);
      rhs.emplace(std::move(mm), c);
    }
    r.rhs = std::move(rhs);
    impl->rules.push_back(std::move(r));
  }
  impl->base = base.impl_;
  std::string vs;
  for (const auto& v : new_vars) vs += (vs.empty() ? "" : " ") + v;
  impl->signature = "(poly " + base.sexpr() + " (" + vs + "))";
  return PresentedRing(std::move(impl));
}

inline PresentedRing PresentedRing::quotient(const PresentedRing& base, const std::vector<RelationSpec>& relations) {
  auto impl = std::make_shared<Impl>();
  impl->kind = RingKind::Quotient;
  impl->coeffs = base.coefficients();
  impl->vars = base.variables();
  impl->rules = base.rules();
  impl->base = base.impl_;
  const std::size_t n = impl->vars.size();
  const std::size_t first_new = impl->rules.size();
  for (const auto& spec : relations) {
    Rule rule;
    rule.kind = spec.kind;
    if (spec.kind == RelationKind::Monic) {
      std::size_t v = base.require_variable(spec.variable);
      std::uint32_t deg = 0;
      for (const auto& [m, c] : spec.polynomial) {
        if (m.size() != n) throw UnknownVariable("relation arity mismatch");
        deg = std::max(deg, m[v]);
      }
      if (deg == 0) throw DomainError("monic relation in " + spec.variable + " has degree 0");
      Monomial lead(n, 0);
      lead[v] = deg;
      Terms rest;
      for (const auto& [m, c] : spec.polynomial) {
        if (m[v] == deg && m != lead) {
          throw DomainError("relation is not monic in " + spec.variable + ": leading coefficient is not 1");
        }
        if (m != lead) add_term(rest, m, -impl->coeffs.normalize(c));
      }
      auto lc = spec.polynomial.find(lead);
      if (lc == spec.polynomial.end() || impl->coeffs.normalize(lc->second) != impl->coeffs.normalize(1)) {
        throw DomainError("relation is not monic in " + spec.variable + ": leading coefficient is not 1");
      }
      rule.variable = v;
      rule.lhs = lead;
      rule.rhs = std::move(rest);
    } else {
      if (spec.lhs.size() != n) throw UnknownVariable("relation arity mismatch");
      if (total_degree(spec.lhs) == 0) throw DomainError("rewrite rule with constant left-hand side");
      rule.lhs = spec.lhs;
      for (const auto& [m, c] : spec.rhs) {
        if (m.size() != n) throw UnknownVariable("relation arity mismatch");
        add_term(rule.rhs, m, impl->coeffs.normalize(c));
      }
    }
    for (const auto& [m, c] : rule.rhs) {
      if (!monomial_less(m, rule.lhs)) {
        Terms lt;
        lt.emplace(rule.lhs, 1);
        Terms rt;
        rt.emplace(m, 1);
        throw NonTerminatingPresentation("rule for " + terms_sexpr(lt, impl->vars) + " produces " +
                                         terms_sexpr(rt, impl->vars) +
                                         ", which is not smaller (later variables are more significant)");
      }
    }
    impl->rules.push_back(rule);
    impl->level_rules.push_back(std::move(rule));
  }
  check_confluence(impl->rules, first_new, impl->coeffs, impl->vars);
  std::string rs;
  for (const auto& r : impl->level_rules) rs += " " + relation_sexpr(r, impl->vars);
  impl->signature = "(quo " + base.sexpr() + rs + ")";
  return PresentedRing(std::move(impl));
}

/// Image of f under the ring map that sends each variable named in the
/// assignment to the given element and every other variable to the target
/// variable of the same name.
inline RingElement substitute(const RingElement& f, const PresentedRing& target,
                              const std::map<std::string, RingElement>& assignment) {
  const auto& vars = f.ring().variables();
  std::vector<std::optional<RingElement>> images(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = assignment.find(vars[i]);
    if (it != assignment.end()) {
      if (it->second.ring() != target) throw RingMismatch("assignment for " + vars[i] + " is not in the target ring");
      images[i] = it->second;
    }
  }
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0 && !images[i]) images[i] = target.variable(vars[i]);
    }
  }
  if (f.ring().coefficients().is_modular() && !target.coefficients().is_modular()) {
    throw RingMismatch("cannot map residue-ring coefficients into " + target.sexpr());
  }
  std::map<std::pair<std::size_t, std::uint32_t>, RingElement> powers;
  auto power = [&](std::size_t i, std::uint32_t e) -> const RingElement& {
    std::uint32_t have = 1;
    while (have < e && powers.count({i, have + 1})) ++have;
    auto it = powers.find({i, 1});
    if (it == powers.end()) it = powers.emplace(std::make_pair(i, 1u), *images[i]).first;
    for (std::uint32_t k = have; k < e; ++k) {
      RingElement next = powers.at({i, k}) * *images[i];
      powers.emplace(std::make_pair(i, k + 1), std::move(next));
    }
    return powers.at({i, e});
  };
  Terms acc;
  for (const auto& [m, c] : f.terms()) {
    RingElement term = target.constant(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) term = term * power(i, m[i]);
    }
    for (const auto& [tm, tc] : term.terms()) add_term(acc, tm, tc);
  }
  return target.element(acc);
}

/// Map an element into a ring that contains its variables by name.
inline RingElement lift(const RingElement& e, const PresentedRing& target) { return substitute(e, target, {}); }

}  // namespace ordp
