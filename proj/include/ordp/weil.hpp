#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "congruence.hpp"
#include "errors.hpp"

namespace ordp {

/// Ideal given by generators, kept in normal form with zeros and repeats
/// pruned. Over Z and Z/n a set of constants collapses to its gcd.
class Ideal {
 public:
  Ideal(PresentedRing ring, const std::vector<RingElement>& gens) : ring_(std::move(ring)) {
    for (const auto& g : gens) {
      if (g.ring() != ring_) throw RingMismatch("ideal generator outside " + ring_.sexpr());
      add(g);
    }
    simplify_constants();
  }

  const PresentedRing& ring() const { return ring_; }
  const std::vector<RingElement>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  bool operator==(const Ideal& o) const { return ring_ == o.ring_ && gens_ == o.gens_; }

  /// Generator-set containment; a sufficient test for I <= J.
  bool generators_within(const Ideal& o) const {
    for (const auto& g : gens_) {
      if (std::find(o.gens_.begin(), o.gens_.end(), g) == o.gens_.end()) return false;
    }
    return true;
  }

  std::string sexpr() const {
    std::string s = "(ideal";
    for (const auto& g : gens_) s += " " + g.sexpr();
    return s + ")";
  }

 private:
  void add(RingElement g) {
    if (g.is_zero()) return;
    const auto& lead = g.terms().rbegin()->second;
    if (ring_.coefficients().is_modular() ? lead > ring_.coefficients().modulus() - lead : lead < 0) g = -g;
    if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
  }

  void simplify_constants() {
    if (ring_.num_variables() != 0 || ring_.kind() == RingKind::ValuedLocal) return;
    if (ring_.kind() == RingKind::Rationals) {
      if (!gens_.empty()) gens_ = {ring_.one()};
      return;
    }
    Integer g = ring_.coefficients().is_modular() ? ring_.coefficients().modulus() : Integer(0);
    for (const auto& e : gens_) {
      Rational c = *e.constant_value();
      if (!ordp::is_integral(c)) throw NonIntegral("ideal generator " + c.get_str() + " is not integral");
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    }
    gens_.clear();
    add(ring_.constant(g));
  }

  PresentedRing ring_;
  std::vector<RingElement> gens_;
};

/// B free over A on the standard monomials in B's extra variables.
class FiniteFreeExtension {
 public:
  FiniteFreeExtension(PresentedRing base, PresentedRing total) : base_(std::move(base)), total_(std::move(total)) {
    check_prefix(base_, total_);
    std::vector<std::size_t> ext;
    for (std::size_t i = base_.num_variables(); i < total_.num_variables(); ++i) ext.push_back(i);
    for (const auto& r : total_.rules()) {
      std::size_t touched = 0;
      bool in_base = true;
      for (std::size_t i = 0; i < r.lhs.size(); ++i) {
        if (r.lhs[i] == 0) continue;
        if (i >= base_.num_variables()) {
          in_base = false;
          ++touched;
        }
      }
      if (in_base) continue;
      bool pure = touched == 1;
      for (std::size_t i = 0; i < base_.num_variables() && pure; ++i) pure = r.lhs[i] == 0;
      if (!pure) throw UnsupportedRing("relation " + total_.sexpr() + " is not monic in a single new variable");
    }
    auto b = standard_basis(total_, ext);
    if (!b) throw UnsupportedRing(total_.sexpr() + " is not finite over " + base_.sexpr());
    basis_ = *b;
  }

  const PresentedRing& base() const { return base_; }
  const PresentedRing& total() const { return total_; }
  const MonomialBasis& basis() const { return basis_; }
  std::size_t rank() const { return basis_.monomials.size(); }

  RingElement basis_element(std::size_t i) const {
    Terms t;
    t.emplace(basis_.monomials.at(i), 1);
    return total_.element(t);
  }

  std::vector<RingElement> coordinates(const RingElement& b) const { return coordinates_over(b, basis_, base_); }
  RingElement combine(const std::vector<RingElement>& coords) const { return from_coordinates(coords, basis_, total_); }

 private:
  PresentedRing base_;
  PresentedRing total_;
  MonomialBasis basis_;
};

/// Coefficients of e with respect to the monomials in the variables after
/// those of `base` (no finiteness needed: e has finite support).
inline Ideal coefficient_ideal(const RingElement& e, const PresentedRing& base) {
  check_prefix(base, e.ring());
  std::vector<std::size_t> ext;
  for (std::size_t i = base.num_variables(); i < e.ring().num_variables(); ++i) ext.push_back(i);
  std::vector<RingElement> gens;
  for (const auto& [outer, inner] : split_coordinates(e.terms(), ext)) gens.push_back(restrict_to_base(inner, base));
  return Ideal(base, gens);
}

/// J = all basis coordinates of all generators of I.
inline Ideal weil_restrict_closed(const FiniteFreeExtension& ext, const Ideal& I) {
  if (I.ring() != ext.total()) throw RingMismatch("ideal is not in " + ext.total().sexpr());
  std::vector<RingElement> gens;
  for (const auto& g : I.generators()) {
    for (auto& c : ext.coordinates(g)) gens.push_back(std::move(c));
  }
  return Ideal(ext.base(), gens);
}

namespace detail {

/// The polynomial ring over which C's relations are stated.
inline PresentedRing free_cover(const PresentedRing& c) {
  PresentedRing r = c;
  while (r.kind() == RingKind::Quotient) r = *r.base();
  if (r.num_variables() != c.num_variables()) throw UnsupportedRing("cannot find the free cover of " + c.sexpr());
  return r;
}

inline void check_relations(const PresentedRing& c, const PresentedRing& a, const PresentedRing& b,
                            const std::map<std::string, RingElement>& f, const std::string& label) {
  auto cover = free_cover(c);
  for (std::size_t k = 0; k < c.rules().size(); ++k) {
    const auto& r = c.rules()[k];
    bool from_base = true;
    for (std::size_t i = a.num_variables(); i < r.lhs.size(); ++i) from_base = from_base && r.lhs[i] == 0;
    if (from_base) continue;
    Terms diff = r.rhs;
    add_term(diff, r.lhs, -1);
    auto image = substitute(cover.element(diff), b, f);
    if (!image.is_zero()) {
      throw RelationViolation(label + " sends the relation " + terms_sexpr(diff, c.variables()) + " to " +
                              image.sexpr());
    }
  }
}

}  // namespace detail

/// Ideal of the locus where f = g, for A-algebra maps C -> B given by the
/// images of C's own variables.
inline Ideal equalizer_ideal(const FiniteFreeExtension& ext, const PresentedRing& c,
                             const std::map<std::string, RingElement>& f, const std::map<std::string, RingElement>& g) {
  check_prefix(ext.base(), c);
  const auto& b = ext.total();
  std::vector<std::string> own(c.variables().begin() + static_cast<std::ptrdiff_t>(ext.base().num_variables()),
                               c.variables().end());
  for (const auto& v : own) {
    if (!f.count(v) || !g.count(v)) throw UnknownVariable("no image given for " + v);
  }
  detail::check_relations(c, ext.base(), b, f, "f");
  detail::check_relations(c, ext.base(), b, g, "g");
  std::vector<RingElement> gens;
  for (const auto& v : own) {
    for (auto& x : ext.coordinates(f.at(v) - g.at(v))) gens.push_back(std::move(x));
  }
  return Ideal(ext.base(), gens);
}

struct StructureConditions {
  Ideal associativity;
  Ideal counit;
  Ideal total;
};

/// Closed conditions on A for m(x1, x2) to be associative with counit x = 0
/// on B = A[x]/(f). The law lives in A[x1, x2].
inline StructureConditions structure_condition_ideal(const FiniteFreeExtension& ext, const RingElement& law) {
  const auto& a = ext.base();
  const auto& b = ext.total();
  if (b.num_variables() != a.num_variables() + 1) throw UnsupportedRing("structure conditions need a monogenic extension");
  const std::string x = b.variables().back();
  const auto& lr = law.ring();
  check_prefix(a, lr);
  if (lr.num_variables() != a.num_variables() + 2) throw DomainError("law must be a polynomial in two variables");
  const std::string v1 = lr.variables()[a.num_variables()];
  const std::string v2 = lr.variables()[a.num_variables() + 1];

  // relation f(x) as a polynomial over A
  std::optional<RingElement> f;
  {
    auto cover = detail::free_cover(b);
    for (const auto& r : b.rules()) {
      if (r.lhs.back() == 0) continue;
      Terms poly = terms_scale(r.rhs, -1);
      add_term(poly, r.lhs, 1);
      f = cover.element(poly);
      break;
    }
  }
  if (!f) throw UnsupportedRing(b.sexpr() + " has no monic relation in " + x);
  std::vector<std::string> names;
  PresentedRing probe = a;
  for (int i = 1; i <= 3; ++i) {
    names.push_back(fresh_variable(probe, x + std::to_string(i)));
    probe = PresentedRing::polynomial(probe, {names.back()});
  }
  auto poly3 = PresentedRing::polynomial(a, names);
  std::vector<RelationSpec> rels;
  for (const auto& n : names) rels.push_back(monic_relation(n, substitute(*f, poly3, {{x, poly3.variable(n)}})));
  auto b3 = PresentedRing::quotient(poly3, rels);
  FiniteFreeExtension ext3(a, b3);

  auto m = [&](const RingElement& p, const RingElement& q) { return substitute(law, p.ring(), {{v1, p}, {v2, q}}); };
  auto y1 = b3.variable(names[0]), y2 = b3.variable(names[1]), y3 = b3.variable(names[2]);
  auto assoc = m(m(y1, y2), y3) - m(y1, m(y2, y3));
  auto xb = b.variable(x);
  auto unit = m(xb, b.zero()) - xb;

  Ideal ja(a, ext3.coordinates(assoc));
  Ideal jc(a, ext.coordinates(unit));
  std::vector<RingElement> all = ja.generators();
  all.insert(all.end(), jc.generators().begin(), jc.generators().end());
  return {ja, jc, Ideal(a, all)};
}

/// Closed condition on A = base ring of (lambda, mu), with no relation
/// imposed, for phi = P to respect the law x1 + x2 + lambda x1 x2:
/// the coefficients of P(x1 * x2) - P(x1) - P(x2) - lambda^p P(x1) P(x2).
inline Ideal homomorphism_condition_ideal(unsigned p, const RingElement& lambda, const RingElement& mu) {
  const auto& a = lambda.ring();
  if (mu.ring() != a) throw RingMismatch("lambda and mu live in different rings");
  std::string n1 = fresh_variable(a, "x1");
  auto probe = PresentedRing::polynomial(a, {n1});
  std::string n2 = fresh_variable(probe, "x2");
  auto r = PresentedRing::polynomial(a, {n1, n2});
  auto x1 = r.variable(n1), x2 = r.variable(n2);
  auto lam = lift(lambda, r), m = lift(mu, r);
  auto P = [&](const RingElement& X) {
    RingElement acc = X.pow(p);
    RingElement lp = r.one();
    for (unsigned i = 1; i < p; ++i) {
      acc += r.constant(divided_binomial(p, i)) * lp * m * X.pow(i);
      lp *= lam;
    }
    return acc;
  };
  auto star = x1 + x2 + lam * x1 * x2;
  auto diff = P(star) - P(x1) - P(x2) - lam.pow(p) * P(x1) * P(x2);
  return coefficient_ideal(diff, a);
}

}  // namespace ordp
