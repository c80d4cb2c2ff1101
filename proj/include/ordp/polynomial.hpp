#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace ordp {

/// Exponent vector indexed by the variable list of a ring.
using Monomial = std::vector<std::uint32_t>;

/// Lexicographic order in which the most recently declared variable is the
/// most significant. Variables added by later tower levels (x over a base
/// with E, F) therefore dominate, which makes monic reductions decreasing.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

inline bool monomial_less(const Monomial& a, const Monomial& b) { return MonomialOrder{}(a, b); }

inline bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > m[i]) return false;
  }
  return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = m[i] - d[i];
  return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

inline std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Sparse polynomial: monomial -> nonzero coefficient. Raw terms carry no ring
/// information; reduction lives in PresentedRing.
using Terms = std::map<Monomial, Rational, MonomialOrder>;

inline void add_term(Terms& t, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

inline Terms terms_add(const Terms& a, const Terms& b, const Rational& scale = 1) {
  Terms r = a;
  for (const auto& [m, c] : b) add_term(r, m, scale * c);
  return r;
}

inline Terms terms_mul(const Terms& a, const Terms& b) {
  Terms r;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) add_term(r, mono_mul(ma, mb), ca * cb);
  }
  return r;
}

inline Terms terms_scale(const Terms& a, const Rational& c) {
  Terms r;
  if (c == 0) return r;
  for (const auto& [m, x] : a) r.emplace(m, x * c);
  return r;
}

inline Terms terms_constant(std::size_t nvars, const Rational& c) {
  Terms r;
  add_term(r, Monomial(nvars, 0), c);
  return r;
}

inline Terms terms_variable(std::size_t nvars, std::size_t index) {
  Monomial m(nvars, 0);
  m[index] = 1;
  Terms r;
  r.emplace(std::move(m), 1);
  return r;
}

namespace detail {

inline std::string rational_sexpr(const Rational& c) {
  if (is_integral(c)) return c.get_num().get_str();
  return "(/ " + c.get_num().get_str() + " " + c.get_den().get_str() + ")";
}

inline void monomial_factors_sexpr(const Monomial& m, const std::vector<std::string>& vars,
                                   std::vector<std::string>& out) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (m[i] == 1) {
      out.push_back(vars[i]);
    } else {
      out.push_back("(^ " + vars[i] + " " + std::to_string(m[i]) + ")");
    }
  }
}

}  // namespace detail

/// S-expression form, terms in descending monomial order.
inline std::string terms_sexpr(const Terms& t, const std::vector<std::string>& vars) {
  if (t.empty()) return "0";
  std::vector<std::string> summands;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<std::string> factors;
    detail::monomial_factors_sexpr(m, vars, factors);
    std::string term;
    if (factors.empty()) {
      term = detail::rational_sexpr(c);
    } else {
      std::vector<std::string> all;
      bool negate = false;
      if (c == -1) {
        negate = true;
      } else if (c != 1) {
        all.push_back(detail::rational_sexpr(c));
      }
      all.insert(all.end(), factors.begin(), factors.end());
      term = all.size() == 1 ? all[0] : [&] {
        std::string s = "(*";
        for (const auto& f : all) s += " " + f;
        return s + ")";
      }();
      if (negate) term = "(- " + term + ")";
    }
    summands.push_back(std::move(term));
  }
  if (summands.size() == 1) return summands[0];
  std::string s = "(+";
  for (const auto& x : summands) s += " " + x;
  return s + ")";
}

/// Infix form for diagnostics.
inline std::string terms_infix(const Terms& t, const std::vector<std::string>& vars) {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool constant = total_degree(m) == 0;
    bool wrote = false;
    if (mag != 1 || constant) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << vars[i];
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace ordp
