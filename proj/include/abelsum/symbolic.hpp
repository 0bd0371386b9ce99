#pragma once

#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "abelsum/errors.hpp"
#include "abelsum/ntheory.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"

namespace abelsum {

// The fixed transcendental-constant basis. Exact results are rational linear
// combinations of these.
//   Unit          1
//   EulerGamma    Euler-Mascheroni constant
//   Pi            pi
//   LnPrime(p)    ln p, p prime
//   LnSin(j,p)    ln sin(pi*j/p), canonical: 0 < j/p < 1/2, gcd(j,p)=1,
//                 (j,p) not in {(1,6),(1,4),(1,3)}
//   PiCot(l,p)    pi*cot(pi*l/p), canonical: 0 < l/p < 1/2, gcd(l,p)=1, (l,p) != (1,4)
enum class AtomKind : int { Unit = 0, EulerGamma = 1, Pi = 2, LnPrime = 3, LnSin = 4, PiCot = 5 };

struct Atom {
  AtomKind kind = AtomKind::Unit;
  long a = 0;  // LnPrime: the prime; LnSin: j; PiCot: l
  long b = 0;  // LnSin / PiCot: p

  friend auto operator<=>(const Atom&, const Atom&) = default;

  static Atom unit() { return {AtomKind::Unit, 0, 0}; }
  static Atom euler_gamma() { return {AtomKind::EulerGamma, 0, 0}; }
  static Atom pi() { return {AtomKind::Pi, 0, 0}; }
  static Atom ln_prime(long p) { return {AtomKind::LnPrime, p, 0}; }
  static Atom ln_sin(long j, long p) { return {AtomKind::LnSin, j, p}; }
  static Atom pi_cot(long l, long p) { return {AtomKind::PiCot, l, p}; }
};

// Finite rational linear combination over canonical atoms. No zero
// coefficients are ever stored; the term map is ordered, so printing,
// evaluation and serialization are deterministic.
class SymbolicValue {
 public:
  SymbolicValue() = default;

  static SymbolicValue zero() { return {}; }

  static SymbolicValue single(Atom a, Rational c = Rational(1)) {
    SymbolicValue v;
    v.add_term(a, std::move(c));
    return v;
  }

  bool is_zero() const { return terms_.empty(); }

  const std::map<Atom, Rational>& terms() const { return terms_; }

  void add_term(const Atom& a, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Coefficient of an atom (zero if absent).
  Rational coeff(const Atom& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend SymbolicValue operator+(const SymbolicValue& x, const SymbolicValue& y) {
    SymbolicValue r = x;
    for (const auto& [a, c] : y.terms_) r.add_term(a, c);
    return r;
  }
  friend SymbolicValue operator-(const SymbolicValue& x, const SymbolicValue& y) {
    SymbolicValue r = x;
    for (const auto& [a, c] : y.terms_) r.add_term(a, -c);
    return r;
  }
  friend SymbolicValue operator-(const SymbolicValue& x) {
    SymbolicValue r;
    for (const auto& [a, c] : x.terms_) r.terms_.emplace(a, -c);
    return r;
  }
  SymbolicValue& operator+=(const SymbolicValue& y) {
    for (const auto& [a, c] : y.terms_) add_term(a, c);
    return *this;
  }

  // Structural equality: sound but incomplete (hidden cotangent relations are
  // not decided; use num_equal for semantic comparison).
  friend bool operator==(const SymbolicValue& x, const SymbolicValue& y) {
    return x.terms_ == y.terms_;
  }

 private:
  std::map<Atom, Rational> terms_;
};

inline SymbolicValue scale(const SymbolicValue& v, const Rational& c) {
  SymbolicValue r;
  if (c.is_zero()) return r;
  for (const auto& [a, k] : v.terms()) r.add_term(a, k * c);
  return r;
}

inline SymbolicValue add(const SymbolicValue& a, const SymbolicValue& b) { return a + b; }

// ln n expanded over the prime-log basis; ln 1 = 0.
inline SymbolicValue ln_integer(long n) {
  if (n <= 0) throw domain_error("ln_integer: argument must be >= 1");
  SymbolicValue v;
  for (const auto& [p, e] : factorize(n)) v.add_term(Atom::ln_prime(p), Rational(e));
  return v;
}

// Rewrites a raw atom to an equivalent combination over canonical atoms.
// LnSin/PiCot inputs are angles j/p with 0 < j < p; angle reduction to
// (0, 1/2] uses sin(pi-x)=sin(x), cot(pi-x)=-cot(x); the special values at
// p in {2,3,4,6} (sin) and {2,4} (cot) leave the trig basis. Idempotent.
inline SymbolicValue normalize_atom(AtomKind kind, long j = 0, long p = 0) {
  switch (kind) {
    case AtomKind::Unit:
      return SymbolicValue::single(Atom::unit());
    case AtomKind::EulerGamma:
      return SymbolicValue::single(Atom::euler_gamma());
    case AtomKind::Pi:
      return SymbolicValue::single(Atom::pi());
    case AtomKind::LnPrime:
      // a composite argument is rewritten over prime logs
      return ln_integer(j);
    case AtomKind::LnSin: {
      if (p < 1 || j <= 0 || j >= p)
        throw domain_error("normalize_atom: LnSin needs 0 < j < p (log sin vanishes/blows up otherwise)");
      const long g = std::gcd(j, p);
      j /= g;
      p /= g;
      if (2 * j > p) j = p - j;  // sin(pi - x) = sin(x)
      if (j == 1 && p == 2) return SymbolicValue::zero();  // ln sin(pi/2) = 0
      if (j == 1 && p == 6)                                 // sin(pi/6) = 1/2
        return SymbolicValue::single(Atom::ln_prime(2), Rational(-1));
      if (j == 1 && p == 4)                                 // sin(pi/4) = 2^{-1/2}
        return SymbolicValue::single(Atom::ln_prime(2), Rational(-1, 2));
      if (j == 1 && p == 3) {                               // sin(pi/3) = sqrt(3)/2
        SymbolicValue v = SymbolicValue::single(Atom::ln_prime(3), Rational(1, 2));
        v.add_term(Atom::ln_prime(2), Rational(-1));
        return v;
      }
      return SymbolicValue::single(Atom::ln_sin(j, p));
    }
    case AtomKind::PiCot: {
      if (p < 1 || j <= 0 || j >= p)
        throw domain_error("normalize_atom: PiCot needs 0 < l < p (cot pole otherwise)");
      const long g = std::gcd(j, p);
      j /= g;
      p /= g;
      Rational sgn(1);
      if (2 * j == p) return SymbolicValue::zero();  // cot(pi/2) = 0
      if (2 * j > p) {                               // cot(pi - x) = -cot(x)
        j = p - j;
        sgn = Rational(-1);
      }
      if (j == 1 && p == 4)  // cot(pi/4) = 1
        return SymbolicValue::single(Atom::pi(), sgn);
      return SymbolicValue::single(Atom::pi_cot(j, p), sgn);
    }
  }
  throw domain_error("normalize_atom: unknown atom kind");
}

namespace detail {

inline Real atom_value(const Atom& a, prec_t w) {
  switch (a.kind) {
    case AtomKind::Unit:
      return Real(1L, w);
    case AtomKind::EulerGamma:
      return Real::euler_gamma(w);
    case AtomKind::Pi:
      return Real::pi(w);
    case AtomKind::LnPrime:
      return log(Real(a.a, w));
    case AtomKind::LnSin:
      return log(sin_pi(Rational(a.a, a.b), w));
    case AtomKind::PiCot:
      return Real::pi(w) * cot_pi(Rational(a.a, a.b), w);
  }
  throw domain_error("atom_value: unknown atom kind");
}

}  // namespace detail

// Numeric evaluation at the requested precision. Each atom is evaluated with
// guard bits and accumulated in term order; error stays within 8 ulp per atom
// at the working precision.
inline Real eval_numeric(const SymbolicValue& v, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const prec_t w = p + 48;
  Real acc(w);
  for (const auto& [a, c] : v.terms()) acc += Real(c, w) * detail::atom_value(a, w);
  Real out(p);
  mpfr_set(out.raw(), acc.raw(), MPFR_RNDN);
  return out;
}

// Semantic (numeric) equality: evaluates both sides at doubled precision and
// compares with a 16-bit guard margin. Sound for distinct constants at sane
// precisions, but not a decision procedure.
inline bool num_equal(const SymbolicValue& a, const SymbolicValue& b, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const Real diff = abs(eval_numeric(a, 2 * p) - eval_numeric(b, 2 * p));
  return diff < Real::pow2(-(static_cast<long>(p) - 16), 64);
}

inline bool num_equal(const SymbolicValue& a, const Real& b, prec_t precision_bits) {
  const prec_t p = clamp_prec(precision_bits);
  const Real diff = abs(eval_numeric(a, 2 * p) - b);
  return diff < Real::pow2(-(static_cast<long>(p) - 16), 64);
}

namespace detail {

inline std::string atom_name(const Atom& a) {
  auto angle = [](long num, long den) {
    std::string s = num == 1 ? "" : std::to_string(num);
    return s + "π/" + std::to_string(den);
  };
  switch (a.kind) {
    case AtomKind::Unit:
      return "";
    case AtomKind::EulerGamma:
      return "γ";
    case AtomKind::Pi:
      return "π";
    case AtomKind::LnPrime:
      return "ln(" + std::to_string(a.a) + ")";
    case AtomKind::LnSin:
      return "ln(sin(" + angle(a.a, a.b) + "))";
    case AtomKind::PiCot:
      return "π·cot(" + angle(a.a, a.b) + ")";
  }
  return "?";
}

}  // namespace detail

// Human-readable rendering, e.g. "-\gamma - 2*ln(2)".
inline std::string to_string(const SymbolicValue& v) {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, c] : v.terms()) {
    const Rational mag = c.abs();
    const bool neg = c.sign() < 0;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    const std::string name = detail::atom_name(a);
    if (name.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += name;
    } else if (mag.is_integer()) {
      out += mag.str() + "·" + name;
    } else {
      out += "(" + mag.str() + ")·" + name;
    }
  }
  return out;
}

// Exact part plus (possibly) a numeric remainder for constants that do not fit
// the rational-coefficient atom basis. `symbolic` is true iff no numeric term
// was ever folded in.
struct ClosedForm {
  SymbolicValue exact;
  Real remainder;  // zero when fully symbolic
  bool symbolic = true;

  ClosedForm() = default;
  explicit ClosedForm(SymbolicValue v) : exact(std::move(v)) {}

  void add_exact(const SymbolicValue& v) { exact += v; }

  void add_numeric(const Real& r) {
    if (symbolic) {
      remainder = r;  // adopt the incoming precision
      symbolic = false;
      return;
    }
    if (r.prec() > remainder.prec()) remainder = remainder.at_prec(r.prec());
    remainder += r;
  }

  void add(const ClosedForm& o) {
    exact += o.exact;
    if (!o.symbolic) add_numeric(o.remainder);
  }

  ClosedForm scaled(const Rational& c) const {
    ClosedForm r;
    r.exact = scale(exact, c);
    r.symbolic = symbolic;
    if (!symbolic) r.remainder = remainder * Real(c, remainder.prec());
    return r;
  }

  Real eval(prec_t precision_bits) const {
    Real v = eval_numeric(exact, precision_bits);
    if (!symbolic) v += remainder;
    return v;
  }

  std::string str() const {
    std::string s = to_string(exact);
    if (!symbolic) {
      const std::string rs = remainder.to_string(30);
      if (exact.is_zero()) return "[numeric] " + rs;
      s += (remainder.sign() < 0 ? " - " : " + ") + std::string("[numeric] ") +
           (remainder.sign() < 0 ? abs(remainder).to_string(30) : rs);
    }
    return s;
  }
};

}  // namespace abelsum
