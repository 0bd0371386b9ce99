#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "abelsum/errors.hpp"
#include "abelsum/oracle.hpp"
#include "abelsum/rational.hpp"
#include "abelsum/real.hpp"
#include "abelsum/symbolic.hpp"

namespace abelsum {

using json = nlohmann::ordered_json;

// significant decimal digits carried by serialized numerics at a given
// binary precision
inline std::size_t digits10_for(prec_t bits) {
  return static_cast<std::size_t>(static_cast<double>(bits) / 3.32);
}

// --- SymbolicValue <-> {"terms":[{"atom":...,"coeff":"num/den",...},...]} ---

inline json to_json(const SymbolicValue& v) {
  json terms = json::array();
  for (const auto& [a, c] : v.terms()) {
    json t;
    switch (a.kind) {
      case AtomKind::Unit:
        t["atom"] = "Unit";
        break;
      case AtomKind::EulerGamma:
        t["atom"] = "EulerGamma";
        break;
      case AtomKind::Pi:
        t["atom"] = "Pi";
        break;
      case AtomKind::LnPrime:
        t["atom"] = "LnPrime";
        t["p"] = a.a;
        break;
      case AtomKind::LnSin:
        t["atom"] = "LnSin";
        t["j"] = a.a;
        t["p"] = a.b;
        break;
      case AtomKind::PiCot:
        t["atom"] = "PiCot";
        t["l"] = a.a;
        t["p"] = a.b;
        break;
    }
    t["coeff"] = c.str_num_den();
    terms.push_back(std::move(t));
  }
  return json{{"terms", std::move(terms)}};
}

inline SymbolicValue symbolic_from_json(const json& j) {
  SymbolicValue v;
  for (const auto& t : j.at("terms")) {
    const std::string kind = t.at("atom").get<std::string>();
    const Rational coeff = Rational::parse(t.at("coeff").get<std::string>());
    Atom a;
    if (kind == "Unit") {
      a = Atom::unit();
    } else if (kind == "EulerGamma") {
      a = Atom::euler_gamma();
    } else if (kind == "Pi") {
      a = Atom::pi();
    } else if (kind == "LnPrime") {
      a = Atom::ln_prime(t.at("p").get<long>());
    } else if (kind == "LnSin") {
      a = Atom::ln_sin(t.at("j").get<long>(), t.at("p").get<long>());
    } else if (kind == "PiCot") {
      a = Atom::pi_cot(t.at("l").get<long>(), t.at("p").get<long>());
    } else {
      throw domain_error("symbolic_from_json: unknown atom '" + kind + "'");
    }
    v.add_term(a, coeff);
  }
  return v;
}

// --- OracleResult <-> {"value","error","terms","converged"} ---

inline json to_json(const OracleResult& r) {
  return json{{"value", r.value.to_string(digits10_for(r.value.prec()))},
              {"error", r.error_estimate.to_string(12)},
              {"terms", r.terms_used},
              {"converged", r.converged}};
}

inline OracleResult oracle_from_json(const json& j, prec_t precision_bits) {
  OracleResult r;
  r.value = Real::from_string(j.at("value").get<std::string>(), precision_bits);
  r.error_estimate = Real::from_string(j.at("error").get<std::string>(), 64);
  r.terms_used = j.at("terms").get<long>();
  r.converged = j.at("converged").get<bool>();
  return r;
}

// --- ClosedForm: exact part, optional numeric remainder, symbolic flag ---

inline json to_json(const ClosedForm& cf, prec_t display_bits = 256) {
  json j;
  j["symbolic"] = cf.symbolic;
  j["closed_form"] = to_json(cf.exact);
  if (cf.symbolic)
    j["remainder"] = nullptr;
  else
    j["remainder"] = cf.remainder.to_string(digits10_for(cf.remainder.prec()));
  j["numeric"] = cf.eval(display_bits).to_string(digits10_for(display_bits));
  return j;
}

}  // namespace abelsum
