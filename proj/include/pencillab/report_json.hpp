#pragma once

#include "pencillab/decomp.hpp"
#include "pencillab/spectrum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pencillab {

using OrderedJson = nlohmann::ordered_json;

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "n/a";
  }
}

namespace detail {

// Number field coefficients print parenthesized in the generator symbol g,
// plain rationals stay bare. Output is for reports, not for reparsing.
inline void append_term(std::string& out, const NumberFieldElement& c, const std::string& vars) {
  const bool rational = c.is_rational();
  const bool neg = rational && c.rational_value() < 0;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  std::string cs;
  if (rational) {
    BigRational a = c.rational_value();
    if (neg) a = -a;
    if (vars.empty())
      cs = to_string(a);
    else if (a == 1)
      cs = vars;
    else
      cs = to_string(a) + "*" + vars;
  } else {
    cs = "(" + c.to_string("g") + ")";
    if (!vars.empty()) cs += "*" + vars;
  }
  out += cs;
}

inline std::string uni_nf_to_string(const UnivariatePolynomial<NumberFieldElement>& p,
                                    const std::string& var) {
  if (p.zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const NumberFieldElement& c = p.coeff(i);
    if (c.zero()) continue;
    std::string vars;
    if (i >= 1) vars = var;
    if (i >= 2) vars += "^" + std::to_string(i);
    append_term(out, c, vars);
  }
  return out;
}

inline std::string mp_nf_to_string(const MultivariatePolynomial<NumberFieldElement>& p,
                                   const std::vector<std::string>& names) {
  if (p.zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string vars;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names.at(j);
      if (e[j] > 1) vars += "^" + std::to_string(e[j]);
    }
    append_term(out, c, vars);
  }
  return out;
}

}  // namespace detail

inline OrderedJson spectrum_report_json(const SpectrumReport& r, std::uint64_t seed) {
  OrderedJson j;
  j["degree"] = r.degree;
  j["nvars"] = r.nvars;
  j["composite"] = r.composite;
  OrderedJson entries = OrderedJson::array();
  for (const SpectrumEntry& e : r.entries) {
    OrderedJson je;
    if (e.infinity)
      je["defining_poly"] = nullptr;
    else
      je["defining_poly"] = uni_to_string(e.defining, "λ");
    je["infinity"] = e.infinity;
    je["n"] = e.n;
    je["conjugacy"] = e.conjugacy;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  if (r.rho)
    j["rho"] = *r.rho;
  else
    j["rho"] = "infinite";
  j["bounds"] = OrderedJson{{"stein", verdict_str(r.stein)},
                            {"theorem1", verdict_str(r.theorem1)},
                            {"lorenzini", verdict_str(r.lorenzini)}};
  OrderedJson slices = OrderedJson::array();
  for (const SliceRecord& s : r.slices) {
    OrderedJson js;
    js["seed"] = s.seed;
    js["coeffs"] = s.coeffs;
    slices.push_back(std::move(js));
  }
  j["slices"] = std::move(slices);
  j["low_confidence"] = r.low_confidence;
  j["seed"] = seed;
  return j;
}

inline OrderedJson decomposition_json(const Decomposition& d, const std::vector<std::string>& names) {
  OrderedJson j;
  j["outer_num"] = detail::uni_nf_to_string(d.outer.num(), "t");
  j["outer_den"] = detail::uni_nf_to_string(d.outer.den(), "t");
  j["inner_num"] = detail::mp_nf_to_string(d.inner.num(), names);
  j["inner_den"] = detail::mp_nf_to_string(d.inner.den(), names);
  if (d.field_modulus)
    j["field"] = uni_to_string(*d.field_modulus, "g");
  else
    j["field"] = "Q";
  return j;
}

}  // namespace pencillab
