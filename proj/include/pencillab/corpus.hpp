#pragma once

#include "pencillab/parser.hpp"
#include "pencillab/report_json.hpp"
#include "pencillab/spectrum.hpp"

#include <json.hpp>

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace pencillab {

// One JSONL corpus record. Every expectation key is optional; absent keys
// are not checked, so entries with draw-dependent spectra can still pin the
// stable facts (compositeness, bound verdicts).
struct CorpusExpect {
  std::optional<bool> composite;
  bool rho_infinite = false;
  std::optional<int> rho;
  std::optional<int> spectrum_size;
  std::map<std::string, std::string> bounds;
};

struct CorpusEntry {
  std::string name;
  int nvars = 0;
  std::string f;
  CorpusExpect expect;
};

// Default variable names: x, y, z, w, then x1..xn for wider signatures.
inline std::vector<std::string> default_var_names(int nvars) {
  static const char* few[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(nvars));
  if (nvars <= 4) {
    for (int j = 0; j < nvars; ++j) names.emplace_back(few[j]);
  } else {
    for (int j = 0; j < nvars; ++j) names.push_back("x" + std::to_string(j + 1));
  }
  return names;
}

// Number of spectrum points: conjugate roots count individually, infinity
// counts once.
inline int spectrum_size(const SpectrumReport& r) {
  int s = 0;
  for (const SpectrumEntry& e : r.entries) s += e.infinity ? 1 : e.conjugacy;
  return s;
}

// Spectrum with the variable-count dispatch the CLI uses everywhere: inputs
// that only touch two variables go through the exact bivariate pipeline even
// when declared over more.
inline SpectrumReport analyze_spectrum(const RFuncQ& f, std::uint64_t seed, int budget = 8) {
  if (f.nvars() <= 2 || detail::used_vars(f).size() <= 2) return spectrum(f);
  return spectrum_multivar(f, seed, budget);
}

namespace detail {

inline void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw std::runtime_error(where + ": unknown key '" + it.key() + "'");
}

}  // namespace detail

// Parses one corpus line. Throws std::runtime_error with a schema message on
// malformed input; the runner turns that into a per-entry error.
inline CorpusEntry parse_corpus_entry(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("entry is not an object");
  detail::require_keys(j, {"name", "nvars", "f", "expect"}, "entry");
  CorpusEntry e;
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
    throw std::runtime_error("missing or empty 'name'");
  e.name = j["name"].get<std::string>();
  if (!j.contains("nvars") || !j["nvars"].is_number_integer())
    throw std::runtime_error("missing integer 'nvars'");
  e.nvars = j["nvars"].get<int>();
  if (e.nvars < 2) throw std::runtime_error("'nvars' must be at least 2");
  if (!j.contains("f") || !j["f"].is_string() || j["f"].get<std::string>().empty())
    throw std::runtime_error("missing or empty 'f'");
  e.f = j["f"].get<std::string>();
  if (!j.contains("expect")) return e;
  const nlohmann::json& x = j["expect"];
  if (!x.is_object()) throw std::runtime_error("'expect' is not an object");
  detail::require_keys(x, {"composite", "rho", "spectrum_size", "bounds"}, "expect");
  if (x.contains("composite")) {
    if (!x["composite"].is_boolean()) throw std::runtime_error("expect.composite must be a boolean");
    e.expect.composite = x["composite"].get<bool>();
  }
  if (x.contains("rho")) {
    if (x["rho"].is_string() && x["rho"].get<std::string>() == "infinite")
      e.expect.rho_infinite = true;
    else if (x["rho"].is_number_integer())
      e.expect.rho = x["rho"].get<int>();
    else
      throw std::runtime_error("expect.rho must be an integer or \"infinite\"");
  }
  if (x.contains("spectrum_size")) {
    if (!x["spectrum_size"].is_number_integer())
      throw std::runtime_error("expect.spectrum_size must be an integer");
    e.expect.spectrum_size = x["spectrum_size"].get<int>();
  }
  if (x.contains("bounds")) {
    const nlohmann::json& b = x["bounds"];
    if (!b.is_object()) throw std::runtime_error("expect.bounds must be an object");
    detail::require_keys(b, {"stein", "theorem1", "lorenzini"}, "expect.bounds");
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (!it.value().is_string()) throw std::runtime_error("expect.bounds values must be strings");
      const std::string v = it.value().get<std::string>();
      if (v != "pass" && v != "fail" && v != "n/a")
        throw std::runtime_error("expect.bounds values must be pass, fail or n/a");
      e.expect.bounds[it.key()] = v;
    }
  }
  return e;
}

namespace detail {

inline Verdict report_bound(const SpectrumReport& r, const std::string& key) {
  if (key == "stein") return r.stein;
  if (key == "theorem1") return r.theorem1;
  return r.lorenzini;
}

}  // namespace detail

// Checks one parsed entry against its expectations. Returns the list of
// mismatches, empty on pass.
inline std::vector<std::string> check_corpus_entry(const CorpusEntry& e, const SpectrumReport& r) {
  std::vector<std::string> bad;
  const CorpusExpect& x = e.expect;
  if (x.composite && r.composite != *x.composite)
    bad.push_back("composite: expected " + std::string(*x.composite ? "true" : "false") + ", got " +
                  (r.composite ? "true" : "false"));
  auto rho_str = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("infinite");
  };
  if (x.rho_infinite && r.rho) bad.push_back("rho: expected infinite, got " + rho_str(r.rho));
  if (x.rho && r.rho != x.rho) bad.push_back("rho: expected " + std::to_string(*x.rho) + ", got " + rho_str(r.rho));
  if (x.spectrum_size && spectrum_size(r) != *x.spectrum_size)
    bad.push_back("spectrum_size: expected " + std::to_string(*x.spectrum_size) + ", got " +
                  std::to_string(spectrum_size(r)));
  for (const auto& [key, want] : x.bounds) {
    const std::string got = verdict_str(detail::report_bound(r, key));
    if (got != want) bad.push_back("bounds." + key + ": expected " + want + ", got " + got);
  }
  return bad;
}

// Runs a JSONL corpus stream: one pass/fail line per entry, schema errors
// reported per entry without aborting. Returns 0 when everything passed,
// 3 otherwise (the CI gate contract).
inline int run_corpus(std::istream& in, std::uint64_t seed, int budget, std::ostream& out) {
  int failures = 0;
  int lineno = 0;
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    CorpusEntry e;
    try {
      e = parse_corpus_entry(line);
      if (!seen.insert(e.name).second) throw std::runtime_error("duplicate name '" + e.name + "'");
    } catch (const std::exception& ex) {
      out << "ERROR line " << lineno << ": " << ex.what() << "\n";
      ++failures;
      continue;
    }
    try {
      const RFuncQ f = parse(e.f, default_var_names(e.nvars));
      const SpectrumReport r = analyze_spectrum(f, seed, budget);
      const std::vector<std::string> bad = check_corpus_entry(e, r);
      if (bad.empty()) {
        out << "ok   " << e.name << "  rho=" << (r.rho ? std::to_string(*r.rho) : "infinite")
            << (r.low_confidence ? "  (low confidence)" : "") << "\n";
      } else {
        ++failures;
        out << "FAIL " << e.name << "\n";
        for (const std::string& b : bad) out << "     " << b << "\n";
      }
    } catch (const std::exception& ex) {
      out << "ERROR " << e.name << ": " << ex.what() << "\n";
      ++failures;
    }
  }
  out << (failures == 0 ? "all entries passed\n" : std::to_string(failures) + " failing entries\n");
  return failures == 0 ? 0 : 3;
}

}  // namespace pencillab
