// pencil-lab: exact spectra, reducibility orders, and decompositions of
// rational functions over Q.
//
// Exit codes: 0 success, 1 internal failure, 2 input error, 3 when a corpus
// expectation or a bound verdict fails.

#include <CLI11.hpp>

#include "pencillab/corpus.hpp"
#include "pencillab/parser.hpp"
#include "pencillab/report_json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace pencillab;

struct Options {
  std::vector<std::string> names;
  bool json = false;
  std::uint64_t seed = 1;
  int max_degree = 8;
  int retry_budget = 8;
};

int emit_error(const Options& opt, int code, const std::string& err, const std::string& msg,
               std::optional<int> pos = std::nullopt, const std::string& expr = {}) {
  if (opt.json) {
    OrderedJson j;
    j["error"] = err;
    j["message"] = msg;
    if (pos) j["position"] = *pos;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error[" << err << "]: " << msg << "\n";
    if (pos && !expr.empty() && expr.size() < 200 && *pos >= 0 &&
        *pos <= static_cast<int>(expr.size())) {
      std::cerr << "  " << expr << "\n  " << std::string(static_cast<std::size_t>(*pos), ' ')
                << "^\n";
    }
  }
  return code;
}

std::optional<std::vector<std::string>> split_names(const std::string& spec) {
  std::vector<std::string> names;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(cur[0])) && cur[0] != '_') return false;
    for (char c : cur)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    for (const auto& n : names)
      if (n == cur) return false;
    names.push_back(cur);
    cur.clear();
    return true;
  };
  for (char c : spec) {
    if (c == ',') {
      if (!flush()) return std::nullopt;
    } else {
      cur += c;
    }
  }
  if (!flush()) return std::nullopt;
  if (names.size() < 2) return std::nullopt;
  return names;
}

std::string rho_text(const SpectrumReport& r) {
  return r.rho ? std::to_string(*r.rho) : "infinite";
}

void print_report_text(const Options& opt, const SpectrumReport& r) {
  std::cout << "degree     " << r.degree << "\n";
  std::cout << "variables  ";
  for (std::size_t i = 0; i < opt.names.size(); ++i)
    std::cout << (i ? ", " : "") << opt.names[i];
  std::cout << "\n";
  std::cout << "composite  " << (r.composite ? "yes" : "no") << "\n";
  if (!r.entries.empty()) {
    // Column width in code points, not bytes; λ is two bytes.
    auto width = [](const std::string& s) {
      std::size_t n = 0;
      for (unsigned char c : s) n += (c & 0xC0) != 0x80;
      return n;
    };
    std::vector<std::string> polys;
    std::size_t w = 0;
    for (const auto& e : r.entries) {
      polys.push_back(e.infinity ? "inf" : uni_to_string(e.defining, "λ"));
      w = std::max(w, width(polys.back()));
    }
    std::cout << "spectrum:\n";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      std::cout << "  " << polys[i] << std::string(w - width(polys[i]) + 2, ' ') << "n="
                << r.entries[i].n;
      if (!r.entries[i].infinity && r.entries[i].conjugacy > 1)
        std::cout << "  (conjugacy " << r.entries[i].conjugacy << ")";
      std::cout << "\n";
    }
  } else if (!r.composite) {
    std::cout << "spectrum:  empty\n";
  }
  std::cout << "rho        " << rho_text(r) << "\n";
  std::cout << "bounds     stein " << verdict_str(r.stein) << "   theorem1 "
            << verdict_str(r.theorem1) << "   lorenzini " << verdict_str(r.lorenzini) << "\n";
  for (const auto& s : r.slices) std::cout << "slice      seed=" << s.seed << "\n";
  if (r.low_confidence) std::cout << "note       slice reports disagree; low confidence\n";
  std::cout << "seed       " << opt.seed << "\n";
}

void print_decomposition_text(const OrderedJson& d, const std::string& indent) {
  for (const char* k : {"outer_num", "outer_den", "inner_num", "inner_den", "field"}) {
    std::cout << indent << k << std::string(k == std::string("field") ? 6 : 2, ' ')
              << d.at(k).get<std::string>() << "\n";
  }
}

int report_exit(const SpectrumReport& r) {
  if (r.stein == Verdict::Fail || r.theorem1 == Verdict::Fail || r.lorenzini == Verdict::Fail)
    return 3;
  return 0;
}

RFuncQ load(const Options& opt, const std::string& expr) {
  RFuncQ f = parse(expr, opt.names);
  if (f.degree() > opt.max_degree)
    throw std::domain_error("degree " + std::to_string(f.degree()) +
                            " exceeds --max-degree " + std::to_string(opt.max_degree));
  return f;
}

int cmd_spectrum(const Options& opt, const std::string& expr, bool with_decomposition) {
  RFuncQ f = load(opt, expr);
  SpectrumReport r = analyze_spectrum(f, opt.seed, opt.retry_budget);
  std::optional<OrderedJson> dec;
  if (with_decomposition && r.composite && detail::used_vars(f).size() <= 2) {
    auto res = decompose(f, opt.seed);
    if (auto* d = std::get_if<Decomposition>(&res)) dec = decomposition_json(*d, opt.names);
  }
  if (opt.json) {
    OrderedJson j = spectrum_report_json(r, opt.seed);
    if (with_decomposition) {
      j.erase("seed");
      j["decomposition"] = dec ? OrderedJson(*dec) : OrderedJson(nullptr);
      j["seed"] = opt.seed;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    print_report_text(opt, r);
    if (with_decomposition && dec) {
      std::cout << "decomposition:\n";
      print_decomposition_text(*dec, "  ");
    }
  }
  return report_exit(r);
}

int cmd_rho(const Options& opt, const std::string& expr) {
  SpectrumReport r = analyze_spectrum(load(opt, expr), opt.seed, opt.retry_budget);
  if (opt.json) {
    OrderedJson j;
    if (r.rho)
      j["rho"] = *r.rho;
    else
      j["rho"] = "infinite";
    j["seed"] = opt.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "rho = " << rho_text(r) << "\n";
  }
  return 0;
}

int cmd_composite(const Options& opt, const std::string& expr) {
  RFuncQ f = load(opt, expr);
  bool composite;
  if (detail::used_vars(f).size() <= 2)
    composite = is_composite(f, opt.seed);
  else
    composite = spectrum_multivar(f, opt.seed, opt.retry_budget).composite;
  if (opt.json) {
    OrderedJson j;
    j["composite"] = composite;
    j["seed"] = opt.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "composite: " << (composite ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_decompose(const Options& opt, const std::string& expr) {
  RFuncQ f = load(opt, expr);
  auto res = decompose(f, opt.seed);
  if (std::holds_alternative<NotComposite>(res))
    return emit_error(opt, 2, "not_composite", "the function is not composite");
  if (auto* e = std::get_if<ExtractionFailed>(&res))
    return emit_error(opt, 1, "extraction_failed", e->reason);
  OrderedJson d = decomposition_json(std::get<Decomposition>(res), opt.names);
  if (opt.json) {
    d["seed"] = opt.seed;
    std::cout << d.dump(2) << "\n";
  } else {
    print_decomposition_text(d, "");
  }
  return 0;
}

int cmd_jacobian(const Options& opt, const std::string& fx, const std::string& gx) {
  RFuncQ f = load(opt, fx);
  RFuncQ g = load(opt, gx);
  RFuncQ d = jacobian_derivation(f, g);
  if (opt.json) {
    OrderedJson j;
    j["result"] = rf_to_string(d, opt.names);
    j["seed"] = opt.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rf_to_string(d, opt.names) << "\n";
  }
  return 0;
}

int cmd_depend(const Options& opt, const std::string& fx, const std::string& gx) {
  const bool dep = algebraically_dependent(load(opt, fx), load(opt, gx));
  if (opt.json) {
    OrderedJson j;
    j["dependent"] = dep;
    j["seed"] = opt.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "dependent: " << (dep ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_express(const Options& opt, const std::string& gx, const std::string& fx) {
  RFuncQ g = load(opt, gx);
  RFuncQ f = load(opt, fx);
  auto s = express_in_f(g, f);
  if (opt.json) {
    OrderedJson j;
    j["in_field"] = s.has_value();
    if (s) {
      j["outer_num"] = uni_to_string(s->num(), "t");
      j["outer_den"] = uni_to_string(s->den(), "t");
    }
    j["seed"] = opt.seed;
    std::cout << j.dump(2) << "\n";
  } else if (s) {
    std::cout << "g = s(f) with s = (" << uni_to_string(s->num(), "t") << ")/("
              << uni_to_string(s->den(), "t") << ")\n";
  } else {
    std::cout << "g is not in Q(f)\n";
  }
  return 0;
}

int cmd_corpus_run(const Options& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) return emit_error(opt, 2, "invalid_input", "cannot open " + path);
  return run_corpus(in, opt.seed, opt.retry_budget, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact spectra, reducibility orders, and decompositions of rational functions"};
  app.require_subcommand(1);

  std::string vars = "x,y";
  Options opt;
  std::uint64_t seed_cli = 0;
  app.add_option("--vars", vars, "comma-separated variable names")->capture_default_str();
  app.add_flag("--json", opt.json, "emit JSON instead of text");
  auto* seed_opt = app.add_option("--seed", seed_cli, "seed for all randomized choices");
  app.add_option("--max-degree", opt.max_degree, "refuse inputs above this total degree")
      ->capture_default_str();
  app.add_option("--retry-budget", opt.retry_budget, "retries for randomized stages")
      ->capture_default_str();

  std::string expr, expr2, corpus_path;
  auto one = [&](CLI::App* s) {
    s->add_option("expr", expr, "rational function")->required();
    s->fallthrough();
    return s;
  };
  auto* c_analyze = one(app.add_subcommand("analyze", "spectrum report plus decomposition"));
  auto* c_spectrum = one(app.add_subcommand("spectrum", "spectrum report"));
  auto* c_rho = one(app.add_subcommand("rho", "order of reducibility"));
  auto* c_composite = one(app.add_subcommand("composite", "compositeness test"));
  auto* c_decompose = one(app.add_subcommand("decompose", "constructive decomposition"));
  auto two = [&](CLI::App* s, const char* a, const char* b) {
    s->add_option(a, expr, "rational function")->required();
    s->add_option(b, expr2, "rational function")->required();
    s->fallthrough();
    return s;
  };
  auto* c_jacobian = two(app.add_subcommand("jacobian", "apply the derivation D_f to g"), "f", "g");
  auto* c_depend = two(app.add_subcommand("depend", "algebraic dependence of f and g"), "f", "g");
  auto* c_express = two(app.add_subcommand("express", "write g as s(f) when g is in Q(f)"), "g", "f");
  auto* c_corpus = app.add_subcommand("corpus", "corpus utilities");
  c_corpus->require_subcommand(1);
  c_corpus->fallthrough();
  auto* c_run = c_corpus->add_subcommand("run", "evaluate a JSONL corpus");
  c_run->add_option("file", corpus_path, "corpus file, one JSON entry per line")->required();
  c_run->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (seed_opt->count() > 0) {
    opt.seed = seed_cli;
  } else if (const char* env = std::getenv("PENCIL_LAB_SEED")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
      return emit_error(opt, 2, "invalid_input", "PENCIL_LAB_SEED is not an unsigned integer");
    opt.seed = v;
  }

  auto names = split_names(vars);
  if (!names)
    return emit_error(opt, 2, "invalid_input",
                      "--vars needs at least two distinct identifiers, comma separated");
  opt.names = *names;

  try {
    if (*c_analyze) return cmd_spectrum(opt, expr, true);
    if (*c_spectrum) return cmd_spectrum(opt, expr, false);
    if (*c_rho) return cmd_rho(opt, expr);
    if (*c_composite) return cmd_composite(opt, expr);
    if (*c_decompose) return cmd_decompose(opt, expr);
    if (*c_jacobian) return cmd_jacobian(opt, expr, expr2);
    if (*c_depend) return cmd_depend(opt, expr, expr2);
    if (*c_express) return cmd_express(opt, expr, expr2);
    if (*c_run) return cmd_corpus_run(opt, corpus_path);
  } catch (const SyntaxError& e) {
    return emit_error(opt, 2, "syntax_error", e.what(), e.position, expr);
  } catch (const UnknownVariable& e) {
    return emit_error(opt, 2, "unknown_variable", e.what(), e.position, expr);
  } catch (const ZeroDenominator& e) {
    return emit_error(opt, 2, "zero_denominator", e.what());
  } catch (const ConstantInput& e) {
    return emit_error(opt, 2, "constant_input", e.what());
  } catch (const CompositeBase& e) {
    return emit_error(opt, 2, "composite_base", e.what());
  } catch (const CompositeInput& e) {
    return emit_error(opt, 2, "composite_input", e.what());
  } catch (const DegreeMismatch& e) {
    return emit_error(opt, 2, "degree_mismatch", e.what());
  } catch (const SliceDegenerate& e) {
    return emit_error(opt, 2, "slice_degenerate", e.what());
  } catch (const std::domain_error& e) {
    return emit_error(opt, 2, "degree_limit", e.what());
  } catch (const std::invalid_argument& e) {
    return emit_error(opt, 2, "invalid_input", e.what());
  } catch (const std::exception& e) {
    return emit_error(opt, 1, "internal", e.what());
  }
  return 0;
}
