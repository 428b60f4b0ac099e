// fretc: translate, evaluate and fuzz structured requirements.
//
// Exit codes: 0 success/true, 1 false/disagreement, 2 parse error,
// 3 evaluation error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fretish/codegen.hpp"
#include "fretish/error.hpp"
#include "fretish/harness.hpp"
#include "fretish/mtl.hpp"
#include "fretish/requirement.hpp"
#include "fretish/semantics.hpp"
#include "fretish/trace_io.hpp"

namespace {

using namespace fretish;

constexpr int kFalse = 1;
constexpr int kParseError = 2;
constexpr int kEvalError = 3;

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Requirement single_requirement(const std::string &text, const std::string &file) {
  if (file.empty())
    return parse_requirement(text);
  auto all = parse_requirements(read_file(file));
  if (all.size() != 1)
    throw ValidationError("'" + file + "' holds " + std::to_string(all.size()) +
                          " requirements; expected exactly one");
  return all.front();
}

EmptyScopePolicy parse_policy(const std::string &name) {
  return name == "literal" ? EmptyScopePolicy::Literal : EmptyScopePolicy::Vacuous;
}

// Maps library errors onto the exit-code contract.
template <class Body> int guarded(Body body) {
  try {
    return body();
  } catch (const SyntaxError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const TypeError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEvalError;
  } catch (const UnboundVariableError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEvalError;
  } catch (const RangeError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEvalError;
  } catch (const UnsupportedError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEvalError;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Structured requirements to past-time MTL"};
  app.require_subcommand(1);

  auto *translate = app.add_subcommand("translate", "Print the MTL formula of a requirement");
  bool expand = false;
  std::string req_text, req_file;
  translate->add_flag("--expand-sugar", expand, "Expand SI, SR, Y^m and the point macros");
  auto *t_text = translate->add_option("-r", req_text, "Requirement text");
  auto *t_file = translate->add_option("-f", req_file, "File holding one requirement");
  t_text->excludes(t_file);

  auto *evalc = app.add_subcommand("eval", "Evaluate a requirement or formula on a trace");
  std::string formula_text, trace_path;
  std::optional<std::size_t> at;
  auto *e_req = evalc->add_option("-r", req_text, "Requirement text");
  auto *e_formula = evalc->add_option("--formula", formula_text, "Formula text");
  e_req->excludes(e_formula);
  evalc->add_option("--trace", trace_path, "Trace JSON file")->required();
  evalc->add_option("--at", at, "Time index (default: last)");

  auto *semc = app.add_subcommand("semantics", "Explain trace membership");
  std::string policy_name = "vacuous";
  semc->add_option("-r", req_text, "Requirement text")->required();
  semc->add_option("--trace", trace_path, "Trace JSON file")->required();
  semc->add_option("--policy", policy_name, "Empty-scope policy")
      ->check(CLI::IsMember({"vacuous", "literal"}));

  auto *fuzzc = app.add_subcommand("fuzz", "Differential check over all templates");
  FuzzConfig cfg;
  std::size_t cases = 10010;
  std::string out_dir = ".";
  std::string mutate = "none";
  fuzzc->add_option("--seed", cfg.seed, "Seed");
  fuzzc->add_option("--cases", cases, "Minimum total number of cases")->check(CLI::PositiveNumber);
  fuzzc->add_option("--max-len", cfg.max_trace_len, "Maximum trace length")
      ->check(CLI::PositiveNumber);
  fuzzc->add_option("--policy", policy_name, "Empty-scope policy")
      ->check(CLI::IsMember({"vacuous", "literal"}));
  fuzzc->add_option("--out", out_dir, "Directory for report.txt and report.json");
  fuzzc->add_option("--mutate", mutate, "Reintroduce a known translation bug")
      ->check(CLI::IsMember({"none", "ffim", "eventually"}));
  fuzzc->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }

  if (translate->parsed()) {
    if (req_text.empty() == req_file.empty()) {
      std::cerr << "error: give exactly one of -r and -f\n";
      return kParseError;
    }
    return guarded([&] {
      Requirement r = single_requirement(req_text, req_file);
      std::cout << format_formula(gen_form(r), FormatOptions{!expand}) << "\n";
      return 0;
    });
  }

  if (evalc->parsed()) {
    if (req_text.empty() == formula_text.empty()) {
      std::cerr << "error: give exactly one of -r and --formula\n";
      return kParseError;
    }
    return guarded([&] {
      Formula f = formula_text.empty() ? gen_form(parse_requirement(req_text))
                                       : parse_formula(formula_text);
      Trace trace = load_trace_file(trace_path);
      bool value = eval_at(f, trace, at.value_or(trace.last()));
      std::cout << (value ? "true" : "false") << "\n";
      return value ? 0 : kFalse;
    });
  }

  if (semc->parsed()) {
    return guarded([&] {
      Requirement r = parse_requirement(req_text);
      Trace trace = load_trace_file(trace_path);
      auto policy = parse_policy(policy_name);
      std::cout << explain_membership(r, trace, policy);
      return fret_sem_member(r, trace, policy) ? 0 : kFalse;
    });
  }

  return guarded([&] {
    const std::size_t templates = supported_templates().size();
    cfg.traces_per_template = (cases + templates - 1) / templates;
    cfg.policy = parse_policy(policy_name);
    cfg.mutation.ffim_without_ftp = mutate == "ffim";
    cfg.mutation.eventually_without_guard = mutate == "eventually";
    Report report = fuzz_all_templates(cfg);
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "report.txt") << report.text();
    std::ofstream(std::filesystem::path(out_dir) / "report.json") << report.json();
    std::cout << "templates=" << report.per_template.size() << " cases=" << report.total_cases
              << " disagreements=" << report.total_disagreements
              << " oracle_failures=" << report.oracle_failures << "\n";
    return report.ok() ? 0 : kFalse;
  });
}
