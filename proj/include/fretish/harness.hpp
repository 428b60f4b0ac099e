#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fretish/codegen.hpp"
#include "fretish/mtl.hpp"
#include "fretish/requirement.hpp"
#include "fretish/semantics.hpp"

namespace fretish {

/// One of the 8 x 2 x 10 requirement shapes.
struct TemplateId {
  Scope::Kind scope = Scope::Kind::Null;
  bool has_condition = false;
  Timing::Kind timing = Timing::Kind::Eventually;

  /// Only-scopes have no After timing.
  bool supported() const;
  /// e.g. "onlyIn/cond/within".
  std::string name() const;

  bool operator==(const TemplateId &) const = default;
};

/// All 160 templates in (scope, condition, timing) order.
std::vector<TemplateId> all_templates();
/// The 154 supported templates, same order.
std::vector<TemplateId> supported_templates();

using Rng = std::mt19937_64;

/// Per-case generator seeded from (seed, template index, trial), independent
/// of evaluation order.
Rng case_rng(std::uint64_t seed, std::uint64_t template_index, std::uint64_t trial);

enum class Strategy { Uniform, Sparse, Dense, Edges, StopBeforeTrigger };

const char *to_string(Strategy s);

/// Corner-case shapes of the mode signal used by the Edges strategy.
enum class EdgeVariant { ModeAtStart, ModeAtEnd, ModeNever, ModeOneBlock, ModeTwoBlocks };

inline constexpr std::size_t kEdgeVariants = 5;

/// Variables of generated traces and requirements.
struct VarPool {
  std::string mode = "m";
  std::string stop = "s";
  std::string cond = "c";
  std::string res = "r";
  /// Integer-valued, drawn from [0, 9].
  std::string number = "x";

  std::vector<std::string> booleans() const { return {mode, stop, cond, res}; }
};

/// Random trace. Uniform, Sparse and Dense make each Boolean true with
/// probability 0.5, 0.1 and 0.9. Edges draws uniform values, then forces the
/// mode signal into `variant`. StopBeforeTrigger places a rising edge of
/// stop strictly before a rising edge of cond.
Trace gen_trace(Strategy strategy, std::size_t length, const VarPool &vars, Rng &rng,
                EdgeVariant variant = EdgeVariant::ModeOneBlock);

/// Requirement of shape `id` over `vars`: mode, stop and response are single
/// variables, the condition is a random expression of depth <= 2 and
/// durations are drawn from {1, 2, 3}. Throws UnsupportedError for
/// unsupported templates.
Requirement instantiate_template(const TemplateId &id, const VarPool &vars, Rng &rng);

/// Both sides of the correctness claim on a single trace.
struct Verdict {
  Requirement requirement;
  Trace trace;
  bool sem_value = false;
  bool mtl_value = false;
  bool agree = false;
  /// scope_sem of the requirement on the trace.
  Oli scope;
};

Verdict check_requirement(const Requirement &r, const Trace &trace,
                          EmptyScopePolicy policy = EmptyScopePolicy::Vacuous,
                          const Mutation &mutation = {});

/// Greedily shortens the trace (prefix, suffix and single-state removal)
/// and flips Boolean values while the disagreement persists. Agreeing
/// verdicts are returned unchanged.
Verdict shrink(const Verdict &verdict, EmptyScopePolicy policy = EmptyScopePolicy::Vacuous,
               const Mutation &mutation = {});

struct StrategyWeights {
  unsigned uniform = 2;
  unsigned sparse = 1;
  unsigned dense = 1;
  unsigned edges = 3;
  unsigned stop_before_trigger = 1;
};

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t traces_per_template = 65;
  std::size_t max_trace_len = 25;
  VarPool vars;
  StrategyWeights weights;
  EmptyScopePolicy policy = EmptyScopePolicy::Vacuous;
  Mutation mutation;
  /// Counterexamples shrunk per template; the rest are reported as found.
  std::size_t shrink_per_template = 1;
  /// Random (formula, trace) pairs for the evaluator self-check.
  std::size_t oracle_checks = 1000;
  /// 0 picks the hardware concurrency. Never changes the report.
  unsigned threads = 0;

  /// Throws ArgumentError when a count is zero or all weights are zero.
  void validate() const;
};

struct TemplateResult {
  TemplateId id;
  std::size_t cases = 0;
  std::size_t disagreements = 0;
  /// Cases whose scope OLI was empty, and how many of them had a true formula.
  std::size_t empty_scope_cases = 0;
  std::size_t empty_scope_mtl_true = 0;
};

struct Counterexample {
  TemplateId id;
  std::size_t trial = 0;
  Strategy strategy = Strategy::Uniform;
  Verdict verdict;
  std::optional<Verdict> shrunk;
};

struct Report {
  FuzzConfig config;
  std::vector<TemplateResult> per_template;
  std::vector<Counterexample> counterexamples;
  std::size_t total_cases = 0;
  std::size_t total_disagreements = 0;
  std::size_t oracle_checks = 0;
  std::size_t oracle_failures = 0;
  /// Before-scope cases where the mode never held, and their disagreements.
  std::size_t before_mode_never_cases = 0;
  std::size_t before_mode_never_disagreements = 0;

  bool ok() const { return total_disagreements == 0 && oracle_failures == 0; }
  std::string text() const;
  std::string json() const;
};

Report fuzz_all_templates(const FuzzConfig &cfg);

/// Direct transcription of the satisfaction clauses with explicit quantifier
/// loops; slow, used to cross-check the evaluator.
bool brute_force_eval_at(const Formula &f, const Trace &trace, std::size_t t);

/// Random formula of depth <= `depth` over the given Boolean atoms, using
/// every operator and small intervals (bounded and unbounded).
Formula random_formula(std::size_t depth, const std::vector<std::string> &atoms, Rng &rng);

} // namespace fretish
