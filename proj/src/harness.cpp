#include "fretish/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "fretish/error.hpp"
#include "fretish/trace_io.hpp"
#include "json_util.hpp"

namespace fretish {

bool TemplateId::supported() const {
  Scope s{scope, std::nullopt};
  return !(is_only(s) && timing == Timing::Kind::After);
}

std::string TemplateId::name() const {
  return std::string(to_string(scope)) + (has_condition ? "/cond/" : "/null/") + to_string(timing);
}

std::vector<TemplateId> all_templates() {
  std::vector<TemplateId> out;
  for (auto s : kAllScopes)
    for (bool c : {false, true})
      for (auto t : kAllTimings)
        out.push_back({s, c, t});
  return out;
}

std::vector<TemplateId> supported_templates() {
  auto all = all_templates();
  std::vector<TemplateId> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [](const TemplateId &id) { return id.supported(); });
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Portable draws: the standard distributions are implementation-defined.
std::size_t below(Rng &rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }
bool chance(Rng &rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

} // namespace

Rng case_rng(std::uint64_t seed, std::uint64_t template_index, std::uint64_t trial) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= template_index * 0xd1b54a32d192ed03ULL;
  std::uint64_t b = splitmix64(state);
  state ^= trial * 0xaef17502108ef2d9ULL;
  std::uint64_t c = splitmix64(state);
  return Rng(a ^ (b << 1) ^ (c << 2) ^ c);
}

const char *to_string(Strategy s) {
  switch (s) {
  case Strategy::Uniform: return "uniform";
  case Strategy::Sparse: return "sparse";
  case Strategy::Dense: return "dense";
  case Strategy::Edges: return "edges";
  case Strategy::StopBeforeTrigger: return "stop_before_trigger";
  }
  return "?";
}

namespace {

using Grid = std::vector<std::vector<bool>>;

void set_block(std::vector<bool> &signal, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i <= hi && i < signal.size(); ++i)
    signal[i] = true;
}

void force_mode(std::vector<bool> &mode, EdgeVariant variant, Rng &rng) {
  const std::size_t len = mode.size();
  const std::size_t n = len - 1;
  switch (variant) {
  case EdgeVariant::ModeAtStart:
    mode[0] = true;
    break;
  case EdgeVariant::ModeAtEnd:
    std::fill(mode.begin(), mode.end(), false);
    set_block(mode, below(rng, len), n);
    break;
  case EdgeVariant::ModeNever:
    std::fill(mode.begin(), mode.end(), false);
    break;
  case EdgeVariant::ModeOneBlock: {
    std::fill(mode.begin(), mode.end(), false);
    std::size_t a = below(rng, len);
    set_block(mode, a, a + below(rng, len - a));
    break;
  }
  case EdgeVariant::ModeTwoBlocks: {
    std::fill(mode.begin(), mode.end(), false);
    if (len < 3) {
      set_block(mode, 0, 0);
      break;
    }
    // cut points a <= b < c <= d with a gap between b and c
    std::size_t a = below(rng, len - 2);
    std::size_t b = a + below(rng, len - 2 - a);
    std::size_t c = b + 2 + below(rng, len - b - 2);
    std::size_t d = c + below(rng, len - c);
    set_block(mode, a, b);
    set_block(mode, c, d);
    break;
  }
  }
}

void rising_edge(std::vector<bool> &signal, std::size_t at) {
  signal[at] = true;
  if (at > 0)
    signal[at - 1] = false;
}

} // namespace

Trace gen_trace(Strategy strategy, std::size_t length, const VarPool &vars, Rng &rng,
                EdgeVariant variant) {
  if (length == 0)
    throw ArgumentError("trace length must be at least 1");
  const auto names = vars.booleans();
  double p = 0.5;
  if (strategy == Strategy::Sparse)
    p = 0.1;
  else if (strategy == Strategy::Dense)
    p = 0.9;
  else if (strategy == Strategy::StopBeforeTrigger)
    p = 0.3;
  Grid grid(names.size(), std::vector<bool>(length));
  for (auto &signal : grid)
    for (std::size_t i = 0; i < length; ++i)
      signal[i] = chance(rng, p);
  std::vector<std::int64_t> numbers(length);
  for (auto &x : numbers)
    x = static_cast<std::int64_t>(below(rng, 10));

  if (strategy == Strategy::Edges)
    force_mode(grid[0], variant, rng);
  if (strategy == Strategy::StopBeforeTrigger && length >= 2) {
    std::size_t a = below(rng, length - 1);
    std::size_t b = a + 1 + below(rng, length - a - 1);
    rising_edge(grid[1], a);
    rising_edge(grid[2], b);
  }

  std::vector<State> states(length);
  for (std::size_t i = 0; i < length; ++i) {
    for (std::size_t v = 0; v < names.size(); ++v)
      states[i].set(names[v], static_cast<bool>(grid[v][i]));
    states[i].set(vars.number, Rational(numbers[i]));
  }
  return Trace(std::move(states));
}

namespace {

BoolExpr random_atom(const VarPool &vars, Rng &rng) {
  switch (below(rng, 7)) {
  case 0:
  case 1:
  case 2: return BoolExpr::variable(vars.cond);
  case 3: return BoolExpr::variable(vars.mode);
  case 4: return BoolExpr::variable(vars.stop);
  case 5: return BoolExpr::variable(vars.res);
  default: {
    static constexpr CompareOp kOps[] = {CompareOp::Less,     CompareOp::LessEq,
                                         CompareOp::Equal,    CompareOp::NotEqual,
                                         CompareOp::GreaterEq, CompareOp::Greater};
    auto op = kOps[below(rng, 6)];
    return BoolExpr::compare(vars.number, op, Rational(static_cast<std::int64_t>(below(rng, 10))));
  }
  }
}

BoolExpr random_condition(std::size_t depth, const VarPool &vars, Rng &rng) {
  if (depth == 0 || chance(rng, 0.4))
    return random_atom(vars, rng);
  switch (below(rng, 7)) {
  case 0:
  case 1: return BoolExpr::negate(random_condition(depth - 1, vars, rng));
  default: break;
  }
  // operands drawn in a fixed order
  std::size_t op = below(rng, 5);
  BoolExpr a = random_condition(depth - 1, vars, rng);
  BoolExpr b = random_condition(depth - 1, vars, rng);
  if (op < 2)
    return BoolExpr::conj(a, b);
  if (op < 4)
    return BoolExpr::disj(a, b);
  return BoolExpr::implies(a, b);
}

} // namespace

Requirement instantiate_template(const TemplateId &id, const VarPool &vars, Rng &rng) {
  if (!id.supported())
    throw UnsupportedError("template " + id.name() + " is not supported");
  Requirement r;
  if (id.scope != Scope::Kind::Null)
    r.scope = Scope::make(id.scope, BoolExpr::variable(vars.mode));
  if (id.has_condition)
    r.condition = random_condition(2, vars, rng);
  r.response = BoolExpr::variable(vars.res);
  Timing t = Timing::simple(id.timing);
  if (t.has_duration())
    t.duration = 1 + below(rng, 3);
  if (t.has_stop())
    t.stop = BoolExpr::variable(vars.stop);
  r.timing = t;
  return r;
}

Verdict check_requirement(const Requirement &r, const Trace &trace, EmptyScopePolicy policy,
                          const Mutation &mutation) {
  Verdict v{r, trace, false, false, false, Oli()};
  v.sem_value = fret_sem_member(r, trace, policy);
  v.mtl_value = eval(gen_form(r, mutation), trace);
  v.agree = v.sem_value == v.mtl_value;
  v.scope = scope_sem(r.scope, trace);
  return v;
}

Verdict shrink(const Verdict &verdict, EmptyScopePolicy policy, const Mutation &mutation) {
  if (verdict.agree)
    return verdict;
  Verdict cur = verdict;
  auto attempt = [&](std::vector<State> steps) {
    if (steps.empty())
      return false;
    Verdict next = check_requirement(cur.requirement, Trace(std::move(steps)), policy, mutation);
    if (next.agree)
      return false;
    cur = std::move(next);
    return true;
  };
  // Every accepted step shortens the trace, turns a true into false or moves
  // a number to 0, so the loop terminates.
  bool progress = true;
  while (progress) {
    progress = false;
    const std::vector<State> steps = cur.trace.steps();
    for (std::size_t chunk = std::max<std::size_t>(steps.size() / 2, 1); chunk >= 1 && !progress;
         chunk /= 2) {
      for (std::size_t i = 0; i + chunk <= steps.size() && !progress; ++i) {
        std::vector<State> cut(steps.begin(), steps.begin() + i);
        cut.insert(cut.end(), steps.begin() + i + chunk, steps.end());
        progress = attempt(std::move(cut));
      }
      if (chunk == 1)
        break;
    }
    if (progress)
      continue;
    for (std::size_t i = 0; i < steps.size() && !progress; ++i) {
      for (const auto &[name, value] : steps[i].bindings()) {
        Value simpler;
        if (const bool *b = std::get_if<bool>(&value)) {
          if (!*b)
            continue;
          simpler = false;
        } else {
          if (std::get<Rational>(value).numerator() == 0)
            continue;
          simpler = Rational(0);
        }
        std::vector<State> changed = steps;
        changed[i].set(name, simpler);
        if ((progress = attempt(std::move(changed))))
          break;
      }
    }
  }
  return cur;
}

void FuzzConfig::validate() const {
  if (traces_per_template == 0)
    throw ArgumentError("traces_per_template must be at least 1");
  if (max_trace_len == 0)
    throw ArgumentError("max_trace_len must be at least 1");
  if (weights.uniform + weights.sparse + weights.dense + weights.edges +
          weights.stop_before_trigger ==
      0)
    throw ArgumentError("at least one strategy weight must be positive");
}

namespace {

Strategy pick_strategy(const StrategyWeights &w, Rng &rng) {
  const std::pair<unsigned, Strategy> table[] = {
      {w.uniform, Strategy::Uniform},
      {w.sparse, Strategy::Sparse},
      {w.dense, Strategy::Dense},
      {w.edges, Strategy::Edges},
      {w.stop_before_trigger, Strategy::StopBeforeTrigger},
  };
  unsigned total = 0;
  for (auto &[weight, s] : table)
    total += weight;
  std::size_t roll = below(rng, total);
  for (auto &[weight, s] : table) {
    if (roll < weight)
      return s;
    roll -= weight;
  }
  return Strategy::Uniform;
}

struct CaseOutcome {
  Strategy strategy;
  Verdict verdict;
};

struct TemplateRun {
  TemplateResult result;
  std::vector<Counterexample> counterexamples;
  std::size_t mode_never_cases = 0;
  std::size_t mode_never_disagreements = 0;
};

TemplateRun run_template(const FuzzConfig &cfg, std::size_t index, const TemplateId &id) {
  TemplateRun run;
  run.result.id = id;
  std::size_t edge_cycle = 0;
  for (std::size_t trial = 0; trial < cfg.traces_per_template; ++trial) {
    Rng rng = case_rng(cfg.seed, index, trial);
    Strategy strategy = pick_strategy(cfg.weights, rng);
    std::size_t length = 1 + below(rng, cfg.max_trace_len);
    Requirement r = instantiate_template(id, cfg.vars, rng);
    auto variant = static_cast<EdgeVariant>(edge_cycle % kEdgeVariants);
    if (strategy == Strategy::Edges)
      ++edge_cycle;
    Trace trace = gen_trace(strategy, length, cfg.vars, rng, variant);
    Verdict v = check_requirement(r, trace, cfg.policy, cfg.mutation);
    ++run.result.cases;
    if (v.scope.empty()) {
      ++run.result.empty_scope_cases;
      run.result.empty_scope_mtl_true += v.mtl_value;
    }
    if (r.scope.mode && bool_sem(*r.scope.mode, trace).empty()) {
      ++run.mode_never_cases;
      run.mode_never_disagreements += !v.agree;
    }
    if (v.agree)
      continue;
    ++run.result.disagreements;
    Counterexample cx{id, trial, strategy, v, std::nullopt};
    if (run.counterexamples.size() < cfg.shrink_per_template)
      cx.shrunk = shrink(v, cfg.policy, cfg.mutation);
    run.counterexamples.push_back(std::move(cx));
  }
  return run;
}

std::string mutation_text(const Mutation &m) {
  std::vector<std::string> parts;
  if (m.ffim_without_ftp)
    parts.push_back("ffim_without_ftp");
  if (m.eventually_without_guard)
    parts.push_back("eventually_without_guard");
  if (parts.empty())
    return "none";
  std::string out;
  for (const auto &p : parts)
    out += (out.empty() ? "" : ",") + p;
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Findings {
  std::vector<std::string> lines;
};

Findings summarize(const Report &r) {
  Findings f;
  std::size_t empty = 0, empty_true = 0, before_dis = 0, only_before_dis = 0;
  for (const auto &t : r.per_template) {
    empty += t.empty_scope_cases;
    empty_true += t.empty_scope_mtl_true;
    if (t.id.scope == Scope::Kind::Before)
      before_dis += t.disagreements;
    if (t.id.scope == Scope::Kind::OnlyBefore)
      only_before_dis += t.disagreements;
  }
  f.lines.push_back("empty scope in " + std::to_string(empty) + " cases; formula true in " +
                    std::to_string(empty_true) +
                    (empty == empty_true ? " (matches the vacuous policy)"
                                         : " (differs from the vacuous policy)"));
  f.lines.push_back("before scope with mode never true: " +
                    std::to_string(r.before_mode_never_cases) + " cases, " +
                    std::to_string(r.before_mode_never_disagreements) + " disagreements");
  f.lines.push_back("right endpoint: before scope " + std::to_string(before_dis) +
                    " disagreements, onlyBefore scope " + std::to_string(only_before_dis) +
                    " disagreements");
  return f;
}

} // namespace

namespace {

std::size_t run_oracle_checks(const FuzzConfig &cfg) {
  std::size_t failures = 0;
  const auto atoms = std::vector<std::string>{cfg.vars.mode, cfg.vars.res};
  for (std::size_t i = 0; i < cfg.oracle_checks; ++i) {
    Rng rng = case_rng(cfg.seed, ~std::uint64_t{0}, i);
    Formula f = random_formula(1 + below(rng, 5), atoms, rng);
    Trace trace = gen_trace(Strategy::Uniform, 1 + below(rng, 8), cfg.vars, rng);
    auto fast = evaluate_all(f, trace);
    for (std::size_t t = 0; t < trace.size(); ++t) {
      if (fast[t] != brute_force_eval_at(f, trace, t)) {
        ++failures;
        break;
      }
    }
  }
  return failures;
}

} // namespace

Report fuzz_all_templates(const FuzzConfig &cfg) {
  cfg.validate();
  const auto templates = supported_templates();
  std::vector<TemplateRun> runs(templates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < templates.size();)
      runs[i] = run_template(cfg, i, templates[i]);
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k)
    pool.emplace_back(worker);
  worker();
  for (auto &th : pool)
    th.join();

  Report report;
  report.config = cfg;
  std::size_t never_cases = 0, never_dis = 0;
  for (auto &run : runs) {
    report.total_cases += run.result.cases;
    report.total_disagreements += run.result.disagreements;
    if (run.result.id.scope == Scope::Kind::Before) {
      never_cases += run.mode_never_cases;
      never_dis += run.mode_never_disagreements;
    }
    report.per_template.push_back(run.result);
    for (auto &cx : run.counterexamples)
      report.counterexamples.push_back(std::move(cx));
  }
  report.oracle_checks = cfg.oracle_checks;
  report.oracle_failures = run_oracle_checks(cfg);
  report.before_mode_never_cases = never_cases;
  report.before_mode_never_disagreements = never_dis;
  return report;
}

std::string Report::text() const {
  std::ostringstream out;
  out << "fuzz report\n";
  out << "seed: " << config.seed << "\n";
  out << "traces per template: " << config.traces_per_template << "\n";
  out << "max trace length: " << config.max_trace_len << "\n";
  out << "policy: " << to_string(config.policy) << "\n";
  out << "mutation: " << mutation_text(config.mutation) << "\n";
  out << "templates: " << per_template.size() << "\n";
  out << "cases: " << total_cases << "\n";
  out << "disagreements: " << total_disagreements << "\n";
  out << "oracle self-check: " << oracle_checks << " cases, " << oracle_failures << " failures\n";
  for (const auto &line :
       summarize(*this).lines)
    out << "finding: " << line << "\n";
  out << "per template:\n";
  for (const auto &t : per_template)
    out << "  " << t.id.name() << " cases=" << t.cases << " disagreements=" << t.disagreements
        << "\n";
  if (!counterexamples.empty())
    out << "counterexamples:\n";
  for (const auto &cx : counterexamples) {
    out << "  " << cx.id.name() << " trial=" << cx.trial << " strategy=" << to_string(cx.strategy)
        << "\n";
    out << "    requirement: " << unparse_requirement(cx.verdict.requirement) << "\n";
    out << "    trace: " << trace_to_json(cx.verdict.trace) << "\n";
    out << "    scope: " << to_string(cx.verdict.scope) << "\n";
    out << "    sem=" << bool_text(cx.verdict.sem_value) << " mtl=" << bool_text(cx.verdict.mtl_value)
        << "\n";
    if (cx.shrunk) {
      out << "    shrunk (length " << cx.shrunk->trace.size()
          << "): " << trace_to_json(cx.shrunk->trace) << "\n";
      out << "    shrunk sem=" << bool_text(cx.shrunk->sem_value)
          << " mtl=" << bool_text(cx.shrunk->mtl_value) << "\n";
    }
  }
  return out.str();
}

std::string Report::json() const {
  using J = nlohmann::ordered_json;
  J doc;
  J c;
  c["seed"] = config.seed;
  c["traces_per_template"] = config.traces_per_template;
  c["max_trace_len"] = config.max_trace_len;
  c["policy"] = to_string(config.policy);
  c["mutation"] = mutation_text(config.mutation);
  c["vars"] = {{"mode", config.vars.mode}, {"stop", config.vars.stop},
               {"cond", config.vars.cond}, {"res", config.vars.res},
               {"number", config.vars.number}};
  c["weights"] = {{"uniform", config.weights.uniform},
                  {"sparse", config.weights.sparse},
                  {"dense", config.weights.dense},
                  {"edges", config.weights.edges},
                  {"stop_before_trigger", config.weights.stop_before_trigger}};
  doc["config"] = c;
  std::size_t empty = 0, empty_true = 0;
  for (const auto &t : per_template) {
    empty += t.empty_scope_cases;
    empty_true += t.empty_scope_mtl_true;
  }
  doc["totals"] = {{"templates", per_template.size()},
                   {"cases", total_cases},
                   {"disagreements", total_disagreements},
                   {"oracle_checks", oracle_checks},
                   {"oracle_failures", oracle_failures},
                   {"empty_scope_cases", empty},
                   {"empty_scope_mtl_true", empty_true}};
  doc["findings"] =
      summarize(*this).lines;
  J per = J::array();
  for (const auto &t : per_template)
    per.push_back({{"id", t.id.name()}, {"cases", t.cases}, {"disagreements", t.disagreements}});
  doc["per_template"] = per;
  J cxs = J::array();
  for (const auto &cx : counterexamples) {
    J e;
    e["id"] = cx.id.name();
    e["trial"] = cx.trial;
    e["strategy"] = to_string(cx.strategy);
    e["requirement_text"] = unparse_requirement(cx.verdict.requirement);
    e["trace"] = detail::trace_json(cx.verdict.trace);
    e["scope"] = to_string(cx.verdict.scope);
    e["sem"] = cx.verdict.sem_value;
    e["mtl"] = cx.verdict.mtl_value;
    if (cx.shrunk)
      e["shrunk"] = {{"trace", detail::trace_json(cx.shrunk->trace)},
                     {"sem", cx.shrunk->sem_value},
                     {"mtl", cx.shrunk->mtl_value}};
    cxs.push_back(std::move(e));
  }
  doc["counterexamples"] = cxs;
  return doc.dump(2) + "\n";
}

bool brute_force_eval_at(const Formula &f, const Trace &trace, std::size_t t) {
  using K = Formula::Kind;
  auto in = [&](std::size_t t0) { return f.interval().contains(t - t0); };
  switch (f.kind()) {
  case K::True: return true;
  case K::False: return false;
  case K::Atom: return f.atom_expr().evaluate(trace[t], t);
  case K::Not: return !brute_force_eval_at(f.lhs(), trace, t);
  case K::And: return brute_force_eval_at(f.lhs(), trace, t) && brute_force_eval_at(f.rhs(), trace, t);
  case K::Or: return brute_force_eval_at(f.lhs(), trace, t) || brute_force_eval_at(f.rhs(), trace, t);
  case K::Implies:
    return !brute_force_eval_at(f.lhs(), trace, t) || brute_force_eval_at(f.rhs(), trace, t);
  case K::Prev: return t != 0 && brute_force_eval_at(f.lhs(), trace, t - 1);
  case K::Once:
    for (std::size_t t0 = 0; t0 <= t; ++t0)
      if (in(t0) && brute_force_eval_at(f.lhs(), trace, t0))
        return true;
    return false;
  case K::Historically:
    for (std::size_t t0 = 0; t0 <= t; ++t0)
      if (in(t0) && !brute_force_eval_at(f.lhs(), trace, t0))
        return false;
    return true;
  case K::Since:
    for (std::size_t t0 = 0; t0 <= t; ++t0) {
      if (!in(t0) || !brute_force_eval_at(f.rhs(), trace, t0))
        continue;
      bool held = true;
      for (std::size_t t1 = t0 + 1; t1 <= t && held; ++t1)
        held = brute_force_eval_at(f.lhs(), trace, t1);
      if (held)
        return true;
    }
    return false;
  }
  return false;
}

Formula random_formula(std::size_t depth, const std::vector<std::string> &atoms, Rng &rng) {
  auto leaf = [&] {
    std::size_t k = below(rng, atoms.size() + 1);
    if (k == atoms.size())
      return chance(rng, 0.5) ? Formula::top() : Formula::bottom();
    return Formula::atom(BoolExpr::variable(atoms[k]));
  };
  if (depth <= 1 || chance(rng, 0.15))
    return leaf();
  auto interval = [&] {
    if (chance(rng, 0.35))
      return Interval{};
    std::size_t lo = below(rng, 3);
    if (chance(rng, 0.3))
      return Interval::unbounded(lo);
    return Interval::closed(lo, lo + below(rng, 3));
  };
  auto sub = [&] { return random_formula(depth - 1, atoms, rng); };
  std::size_t op = below(rng, 8);
  if (op == 0)
    return Formula::negate(sub());
  if (op == 4)
    return Formula::prev(sub());
  if (op == 1 || op == 2 || op == 3) {
    Formula a = sub();
    Formula b = sub();
    return op == 1 ? Formula::conj(a, b) : op == 2 ? Formula::disj(a, b) : Formula::implies(a, b);
  }
  Interval iv = interval();
  Formula a = sub();
  if (op == 5)
    return Formula::once(iv, a);
  if (op == 6)
    return Formula::historically(iv, a);
  return Formula::since(iv, a, sub());
}

} // namespace fretish
