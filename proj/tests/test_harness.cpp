#include <gtest/gtest.h>

#include <json.hpp>

#include "fretish/error.hpp"
#include "fretish/harness.hpp"
#include "oracle.hpp"

#include <set>

using namespace fretish;

namespace {

using K = Timing::Kind;

FuzzConfig small_config(std::size_t per_template = 8) {
  FuzzConfig cfg;
  cfg.traces_per_template = per_template;
  cfg.max_trace_len = 12;
  cfg.oracle_checks = 50;
  cfg.threads = 1;
  return cfg;
}

std::vector<bool> column(const Trace &t, const std::string &name) {
  return oracle::bits_of(BoolExpr::variable(name), t);
}

} // namespace

TEST(Templates, Counts) {
  EXPECT_EQ(all_templates().size(), 160u);
  auto supported = supported_templates();
  EXPECT_EQ(supported.size(), 154u);
  std::size_t unsupported = 0;
  for (const auto &id : all_templates()) {
    bool only = id.scope == Scope::Kind::OnlyAfter || id.scope == Scope::Kind::OnlyBefore ||
                id.scope == Scope::Kind::OnlyIn;
    EXPECT_EQ(id.supported(), !(only && id.timing == K::After)) << id.name();
    unsupported += !id.supported();
  }
  EXPECT_EQ(unsupported, 6u);
  EXPECT_EQ((TemplateId{Scope::Kind::OnlyIn, true, K::Within}).name(), "onlyIn/cond/within");
}

TEST(GenTrace, LengthAndDeterminism) {
  VarPool vars;
  Rng a = case_rng(1, 2, 3), b = case_rng(1, 2, 3);
  EXPECT_EQ(gen_trace(Strategy::Uniform, 1, vars, a).size(), 1u);
  Rng c = case_rng(1, 2, 3);
  EXPECT_EQ(gen_trace(Strategy::Dense, 20, vars, b), gen_trace(Strategy::Dense, 20, vars, c));
  Rng d = case_rng(1, 2, 4);
  Rng e = case_rng(1, 2, 3);
  EXPECT_NE(gen_trace(Strategy::Uniform, 20, vars, d), gen_trace(Strategy::Uniform, 20, vars, e));
  EXPECT_THROW(gen_trace(Strategy::Uniform, 0, vars, a), ArgumentError);
}

TEST(GenTrace, EdgeVariants) {
  VarPool vars;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Rng rng = case_rng(5, 0, trial);
    std::size_t len = 1 + trial % 20;
    Trace never = gen_trace(Strategy::Edges, len, vars, rng, EdgeVariant::ModeNever);
    EXPECT_TRUE(bool_sem(BoolExpr::variable(vars.mode), never).empty());
    Trace start = gen_trace(Strategy::Edges, len, vars, rng, EdgeVariant::ModeAtStart);
    EXPECT_TRUE(column(start, vars.mode).front());
    Trace end = gen_trace(Strategy::Edges, len, vars, rng, EdgeVariant::ModeAtEnd);
    EXPECT_TRUE(column(end, vars.mode).back());
    EXPECT_EQ(oracle::runs(column(end, vars.mode)).size(), 1u);
    Trace one = gen_trace(Strategy::Edges, len, vars, rng, EdgeVariant::ModeOneBlock);
    EXPECT_EQ(oracle::runs(column(one, vars.mode)).size(), 1u);
    Trace two = gen_trace(Strategy::Edges, len, vars, rng, EdgeVariant::ModeTwoBlocks);
    if (len >= 3) {
      EXPECT_EQ(oracle::runs(column(two, vars.mode)).size(), 2u);
    }
  }
}

TEST(GenTrace, StopRisesBeforeCondition) {
  VarPool vars;
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    Rng rng = case_rng(9, 1, trial);
    std::size_t len = 2 + trial % 20;
    Trace t = gen_trace(Strategy::StopBeforeTrigger, len, vars, rng);
    auto s = column(t, vars.stop), c = column(t, vars.cond);
    auto rise = [](const std::vector<bool> &v) {
      std::set<std::size_t> out;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] && (i == 0 || !v[i - 1]))
          out.insert(i);
      return out;
    };
    bool found = false;
    for (std::size_t a : rise(s))
      for (std::size_t b : rise(c))
        found = found || a < b;
    EXPECT_TRUE(found) << "trial " << trial;
  }
}

TEST(GenTrace, Densities) {
  VarPool vars;
  auto fraction = [&](Strategy s) {
    std::size_t on = 0, total = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      Rng rng = case_rng(3, 3, trial);
      Trace t = gen_trace(s, 25, vars, rng);
      for (const auto &name : vars.booleans())
        for (bool b : column(t, name)) {
          on += b;
          ++total;
        }
    }
    return static_cast<double>(on) / static_cast<double>(total);
  };
  EXPECT_NEAR(fraction(Strategy::Uniform), 0.5, 0.03);
  EXPECT_NEAR(fraction(Strategy::Sparse), 0.1, 0.03);
  EXPECT_NEAR(fraction(Strategy::Dense), 0.9, 0.03);
}

TEST(Instantiate, Shapes) {
  VarPool vars;
  Rng rng = case_rng(1, 0, 0);
  Requirement r = instantiate_template({Scope::Kind::In, false, K::Always}, vars, rng);
  EXPECT_EQ(r.scope, Scope::make(Scope::Kind::In, BoolExpr::variable("m")));
  EXPECT_FALSE(r.condition.has_value());
  EXPECT_EQ(r.timing, Timing::simple(K::Always));
  EXPECT_EQ(r.response, BoolExpr::variable("r"));
  for (int i = 0; i < 50; ++i) {
    Requirement w = instantiate_template({Scope::Kind::OnlyIn, true, K::Within}, vars, rng);
    EXPECT_EQ(w.scope.kind, Scope::Kind::OnlyIn);
    EXPECT_TRUE(w.condition.has_value());
    EXPECT_EQ(w.timing.kind, K::Within);
    EXPECT_GE(w.timing.duration, 1u);
    EXPECT_LE(w.timing.duration, 3u);
  }
  Requirement u = instantiate_template({Scope::Kind::Null, false, K::Until}, vars, rng);
  EXPECT_EQ(*u.timing.stop, BoolExpr::variable("s"));
  EXPECT_THROW(instantiate_template({Scope::Kind::OnlyAfter, false, K::After}, vars, rng),
               UnsupportedError);
}

TEST(Check, Examples) {
  Requirement r = parse_requirement("the c shall always satisfy p");
  Verdict v = check_requirement(r, oracle::bool_trace({"p"}, {{1, 1, 1}}));
  EXPECT_TRUE(v.agree);
  EXPECT_TRUE(v.sem_value);
  EXPECT_TRUE(v.mtl_value);

  Requirement ex = parse_requirement(
      "in flight mode, when horizontal_distance <= 250 & vertical_distance <= 50 "
      "the aircraft shall within 3 seconds satisfy warning_alert");
  std::vector<State> steps(8);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    steps[i].set("flight", true);
    steps[i].set("horizontal_distance", Rational(i == 1 ? 100 : 300));
    steps[i].set("vertical_distance", Rational(20));
    steps[i].set("warning_alert", false);
  }
  Verdict bad = check_requirement(ex, Trace(steps));
  EXPECT_TRUE(bad.agree);
  EXPECT_FALSE(bad.sem_value);
  EXPECT_FALSE(bad.mtl_value);
}

TEST(Shrink, AgreeingVerdictUnchanged) {
  Requirement r = parse_requirement("the c shall always satisfy p");
  Verdict v = check_requirement(r, oracle::bool_trace({"p"}, {{1, 1, 1}}));
  Verdict s = shrink(v);
  EXPECT_EQ(s.trace, v.trace);
  EXPECT_TRUE(s.agree);
}

TEST(Shrink, MutatedCounterexampleGetsSmall) {
  Mutation mut;
  mut.ffim_without_ftp = true;
  VarPool vars;
  std::size_t found = 0;
  for (std::uint64_t trial = 0; trial < 2000 && found < 10; ++trial) {
    Rng rng = case_rng(77, 0, trial);
    TemplateId id{Scope::Kind::Before, trial % 2 == 0, kAllTimings[trial % 10]};
    Requirement r = instantiate_template(id, vars, rng);
    Trace t = gen_trace(Strategy::Edges, 25, vars, rng, EdgeVariant::ModeAtStart);
    Verdict v = check_requirement(r, t, EmptyScopePolicy::Vacuous, mut);
    if (v.agree)
      continue;
    ++found;
    Verdict s = shrink(v, EmptyScopePolicy::Vacuous, mut);
    EXPECT_FALSE(s.agree);
    EXPECT_EQ(s.requirement, v.requirement);
    EXPECT_LE(s.trace.size(), 6u) << unparse_requirement(r);
    EXPECT_EQ(check_requirement(s.requirement, s.trace, EmptyScopePolicy::Vacuous, mut).agree, false);
  }
  EXPECT_GT(found, 0u);
}

TEST(Fuzz, CoverageAndAgreement) {
  Report r = fuzz_all_templates(small_config());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.per_template.size(), 154u);
  EXPECT_EQ(r.total_cases, 154u * 8u);
  auto ids = supported_templates();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_EQ(r.per_template[i].id, ids[i]);
    EXPECT_EQ(r.per_template[i].cases, 8u);
  }
  EXPECT_EQ(r.oracle_failures, 0u);
}

TEST(Fuzz, DeterministicAcrossRunsAndThreads) {
  FuzzConfig a = small_config(6);
  a.seed = 7;
  FuzzConfig b = a;
  b.threads = 3;
  std::string first = fuzz_all_templates(a).json();
  EXPECT_EQ(first, fuzz_all_templates(a).json());
  EXPECT_EQ(first, fuzz_all_templates(b).json());
  a.seed = 8;
  EXPECT_NE(first, fuzz_all_templates(a).json());
}

TEST(Fuzz, LiteralPolicyOnlyDisagreesOnEmptyScopes) {
  FuzzConfig cfg = small_config(20);
  cfg.policy = EmptyScopePolicy::Literal;
  cfg.shrink_per_template = 0;
  Report r = fuzz_all_templates(cfg);
  EXPECT_GT(r.total_disagreements, 0u);
  for (const auto &cx : r.counterexamples)
    EXPECT_TRUE(cx.verdict.scope.empty()) << cx.id.name();
}

TEST(Fuzz, MutationsAreDetected) {
  for (int which = 0; which < 2; ++which) {
    FuzzConfig cfg = small_config(65);
    cfg.max_trace_len = 25;
    cfg.mutation.ffim_without_ftp = which == 0;
    cfg.mutation.eventually_without_guard = which == 1;
    Report r = fuzz_all_templates(cfg);
    EXPECT_FALSE(r.ok());
    ASSERT_FALSE(r.counterexamples.empty());
    std::size_t shrunk = 0;
    for (const auto &cx : r.counterexamples) {
      if (!cx.shrunk)
        continue;
      ++shrunk;
      EXPECT_FALSE(cx.shrunk->agree);
      EXPECT_LE(cx.shrunk->trace.size(), 10u);
    }
    EXPECT_GT(shrunk, 0u);
  }
}

TEST(Fuzz, ReportFormats) {
  FuzzConfig cfg = small_config(2);
  cfg.mutation.ffim_without_ftp = true;
  Report r = fuzz_all_templates(cfg);
  auto doc = nlohmann::json::parse(r.json());
  for (const char *key : {"config", "totals", "findings", "per_template", "counterexamples"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["totals"]["cases"], r.total_cases);
  EXPECT_EQ(doc["per_template"].size(), 154u);
  EXPECT_EQ(doc["per_template"][0]["id"], "null/null/immediately");
  for (const auto &cx : doc["counterexamples"]) {
    EXPECT_NO_THROW(parse_requirement(cx["requirement_text"].get<std::string>()));
    EXPECT_TRUE(cx["trace"].contains("steps"));
    EXPECT_NE(cx["sem"], cx["mtl"]);
  }
  std::string text = r.text();
  EXPECT_NE(text.find("cases: " + std::to_string(r.total_cases) + "\n"), std::string::npos);
  EXPECT_NE(text.find("finding: empty scope"), std::string::npos);
}

TEST(Fuzz, ConfigValidation) {
  FuzzConfig cfg;
  cfg.traces_per_template = 0;
  EXPECT_THROW(fuzz_all_templates(cfg), ArgumentError);
  cfg = FuzzConfig{};
  cfg.max_trace_len = 0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = FuzzConfig{};
  cfg.weights = {0, 0, 0, 0, 0};
  EXPECT_THROW(cfg.validate(), ArgumentError);
}

TEST(BruteForce, MatchesTestOracle) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng = case_rng(4, 4, i);
    Formula f = random_formula(1 + i % 6, {"p", "q"}, rng);
    std::mt19937_64 trng(i);
    Trace t = oracle::random_trace({"p", "q"}, 1 + i % 9, trng);
    for (std::size_t k = 0; k < t.size(); ++k)
      ASSERT_EQ(brute_force_eval_at(f, t, k), oracle::holds(f, t, k)) << format_formula(f);
  }
}
