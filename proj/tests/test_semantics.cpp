#include <gtest/gtest.h>

#include <random>

#include "fretish/error.hpp"
#include "fretish/semantics.hpp"
#include "fretish/trace_io.hpp"
#include "oracle.hpp"

using namespace fretish;

namespace {

using K = Timing::Kind;

BoolExpr var(const char *n) { return BoolExpr::variable(n); }

Trace mode_trace() { return load_trace_file(FRETISH_DATA_DIR "/mode_trace.json"); }

// One Boolean variable true exactly at the listed indices.
Trace signal(const char *name, std::size_t length, std::set<std::size_t> on) {
  std::vector<State> steps(length);
  for (std::size_t i = 0; i < length; ++i)
    steps[i].set(name, on.count(i) > 0);
  return Trace(steps);
}

Timing random_timing(std::mt19937_64 &rng, K kind) {
  Timing t = Timing::simple(kind);
  if (t.has_duration())
    t.duration = 1 + rng() % 3;
  if (t.has_stop())
    t.stop = var("s");
  return t;
}

// Example 1 over flight mode, with the condition true at `trigger` only and
// the alert raised at the listed indices.
Trace flight_warning_trace(std::size_t length, std::size_t trigger, std::set<std::size_t> alert) {
  std::vector<State> steps(length);
  for (std::size_t i = 0; i < length; ++i) {
    steps[i].set("flight", true);
    steps[i].set("horizontal_distance", Rational(i == trigger ? 200 : 400));
    steps[i].set("vertical_distance", Rational(i == trigger ? 10 : 80));
    steps[i].set("warning_alert", alert.count(i) > 0);
  }
  return Trace(steps);
}

const char *kFlightWarning = "in flight mode, when horizontal_distance <= 250 & vertical_distance <= 50 "
                        "the aircraft shall within 3 seconds satisfy warning_alert";

} // namespace

TEST(OliModel, Construction) {
  EXPECT_NO_THROW(Oli({{0, 1}, {3, 3}}));
  EXPECT_THROW(Oli({{0, 1}, {2, 3}}), ArgumentError);
  EXPECT_THROW(Oli({{3, 1}}), ArgumentError);
  EXPECT_THROW(Oli({{4, 5}, {0, 1}}), ArgumentError);
  EXPECT_EQ(Oli::from_bits({true, false, true, true}), Oli({{0, 0}, {2, 3}}));
  EXPECT_EQ(to_string(Oli({{2, 7}, {16, 21}})), "[2,7] [16,21]");
  EXPECT_EQ(to_string(Oli()), "empty");
  EXPECT_TRUE(Oli({{2, 7}}).bounded_by(7));
  EXPECT_FALSE(Oli({{2, 7}}).bounded_by(6));
}

TEST(BoolSem, ModeTrace) {
  Trace rho = mode_trace();
  EXPECT_EQ(rho.last(), 23u);
  EXPECT_EQ(bool_sem(var("mode"), rho), Oli({{2, 7}, {16, 21}}));
  EXPECT_TRUE(bool_sem(var("res"), rho).empty());
}

TEST(BoolSem, Examples) {
  Trace rho = signal("p", 5, {0, 2, 3});
  EXPECT_EQ(bool_sem(var("p"), rho), Oli({{0, 0}, {2, 3}}));
  EXPECT_EQ(bool_sem(BoolExpr::constant(true), rho), Oli({{0, 4}}));
  EXPECT_TRUE(bool_sem(BoolExpr::constant(false), rho).empty());
}

TEST(BoolSem, MatchesPointwiseEvaluation) {
  const std::vector<BoolExpr> exprs = {var("p"), parse_bool_expr("p & !q"), parse_bool_expr("p | q"),
                                       parse_bool_expr("p -> q")};
  for (std::size_t len = 1; len <= 10; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * len)); ++bits) {
      Trace rho = oracle::trace_from_bits({"p", "q"}, len, bits);
      for (const auto &e : exprs) {
        Oli l = bool_sem(e, rho);
        ASSERT_TRUE(oracle::well_formed(l));
        ASSERT_EQ(oracle::members(l, rho.last()), oracle::index_set(oracle::bits_of(e, rho)));
      }
    }
  }
}

TEST(Complement, Examples) {
  EXPECT_EQ(oli_complement(Oli(), 5), Oli({{0, 5}}));
  EXPECT_EQ(oli_complement(Oli({{0, 5}}), 5), Oli());
  EXPECT_EQ(oli_complement(Oli({{2, 7}, {16, 21}}), 23), Oli({{0, 1}, {8, 15}, {22, 23}}));
  EXPECT_THROW(oli_complement(Oli({{2, 7}}), 6), ArgumentError);
}

TEST(Complement, PointwiseAndInvolution) {
  for (std::size_t n = 0; n < 10; ++n)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n + 1)); ++bits) {
      std::vector<bool> v(n + 1);
      for (std::size_t i = 0; i <= n; ++i)
        v[i] = (bits >> i) & 1u;
      Oli l = Oli::from_bits(v);
      Oli c = oli_complement(l, n);
      ASSERT_TRUE(oracle::well_formed(c));
      ASSERT_TRUE(c.bounded_by(n));
      for (std::size_t x = 0; x <= n; ++x)
        ASSERT_NE(l.contains(x), c.contains(x));
      ASSERT_EQ(oli_complement(c, n), l);
    }
}

TEST(ScopeSem, ModeTrace) {
  Trace rho = mode_trace();
  EXPECT_EQ(scope_sem(Scope::global(), rho), Oli({{0, 23}}));
  EXPECT_EQ(scope_sem(Scope::make(Scope::Kind::In, var("mode")), rho), Oli({{2, 7}, {16, 21}}));
  EXPECT_EQ(scope_sem(Scope::make(Scope::Kind::Before, var("mode")), rho), Oli({{0, 1}}));
  EXPECT_EQ(scope_sem(Scope::make(Scope::Kind::After, var("mode")), rho), Oli({{8, 23}}));
  EXPECT_EQ(scope_sem(Scope::make(Scope::Kind::NotIn, var("mode")), rho),
            Oli({{0, 1}, {8, 15}, {22, 23}}));
  EXPECT_EQ(scope_sem(Scope::make(Scope::Kind::OnlyAfter, var("mode")), rho), Oli({{0, 7}}));
  EXPECT_EQ(scope_sem(Scope::make(Scope::Kind::OnlyBefore, var("mode")), rho), Oli({{2, 23}}));
}

TEST(ScopeSem, ModeNeverHolds) {
  Trace rho = signal("m", 6, {});
  auto sem = [&](Scope::Kind k) { return scope_sem(Scope::make(k, var("m")), rho); };
  EXPECT_EQ(sem(Scope::Kind::Before), Oli({{0, 5}}));
  EXPECT_TRUE(sem(Scope::Kind::After).empty());
  EXPECT_TRUE(sem(Scope::Kind::In).empty());
  EXPECT_EQ(sem(Scope::Kind::OnlyAfter), Oli({{0, 5}}));
  EXPECT_TRUE(sem(Scope::Kind::OnlyBefore).empty());
}

TEST(ScopeSem, MatchesOracleOnAllModeSignals) {
  for (std::size_t len = 1; len <= 9; ++len)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      Trace rho = oracle::trace_from_bits({"m"}, len, bits);
      for (auto k : kAllScopes) {
        Scope s = k == Scope::Kind::Null ? Scope::global() : Scope::make(k, var("m"));
        Oli got = scope_sem(s, rho);
        ASSERT_TRUE(oracle::well_formed(got));
        ASSERT_EQ(got.spans(), oracle::scope_intervals(s, rho)) << to_string(k) << " bits=" << bits;
      }
      Oli in = scope_sem(Scope::make(Scope::Kind::In, var("m")), rho);
      Oli notin = scope_sem(Scope::make(Scope::Kind::NotIn, var("m")), rho);
      for (std::size_t x = 0; x < len; ++x)
        ASSERT_NE(in.contains(x), notin.contains(x));
    }
}

TEST(Triggers, Examples) {
  Trace rho = signal("c", 10, {0, 2, 3});
  EXPECT_EQ(triggers(std::nullopt, rho, {3, 9}), (std::set<std::size_t>{3}));
  EXPECT_EQ(triggers(var("c"), rho, {0, 3}), (std::set<std::size_t>{0, 2}));
  EXPECT_EQ(triggers(var("c"), rho, {3, 9}), (std::set<std::size_t>{3}));
  Trace early = signal("c", 10, {0, 1});
  EXPECT_TRUE(triggers(var("c"), early, {5, 9}).empty());
}

TEST(Triggers, MatchesOracle) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 3000; ++i) {
    Trace rho = oracle::random_trace({"c"}, 1 + rng() % 12, rng);
    std::size_t lo = rng() % rho.size();
    std::size_t hi = lo + rng() % (rho.size() - lo);
    ASSERT_EQ(triggers(var("c"), rho, {lo, hi}), oracle::trigger_points(var("c"), rho, {lo, hi}));
  }
}

TEST(Stops, Examples) {
  EXPECT_EQ(stops(var("s"), signal("s", 10, {4, 5, 6}), {0, 9}), (std::set<std::size_t>{4}));
  EXPECT_TRUE(stops(var("s"), signal("s", 10, {}), {0, 9}).empty());
  EXPECT_EQ(stops(var("s"), signal("s", 10, {0, 1, 2, 5}), {1, 9}), (std::set<std::size_t>{1, 5}));
}

TEST(FirstStop, Examples) {
  EXPECT_EQ(first_stop(var("s"), 1, signal("s", 10, {4, 5, 6}), {0, 9}), 4u);
  EXPECT_EQ(first_stop(var("s"), 3, signal("s", 10, {}), {0, 9}), 10u);
  EXPECT_EQ(first_stop(var("s"), 5, signal("s", 10, {0, 1, 2, 5}), {1, 9}), 10u);
  EXPECT_THROW(first_stop(var("s"), 0, signal("s", 10, {}), {1, 9}), ArgumentError);
}

TEST(TimingHolds, NoTriggersIsVacuous) {
  Trace rho = signal("c", 6, {});
  std::vector<State> steps = rho.steps();
  for (auto &s : steps) {
    s.set("r", false);
    s.set("s", true);
  }
  Trace t(steps);
  std::mt19937_64 rng(1);
  for (auto k : kAllTimings)
    EXPECT_TRUE(timing_holds(random_timing(rng, k), var("c"), var("r"), t, {0, 5})) << to_string(k);
}

TEST(TimingHolds, AlwaysExamples) {
  EXPECT_TRUE(timing_holds(Timing::simple(K::Always), std::nullopt, var("r"),
                           signal("r", 4, {0, 1, 2, 3}), {0, 3}));
  EXPECT_FALSE(timing_holds(Timing::simple(K::Always), std::nullopt, var("r"),
                            signal("r", 4, {0, 1, 3}), {0, 3}));
}

TEST(TimingHolds, WithinExamples) {
  Requirement r = parse_requirement(kFlightWarning);
  Span I{0, 9};
  EXPECT_TRUE(timing_holds(r.timing, r.condition, r.response, flight_warning_trace(10, 2, {5}), I));
  EXPECT_FALSE(timing_holds(r.timing, r.condition, r.response, flight_warning_trace(10, 2, {6}), I));
  EXPECT_FALSE(timing_holds(r.timing, r.condition, r.response, flight_warning_trace(10, 2, {}), I));
  // t + d beyond the interval: no obligation.
  EXPECT_TRUE(timing_holds(r.timing, r.condition, r.response, flight_warning_trace(10, 2, {}), {0, 4}));
}

TEST(TimingHolds, MatchesOracle) {
  std::mt19937_64 rng(7);
  for (auto k : kAllTimings)
    for (bool with_cond : {false, true})
      for (int i = 0; i < 1500; ++i) {
        Trace rho = oracle::random_trace({"c", "r", "s"}, 1 + rng() % 12, rng);
        std::size_t lo = rng() % rho.size();
        std::size_t hi = lo + rng() % (rho.size() - lo);
        Timing t = random_timing(rng, k);
        std::optional<BoolExpr> cond;
        if (with_cond)
          cond = rng() % 2 ? var("c") : parse_bool_expr("c | s");
        ASSERT_EQ(timing_holds(t, cond, var("r"), rho, {lo, hi}),
                  oracle::timing_ok(t, cond, var("r"), rho, {lo, hi}))
            << to_string(k) << " I=[" << lo << "," << hi << "]";
      }
}

TEST(TimingHolds, NeverAndAfterExpansions) {
  std::mt19937_64 rng(9);
  BoolExpr r = var("r"), nr = BoolExpr::negate(var("r"));
  for (int i = 0; i < 3000; ++i) {
    Trace rho = oracle::random_trace({"c", "r"}, 1 + rng() % 12, rng);
    std::size_t lo = rng() % rho.size();
    Span I{lo, lo + rng() % (rho.size() - lo)};
    std::optional<BoolExpr> cond;
    if (rng() % 2)
      cond = var("c");
    ASSERT_EQ(timing_holds(Timing::simple(K::Never), cond, r, rho, I),
              timing_holds(Timing::simple(K::Always), cond, nr, rho, I));
    std::size_t d = 1 + rng() % 4;
    ASSERT_EQ(timing_holds(Timing::bounded(K::After, d), cond, r, rho, I),
              timing_holds(Timing::bounded(K::For, d), cond, nr, rho, I) &&
                  timing_holds(Timing::bounded(K::Within, d + 1), cond, r, rho, I));
  }
}

TEST(DualTiming, Table) {
  EXPECT_EQ(dual_timing(Timing::simple(K::Always)), Timing::simple(K::Eventually));
  EXPECT_EQ(dual_timing(Timing::simple(K::Eventually)), Timing::simple(K::Always));
  EXPECT_EQ(dual_timing(Timing::bounded(K::Within, 3)), Timing::bounded(K::For, 3));
  EXPECT_EQ(dual_timing(Timing::bounded(K::For, 2)), Timing::bounded(K::Within, 2));
  EXPECT_EQ(dual_timing(Timing::stopped(K::Before, var("s"))), Timing::stopped(K::Until, var("s")));
  EXPECT_EQ(dual_timing(Timing::stopped(K::Until, var("s"))), Timing::stopped(K::Before, var("s")));
  EXPECT_EQ(dual_timing(Timing::simple(K::Immediately)), Timing::simple(K::Immediately));
  EXPECT_EQ(dual_timing(Timing::simple(K::Next)), Timing::simple(K::Next));
  EXPECT_THROW(dual_timing(Timing::simple(K::Never)), UnsupportedError);
  EXPECT_THROW(dual_timing(Timing::bounded(K::After, 1)), UnsupportedError);
}

TEST(Membership, Examples) {
  Requirement always;
  always.timing = Timing::simple(K::Always);
  always.response = var("p");
  EXPECT_TRUE(fret_sem_member(always, signal("p", 5, {0, 1, 2, 3, 4})));
  EXPECT_FALSE(fret_sem_member(always, signal("p", 5, {0, 1, 3, 4})));

  Requirement ex = parse_requirement(kFlightWarning);
  EXPECT_TRUE(fret_sem_member(ex, flight_warning_trace(12, 3, {5})));
  EXPECT_FALSE(fret_sem_member(ex, flight_warning_trace(12, 3, {8})));
}

TEST(Membership, OnlyInChecksEventuallyNegatedOutsideMode) {
  Requirement r = parse_requirement("only in m mode, the c shall always satisfy p");
  auto trace = [](std::vector<bool> m, std::vector<bool> p) {
    return oracle::bool_trace({"m", "p"}, {m, p});
  };
  // Outside m ([3,5]) p must eventually be false.
  EXPECT_TRUE(fret_sem_member(r, trace({1, 1, 1, 0, 0, 0}, {1, 1, 1, 1, 0, 1})));
  EXPECT_TRUE(fret_sem_member(r, trace({1, 1, 1, 0, 0, 0}, {1, 1, 1, 1, 1, 0})));
  EXPECT_FALSE(fret_sem_member(r, trace({1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1})));
  std::mt19937_64 rng(4);
  Requirement ev = parse_requirement("notin m mode, the c shall eventually satisfy !p");
  for (int i = 0; i < 2000; ++i) {
    Trace rho = oracle::random_trace({"m", "p"}, 1 + rng() % 10, rng);
    ASSERT_EQ(fret_sem_member(r, rho), fret_sem_member(ev, rho));
  }
}

TEST(Membership, EmptyScopePolicies) {
  Requirement r = parse_requirement("in m mode, the c shall always satisfy p");
  Trace rho = oracle::bool_trace({"m", "p"}, {{0, 0, 0}, {0, 0, 0}});
  EXPECT_TRUE(fret_sem_member(r, rho, EmptyScopePolicy::Vacuous));
  EXPECT_FALSE(fret_sem_member(r, rho, EmptyScopePolicy::Literal));
}

TEST(Membership, OnlyScopeWithAfterIsUnsupported) {
  Requirement r = parse_requirement("only after m mode, the c shall after 2 ticks satisfy p");
  EXPECT_THROW(fret_sem_member(r, signal("m", 3, {})), UnsupportedError);
  EXPECT_THROW(effective_obligation(r), UnsupportedError);
}

TEST(Membership, MatchesOracle) {
  std::mt19937_64 rng(31);
  for (auto sk : kAllScopes)
    for (auto tk : kAllTimings)
      for (bool with_cond : {false, true}) {
        Requirement r;
        if (sk != Scope::Kind::Null)
          r.scope = Scope::make(sk, var("m"));
        if (with_cond)
          r.condition = var("c");
        r.response = var("r");
        if (is_only(r.scope) && tk == K::After)
          continue;
        for (int i = 0; i < 150; ++i) {
          r.timing = random_timing(rng, tk);
          Trace rho = oracle::random_trace({"m", "c", "r", "s"}, 1 + rng() % 14, rng);
          ASSERT_EQ(fret_sem_member(r, rho), oracle::member(r, rho)) << unparse_requirement(r);
        }
      }
}

TEST(Explain, ModeTraceDump) {
  Trace rho = mode_trace();
  Requirement r = parse_requirement("in mode mode, when cond the c shall until stop satisfy res");
  const std::string expected = "mode: [2,7] [16,21]\n"
                               "cond: [4,5] [10,10] [18,18]\n"
                               "stop: [6,6] [20,20]\n"
                               "res: empty\n"
                               "scope(in mode): [2,7] [16,21]\n"
                               "checked: until stop satisfy res\n"
                               "triggers(I=[2,7]): {4}\n"
                               "stops(I=[2,7]): {6}\n"
                               "holds(I=[2,7]): false\n"
                               "triggers(I=[16,21]): {18}\n"
                               "stops(I=[16,21]): {20}\n"
                               "holds(I=[16,21]): false\n"
                               "member: false\n";
  EXPECT_EQ(explain_membership(r, rho), expected);
  EXPECT_EQ(explain_membership(r, rho), explain_membership(r, rho));
}

TEST(Explain, EmptyScopeUnderLiteralPolicy) {
  Requirement r = parse_requirement("in m mode, the c shall always satisfy p");
  Trace rho = oracle::bool_trace({"m", "p"}, {{0, 0}, {1, 1}});
  std::string out = explain_membership(r, rho, EmptyScopePolicy::Literal);
  EXPECT_NE(out.find("member: false (empty scope)\n"), std::string::npos) << out;
  EXPECT_NE(explain_membership(r, rho).find("member: true (empty scope)\n"), std::string::npos);
}
