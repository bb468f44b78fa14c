#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace liftc;

namespace {

GrammarConfig test_config() {
  GrammarConfig cfg;
  finalize_config(cfg);
  return cfg;
}

// Drains up to `n` candidates.
std::vector<Candidate> first_n(const LoopNest &loop, const GrammarConfig &cfg,
                               const Registry &reg, size_t n) {
  CandidateStream stream(loop, cfg, reg);
  std::vector<Candidate> out;
  while (out.size() < n) {
    auto c = stream.next();
    if (!c) break;
    out.push_back(*c);
  }
  return out;
}

std::optional<long long> find_candidate(const LoopNest &loop,
                                        const GrammarConfig &cfg,
                                        const Registry &reg,
                                        const std::string &ps,
                                        const std::string &inv,
                                        size_t cap = 30000) {
  CandidateStream stream(loop, cfg, reg);
  for (size_t k = 0; k < cap; ++k) {
    auto c = stream.next();
    if (!c) break;
    if (to_sexpr(c->ps) == ps && to_sexpr(c->inv) == inv)
      return c->meta.candidate_index;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("stream starts with the simplest parameter-only candidates") {
  Registry reg = builtin_registry();
  GrammarConfig cfg = test_config();
  LoopNest loop = testutil::corpus_loop("window_sum.mc");
  auto head = first_n(loop, cfg, reg, 2);
  REQUIRE(head.size() == 2);
  CHECK(to_sexpr(head[0].ps) == "(== result (conv1d data (seq -2) 1))");
  CHECK(to_sexpr(head[0].inv) ==
        "(== result (conv1d (slice data 0 i) (seq -2) 1))");
  CHECK(head[0].meta.candidate_index == 0);
  // The second candidate differs only in the bound conjunct.
  CHECK(to_sexpr(head[1].ps) == to_sexpr(head[0].ps));
  CHECK(to_sexpr(head[1].inv) ==
        "(and (<= 0 i) (== result (conv1d (slice data 0 i) (seq -2) 1)))");
}

TEST_CASE("stream contains the window_sum target candidate") {
  Registry reg = builtin_registry();
  GrammarConfig cfg = test_config();
  LoopNest loop = testutil::corpus_loop("window_sum.mc");
  auto idx = find_candidate(
      loop, cfg, reg, "(== result (conv1d data (seq 1 1) 1))",
      "(and (<= 0 i) (== result (conv1d (slice data 0 (+ i 1)) (seq 1 1) 1)))");
  REQUIRE(idx.has_value());
  CHECK(*idx < 5000);
}

TEST_CASE("stream contains the dotprod target candidate") {
  Registry reg = builtin_registry();
  GrammarConfig cfg = test_config();
  LoopNest loop = testutil::corpus_loop("dotprod.mc");
  auto idx = find_candidate(
      loop, cfg, reg, "(== s (dot_product a b))",
      "(== s (dot_product (slice a 0 i) (slice b 0 i)))");
  REQUIRE(idx.has_value());
  CHECK(*idx < 200);
}

TEST_CASE("stream order is deterministic") {
  Registry reg = builtin_registry();
  GrammarConfig cfg = test_config();
  LoopNest loop = testutil::corpus_loop("window_sum.mc");
  auto a = first_n(loop, cfg, reg, 500);
  auto b = first_n(loop, cfg, reg, 500);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(to_sexpr(a[i].ps) == to_sexpr(b[i].ps));
    CHECK(to_sexpr(a[i].inv) == to_sexpr(b[i].inv));
    CHECK(a[i].meta.candidate_index == b[i].meta.candidate_index);
  }
}

TEST_CASE("candidates are well-formed for their loop") {
  Registry reg = builtin_registry();
  GrammarConfig cfg = test_config();
  for (const char *k : {"window_sum.mc", "dotprod.mc", "vecadd.mc"}) {
    LoopNest loop = testutil::corpus_loop(k);
    TypeCtx ctx = loop.type_ctx();
    for (const auto &c : first_n(loop, cfg, reg, 200)) {
      CHECK(typecheck(c.ps, ctx, &reg) == IrType::Bool);
      CHECK(typecheck(c.inv, ctx, &reg) == IrType::Bool);
    }
  }
}

TEST_CASE("counter-link conjunct appears for strided loops") {
  Registry reg = builtin_registry();
  GrammarConfig cfg = test_config();
  LoopNest loop = testutil::corpus_loop("wwindow.mc");
  auto sets = conjunct_sets(loop, cfg);
  bool hasLink = false;
  for (const auto &set : sets)
    for (const auto &c : set)
      hasLink = hasLink || to_sexpr(c) == "(== i (* 2 (len out)))";
  CHECK(hasLink);
}

TEST_CASE("oracle accepts the target and rejects near misses") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("window_sum.mc");

  Candidate golden = parse_candidate(
      "(candidate"
      " (ps (== result (conv1d data (seq 1 1) 1)))"
      " (inv (and (<= 0 i)"
      "  (== result (conv1d (slice data 0 (+ i 1)) (seq 1 1) 1)))))");
  Candidate k12 = parse_candidate(testutil::read_file(
      testutil::corpus_path("candidates/window_sum_k12.sexp")));

  SECTION("golden passes on the documented trace") {
    std::vector<Env> tests{{{"data", SeqI{1, 2, 3, 4}}}};
    // Loop-head states: (0, []), (1, [3]), (2, [3,5]), final output [3,5,7].
    LoopRun run = run_loop(loop, tests[0], reg);
    REQUIRE(run.trace.size() == 4);
    CHECK(as_int(run.trace[1].at("i")) == 1);
    CHECK(as_seq(run.trace[1].at("result")) == SeqI{3});
    CHECK(as_seq(run.trace[2].at("result")) == SeqI{3, 5});
    CHECK(as_seq(run.output) == SeqI{3, 5, 7});
    CHECK(oracle_prefilter(loop, golden, tests, reg).pass);
  }

  SECTION("kernel [1,2] fails with the offending input as witness") {
    std::vector<Env> tests{{{"data", SeqI{1, 1, 1}}}};
    OracleResult r = oracle_prefilter(loop, k12, tests, reg);
    CHECK_FALSE(r.pass);
    CHECK(as_seq(r.witness.at("data")) == SeqI{1, 1, 1});

    // Independent re-check: the witness genuinely falsifies Inv on some
    // loop-head state or PS on the final state.
    LoopRun run = run_loop(loop, r.witness, reg);
    bool falsified = false;
    Env env = r.witness;
    for (const Env &state : run.trace) {
      for (const auto &[n, v] : state) env[n] = v;
      falsified = falsified || !as_bool(eval(k12.inv, env, reg));
    }
    falsified = falsified || !as_bool(eval(k12.ps, env, reg));
    CHECK(falsified);
  }

  SECTION("empty test set passes vacuously") {
    CHECK(oracle_prefilter(loop, k12, {}, reg).pass);
  }

  SECTION("golden passes the full default suite") {
    GrammarConfig cfg = test_config();
    auto tests = make_test_suite(loop, cfg);
    CHECK(oracle_prefilter(loop, golden, tests, reg).pass);
    CHECK_FALSE(oracle_prefilter(loop, k12, tests, reg).pass);
  }
}

TEST_CASE("test suite generation is seeded and deterministic") {
  GrammarConfig cfg = test_config();
  LoopNest loop = testutil::corpus_loop("dotprod.mc");
  auto s1 = make_test_suite(loop, cfg);
  auto s2 = make_test_suite(loop, cfg);
  REQUIRE(s1.size() == cfg.test_lengths.size());
  CHECK(s1 == s2);
  // Paired sequence parameters share a length within each environment.
  for (size_t i = 0; i < s1.size(); ++i) {
    CHECK((Int)as_seq(s1[i].at("a")).size() == cfg.test_lengths[i]);
    CHECK(as_seq(s1[i].at("a")).size() == as_seq(s1[i].at("b")).size());
  }
  GrammarConfig other = cfg;
  other.test_seed = 43;
  CHECK(make_test_suite(loop, other) != s1);
}
