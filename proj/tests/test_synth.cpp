#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace liftc;

namespace {

GrammarConfig bounded_config() {
  GrammarConfig cfg;
  cfg.bounded = 8;
  cfg.per_query_timeout_s = 30;
  finalize_config(cfg);
  return cfg;
}

SynthOptions solver_opts() {
  SynthOptions o;
  o.solver_cmd = testutil::minismt_bin();
  return o;
}

}  // namespace

TEST_CASE("synthesize lifts window_sum to the expected convolution") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("window_sum.mc");
  SynthesisResult r = synthesize(loop, bounded_config(), reg, solver_opts());
  REQUIRE(r.status == SynthStatus::Found);
  CHECK(to_sexpr(r.candidate->ps) == "(== result (conv1d data (seq 1 1) 1))");
  CHECK(to_sexpr(r.candidate->inv).find(
            "(== result (conv1d (slice data 0 (+ i 1)) (seq 1 1) 1))") !=
        std::string::npos);
  CHECK(r.bounded);
  CHECK(r.bound == 8);

  // Learned counterexamples pruned later candidates without solver calls.
  CHECK(r.stats.enumerated > 0);
  CHECK(r.stats.smt_queries <= r.stats.enumerated - r.stats.oracle_pruned);
  CHECK(r.stats.counterexamples >= 1);
}

TEST_CASE("synthesize lifts dotprod to dot_product") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("dotprod.mc");
  SynthesisResult r = synthesize(loop, bounded_config(), reg, solver_opts());
  REQUIRE(r.status == SynthStatus::Found);
  CHECK(to_sexpr(r.candidate->ps) == "(== s (dot_product a b))");
  CHECK(to_sexpr(r.candidate->inv) ==
        "(== s (dot_product (slice a 0 i) (slice b 0 i)))");
}

TEST_CASE("found candidates agree with the interpreter everywhere tested",
          "[property]") {
  Registry reg = builtin_registry();
  SourceAST ast = parse_source(testutil::corpus_text("window_sum.mc"));
  LoopNest loop = analyze(ast);
  SynthesisResult r = synthesize(loop, bounded_config(), reg, solver_opts());
  REQUIRE(r.status == SynthStatus::Found);
  for (const auto &env : testutil::random_envs(loop, 100, 12, -10, 10, 77)) {
    CHECK(value_eq(run_source(ast, env), testutil::eval_lifted(r, env, reg)));
  }
}

TEST_CASE("budget zero enumerates nothing") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("window_sum.mc");
  GrammarConfig cfg = bounded_config();
  cfg.max_candidates = 0;
  SynthesisResult r = synthesize(loop, cfg, reg, solver_opts());
  CHECK(r.status == SynthStatus::NoCandidateFound);
  CHECK(r.stats.enumerated == 0);
  CHECK(r.stats.smt_queries == 0);
}

TEST_CASE("adjacent products has no candidate in the grammar") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("adjprod.mc");
  GrammarConfig cfg = bounded_config();
  cfg.max_candidates = 2000;  // enough to cover the single-parameter shapes
  SynthesisResult r = synthesize(loop, cfg, reg, solver_opts());
  CHECK(r.status == SynthStatus::NoCandidateFound);
}

TEST_CASE("synthesis is deterministic run to run") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("dotprod.mc");
  SynthesisResult a = synthesize(loop, bounded_config(), reg, solver_opts());
  SynthesisResult b = synthesize(loop, bounded_config(), reg, solver_opts());
  REQUIRE(a.status == SynthStatus::Found);
  REQUIRE(b.status == SynthStatus::Found);
  CHECK(a.candidate->meta.candidate_index == b.candidate->meta.candidate_index);
  CHECK(a.stats.enumerated == b.stats.enumerated);
  CHECK(a.stats.oracle_pruned == b.stats.oracle_pruned);
  CHECK(a.stats.smt_queries == b.stats.smt_queries);
  CHECK(a.stats.counterexamples == b.stats.counterexamples);
}

TEST_CASE("the empty loop lifts to a constant empty program") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("emptyloop.mc");
  SynthesisResult r = synthesize(loop, bounded_config(), reg, solver_opts());
  REQUIRE(r.status == SynthStatus::Found);
  // First verified candidate in the deterministic order: a convolution of
  // constants whose kernel outruns its data, i.e. always empty.
  CHECK(to_sexpr(r.candidate->ps) ==
        "(== out (conv1d (seq -2) (seq -2 -2) 1))");
  for (const auto &env : testutil::random_envs(loop, 50, 8, -10, 10, 3)) {
    CHECK(as_seq(testutil::eval_lifted(r, env, reg)) == SeqI{});
  }
}

TEST_CASE("total timeout reports Timeout") {
  Registry reg = builtin_registry();
  LoopNest loop = testutil::corpus_loop("adjprod.mc");
  GrammarConfig cfg = bounded_config();
  cfg.total_timeout_s = 0.0;
  SynthesisResult r = synthesize(loop, cfg, reg, solver_opts());
  CHECK(r.status == SynthStatus::Timeout);
}
