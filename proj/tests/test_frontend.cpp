#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace liftc;

TEST_CASE("parse window_sum") {
  SourceAST ast = parse_source(testutil::corpus_text("window_sum.mc"));
  CHECK(ast.name == "window_sum");
  REQUIRE(ast.params.size() == 1);
  CHECK(ast.params[0].first == "data");
  CHECK(ast.params[0].second == SrcType::ListT);
  CHECK(ast.return_type == SrcType::ListT);
  REQUIRE(ast.body.size() == 3);
  CHECK(ast.body[0]->kind == SrcStmt::Let);
  CHECK(ast.body[1]->kind == SrcStmt::For);
  CHECK(ast.body[1]->body.size() == 1);
  CHECK(ast.body[1]->body[0]->kind == SrcStmt::Push);
  CHECK(ast.body[2]->kind == SrcStmt::Return);
}

TEST_CASE("parse loop-free function") {
  SourceAST ast = parse_source("fn id(x: int) -> int { return x; }");
  CHECK(ast.name == "id");
  CHECK(ast.body.size() == 1);
  CHECK_THROWS_AS(analyze(ast), Error);
  try {
    analyze(ast);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrKind::NoLoop);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_source("fn f( {");
    FAIL("expected a syntax error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrKind::SyntaxError);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("shape restrictions are rejected") {
  SECTION("nested loops") {
    try {
      parse_source("fn f(a: list<int>) -> int { let s: int = 0;"
                   " for i in 0 .. len(a) { for j in 0 .. 1 { s = s + 1; } }"
                   " return s; }");
      FAIL("expected rejection");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrKind::UnsupportedConstruct);
    }
  }
  SECTION("two sequential loops") {
    CHECK_THROWS_AS(
        parse_source("fn f(a: list<int>) -> int { let s: int = 0;"
                     " for i in 0 .. 1 { s = s + 1; }"
                     " for j in 0 .. 1 { s = s + 1; } return s; }"),
        Error);
  }
  SECTION("shadowing") {
    CHECK_THROWS_AS(
        parse_source("fn f(a: list<int>) -> int { let a: int = 0;"
                     " for i in 0 .. 1 { a = a + 1; } return a; }"),
        Error);
  }
  SECTION("use before declaration") {
    CHECK_THROWS_AS(parse_source("fn f(a: list<int>) -> int { let s: int = t;"
                                 " for i in 0 .. 1 { s = s + 1; } return s; }"),
                    Error);
  }
  SECTION("mutating a parameter") {
    try {
      parse_source("fn f(a: list<int>, n: int) -> int { let s: int = 0;"
                   " for i in 0 .. 1 { n = n + 1; } return s; }");
      FAIL("expected rejection");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrKind::UnsupportedConstruct);
    }
  }
  SECTION("push on an int") {
    CHECK_THROWS_AS(parse_source("fn f(a: list<int>) -> int { let s: int = 0;"
                                 " for i in 0 .. 1 { s.push(1); } return s; }"),
                    Error);
  }
  SECTION("comparisons are not values") {
    CHECK_THROWS_AS(parse_source("fn f(a: list<int>) -> int {"
                                 " let s: int = 1 < 2;"
                                 " for i in 0 .. 1 { s = s + 1; }"
                                 " return s; }"),
                    Error);
  }
}

TEST_CASE("analyze window_sum yields the expected symbolic loop") {
  LoopNest loop = testutil::corpus_loop("window_sum.mc");
  CHECK(loop.kernel_name == "window_sum");
  REQUIRE(loop.state_vars.size() == 2);
  CHECK(loop.counter() == "i");
  CHECK(loop.state_vars[1].first == "result");
  CHECK(to_sexpr(loop.init.at("i")) == "0");
  CHECK(to_sexpr(loop.init.at("result")) == "(empty-seq Int)");
  CHECK(to_sexpr(loop.cond) == "(< i (- (len data) 1))");
  CHECK(to_sexpr(loop.update.at("i")) == "(+ i 1)");
  CHECK(to_sexpr(loop.update.at("result")) ==
        "(append result (+ (index data i) (index data (+ i 1))))");
  CHECK(loop.output_var == "result");
  CHECK(loop.output_type == IrType::SeqInt);
}

TEST_CASE("analyze dotprod yields a scalar accumulator") {
  LoopNest loop = testutil::corpus_loop("dotprod.mc");
  CHECK(loop.output_type == IrType::Int);
  CHECK(loop.output_var == "s");
  CHECK(to_sexpr(loop.update.at("s")) ==
        "(+ s (* (index a i) (index b i)))");
}

TEST_CASE("analyze wwindow composes in-body counter updates") {
  LoopNest loop = testutil::corpus_loop("wwindow.mc");
  // Body does i = i + 1, then the loop adds its own increment.
  CHECK(to_sexpr(loop.update.at("i")) == "(+ (+ i 1) 1)");
  CHECK(to_sexpr(loop.cond) == "(< i (- (len data) 2))");
}

namespace {
// Structural equality via the canonical rendering.
bool loops_equal(const LoopNest &a, const LoopNest &b) {
  if (a.kernel_name != b.kernel_name || a.output_var != b.output_var)
    return false;
  if (to_sexpr(a.cond) != to_sexpr(b.cond)) return false;
  for (const auto &[n, t] : a.state_vars) {
    if (to_sexpr(a.init.at(n)) != to_sexpr(b.init.at(n))) return false;
    if (to_sexpr(a.update.at(n)) != to_sexpr(b.update.at(n))) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("analyze is deterministic") {
  SourceAST ast = parse_source(testutil::corpus_text("window_sum.mc"));
  LoopNest a = analyze(ast), b = analyze(ast);
  CHECK(loops_equal(a, b));
}

TEST_CASE("every loop-nest symbol resolves to a param or state var") {
  Registry reg = builtin_registry();
  for (const char *k : {"window_sum.mc", "dotprod.mc", "vecadd.mc",
                        "scale3.mc", "wwindow.mc", "adjprod.mc",
                        "emptyloop.mc"}) {
    LoopNest loop = testutil::corpus_loop(k);
    TypeCtx ctx = loop.type_ctx();
    std::vector<std::string> fv;
    free_vars(loop.cond, fv);
    for (const auto &[n, e] : loop.update) free_vars(e, fv);
    for (const auto &v : fv) CHECK(ctx.count(v) == 1);
    // init must be closed over parameters alone
    std::vector<std::string> iv;
    for (const auto &[n, e] : loop.init) free_vars(e, iv);
    for (const auto &v : iv)
      CHECK(std::any_of(loop.params.begin(), loop.params.end(),
                        [&](const auto &p) { return p.first == v; }));
  }
}

TEST_CASE("round-trip faithfulness: interpreter vs loop nest", "[property]") {
  Registry reg = builtin_registry();
  for (const char *k : {"window_sum.mc", "dotprod.mc", "vecadd.mc",
                        "scale3.mc", "wwindow.mc", "adjprod.mc",
                        "emptyloop.mc"}) {
    SourceAST ast = parse_source(testutil::corpus_text(std::string(k)));
    LoopNest loop = analyze(ast);
    auto envs = testutil::random_envs(loop, 120, 12, -10, 10, 1234);
    for (const auto &env : envs) {
      Value direct = run_source(ast, env);
      LoopRun run = run_loop(loop, env, reg);
      INFO(k);
      CHECK(value_eq(direct, run.output));
    }
  }
}
