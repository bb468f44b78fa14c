#include <catch2/catch.hpp>

#include <filesystem>

#include "helpers.hpp"

using namespace liftc;

namespace {

// A Found result with pinned stats, for byte-stable report checks.
SynthesisResult make_found(const std::string &kernelFile,
                           const std::string &candText) {
  SynthesisResult r;
  r.loop = testutil::corpus_loop(kernelFile);
  r.status = SynthStatus::Found;
  r.candidate = parse_candidate(candText);
  r.bounded = true;
  r.bound = 8;
  r.stats.enumerated = 100;
  r.stats.oracle_pruned = 90;
  r.stats.smt_queries = 10;
  r.stats.counterexamples = 2;
  r.stats.wall_ms = 0;
  return r;
}

bool c_compiles(const std::string &source) {
  std::string dir = "/tmp/liftc_stub_check";
  std::filesystem::create_directories(dir);
  static int n = 0;
  std::string path = dir + "/stub" + std::to_string(n++) + ".c";
  testutil::write_file(path, source);
  auto r = testutil::run_command("cc -std=c11 -Wall -Werror -c " +
                                 testutil::shell_quote(path) + " -I " +
                                 testutil::shell_quote(LIFTC_INCLUDE_DIR) +
                                 " -o " + testutil::shell_quote(path + ".o") +
                                 " && echo OK");
  return r.out.find("OK") != std::string::npos;
}

}  // namespace

TEST_CASE("window_sum report carries the lifted convolution") {
  Registry reg = builtin_registry();
  SynthesisResult r = make_found(
      "window_sum.mc",
      "(candidate (ps (== result (conv1d data (seq 1 1) 1)))"
      " (inv (and (<= 0 i)"
      "  (== result (conv1d (slice data 0 (+ i 1)) (seq 1 1) 1)))))");
  std::string json = emit_json(r, reg);
  auto j = Json::parse(json);
  CHECK(j["kernel"] == "window_sum");
  CHECK(j["status"] == "found");
  CHECK(j["lifted"]["op"] == "conv1d");
  CHECK(j["lifted"]["args"]["data"] == "data");
  CHECK(j["lifted"]["constants"]["kernel"] == Json::array({1, 1}));
  CHECK(j["lifted"]["constants"]["stride"] == 1);
  CHECK(j["verification"]["mode"] == "bounded");
  CHECK(j["verification"]["bound"] == 8);
  CHECK(j["stats"]["enumerated"] == 100);
  CHECK(j["invariant"] ==
        "(and (<= 0 i) (== result (conv1d (slice data 0 (+ i 1)) "
        "(seq 1 1) 1)))");

  // Key order and bytes are stable.
  CHECK(emit_json(r, reg) == json);
  CHECK(json.find("\"kernel\"") < json.find("\"status\""));
  CHECK(json.find("\"status\"") < json.find("\"lifted\""));
}

TEST_CASE("dotprod report carries two tensor arguments") {
  Registry reg = builtin_registry();
  SynthesisResult r = make_found(
      "dotprod.mc",
      "(candidate (ps (== s (dot_product a b)))"
      " (inv (== s (dot_product (slice a 0 i) (slice b 0 i)))))");
  auto j = Json::parse(emit_json(r, reg));
  CHECK(j["lifted"]["op"] == "dot_product");
  CHECK(j["lifted"]["args"]["a"] == "a");
  CHECK(j["lifted"]["args"]["b"] == "b");
  CHECK(j["lifted"]["constants"] == Json::object());
}

TEST_CASE("emit_json refuses non-found results") {
  Registry reg = builtin_registry();
  SynthesisResult r;
  r.loop = testutil::corpus_loop("window_sum.mc");
  r.status = SynthStatus::NoCandidateFound;
  CHECK_THROWS_AS(emit_json(r, reg), Error);
  try {
    emit_json(r, reg);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrKind::NotFound);
  }
  // The total report still renders, with null lifted program.
  auto j = Json::parse(report_json(r, reg));
  CHECK(j["status"] == "no_candidate");
  CHECK(j["lifted"].is_null());
  CHECK(j["invariant"].is_null());
}

TEST_CASE("window_sum stub compiles and forwards the constants") {
  Registry reg = builtin_registry();
  SynthesisResult r = make_found(
      "window_sum.mc",
      "(candidate (ps (== result (conv1d data (seq 1 1) 1)))"
      " (inv (== result (conv1d (slice data 0 (+ i 1)) (seq 1 1) 1))))");
  std::string stub = emit_c_stub(r, reg);
  CHECK(stub.find("#include \"liftc_accel.h\"") != std::string::npos);
  CHECK(stub.find("void window_sum(const int *data, int data_len, "
                  "int *out, int *out_len)") != std::string::npos);
  CHECK(stub.find("{1, 1}") != std::string::npos);
  CHECK(stub.find("liftc_conv1d(data, data_len, k0, 2, 1, out, out_len)") !=
        std::string::npos);
  CHECK(c_compiles(stub));
}

TEST_CASE("dotprod stub returns a scalar") {
  Registry reg = builtin_registry();
  SynthesisResult r = make_found(
      "dotprod.mc",
      "(candidate (ps (== s (dot_product a b)))"
      " (inv (== s (dot_product (slice a 0 i) (slice b 0 i)))))");
  std::string stub = emit_c_stub(r, reg);
  CHECK(stub.find("int dotprod(const int *a, int a_len, const int *b, "
                  "int b_len)") != std::string::npos);
  CHECK(stub.find("liftc_dot_product(a, a_len, b, b_len)") !=
        std::string::npos);
  CHECK(c_compiles(stub));
}

TEST_CASE("nested compositions chain through temporaries") {
  Registry reg = builtin_registry();
  SynthesisResult r = make_found(
      "window_sum.mc",
      "(candidate"
      " (ps (== result (scalar_scale (conv1d data (seq 1 1) 1) 2)))"
      " (inv true))");
  std::string stub = emit_c_stub(r, reg);
  CHECK(stub.find("int t0[LIFTC_MAX_TENSOR];") != std::string::npos);
  CHECK(stub.find("liftc_scalar_scale(t0, t0_len, 2, out, out_len)") !=
        std::string::npos);
  CHECK(c_compiles(stub));
}

TEST_CASE("matmul stub from a hand-constructed result") {
  Registry reg = builtin_registry();
  SynthesisResult r;
  r.status = SynthStatus::Found;
  r.bounded = false;
  LoopNest loop;
  loop.kernel_name = "matmul_kernel";
  loop.params = {{"a", IrType::SeqSeqInt}, {"b", IrType::SeqSeqInt}};
  loop.state_vars = {{"i", IrType::Int}, {"out", IrType::SeqSeqInt}};
  loop.init = {{"i", ir::int_lit(0)}, {"out", ir::empty_seq(IrType::SeqInt)}};
  loop.cond = ir::lt(ir::var("i"), ir::int_lit(0));
  loop.update = {{"i", ir::add(ir::var("i"), ir::int_lit(1))},
                 {"out", ir::var("out")}};
  loop.output_var = "out";
  loop.output_type = IrType::SeqSeqInt;
  r.loop = loop;
  Candidate c;
  c.ps = parse_ir("(== out (matmul a b))");
  c.inv = ir::bool_lit(true);
  r.candidate = c;

  std::string stub = emit_c_stub(r, reg);
  CHECK(stub.find("liftc_matmul(a, a_rows, a_cols, b, b_rows, b_cols, "
                  "out, out_rows, out_cols)") != std::string::npos);
  CHECK(c_compiles(stub));
}

TEST_CASE("reports for identical results are byte-identical") {
  Registry reg = builtin_registry();
  SynthesisResult a = make_found(
      "scale3.mc",
      "(candidate (ps (== out (scalar_scale data 3)))"
      " (inv (== out (scalar_scale (slice data 0 i) 3))))");
  SynthesisResult b = make_found(
      "scale3.mc",
      "(candidate (ps (== out (scalar_scale data 3)))"
      " (inv (== out (scalar_scale (slice data 0 i) 3))))");
  CHECK(report_json(a, reg) == report_json(b, reg));
  auto j = Json::parse(report_json(a, reg));
  CHECK(j["lifted"]["constants"]["c"] == 3);
}
