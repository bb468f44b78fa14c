#include <catch2/catch.hpp>

#include "helpers.hpp"

using namespace liftc;

namespace {

// Independent oracle: sliding-window convolution by direct enumeration.
SeqI conv_brute(const SeqI &data, const SeqI &kernel, Int stride) {
  SeqI out;
  if (kernel.empty()) return out;
  for (size_t pos = 0; pos + kernel.size() <= data.size();
       pos += (size_t)stride) {
    Int acc = 0;
    for (size_t j = 0; j < kernel.size(); ++j)
      acc += data[pos + j] * kernel[j];
    out.push_back(acc);
  }
  return out;
}

Int dot_brute(const SeqI &a, const SeqI &b) {
  Int acc = 0;
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) acc += a[i] * b[i];
  return acc;
}

MatI matmul_brute(const MatI &a, const MatI &b) {
  MatI out;
  for (const auto &row : a) {
    SeqI r(b.empty() ? 0 : b[0].size(), 0);
    for (size_t k = 0; k < row.size() && k < b.size(); ++k)
      for (size_t j = 0; j < b[k].size(); ++j) r[j] += row[k] * b[k][j];
    out.push_back(std::move(r));
  }
  return out;
}

Value op(const Registry &reg, const std::string &name,
         std::vector<Value> args) {
  return eval_operator(name, args, reg);
}

}  // namespace

TEST_CASE("conv1d matches the sliding-window oracle on the pinned cases") {
  Registry reg = builtin_registry();
  CHECK(as_seq(op(reg, "conv1d", {SeqI{1, 2, 3, 4}, SeqI{1, 1}, (Int)1})) ==
        SeqI{3, 5, 7});
  CHECK(conv_brute({1, 2, 3, 4}, {1, 1}, 1) == SeqI{3, 5, 7});

  CHECK(as_seq(op(reg, "conv1d", {SeqI{5}, SeqI{1, 1}, (Int)1})) == SeqI{});
  CHECK(as_seq(op(reg, "conv1d", {SeqI{}, SeqI{1, 1}, (Int)1})) == SeqI{});

  CHECK(as_seq(op(reg, "conv1d",
                  {SeqI{1, 2, 3, 4, 5}, SeqI{1, 0, -1}, (Int)2})) ==
        SeqI{-2, -2});
  CHECK(conv_brute({1, 2, 3, 4, 5}, {1, 0, -1}, 2) == SeqI{-2, -2});
}

TEST_CASE("dot product and elementwise operators") {
  Registry reg = builtin_registry();
  CHECK(as_int(op(reg, "dot_product", {SeqI{1, 2}, SeqI{3, 4}})) == 11);
  CHECK(as_int(op(reg, "dot_product", {SeqI{}, SeqI{3, 4}})) == 0);
  CHECK(as_seq(op(reg, "elemwise_add", {SeqI{0, 0}, SeqI{7, -3}})) ==
        SeqI{7, -3});
  CHECK(as_seq(op(reg, "elemwise_mul", {SeqI{2, 3}, SeqI{4, 5}})) ==
        SeqI{8, 15});
  CHECK(as_seq(op(reg, "scalar_scale", {SeqI{1, -2, 0}, (Int)3})) ==
        SeqI{3, -6, 0});
  // Elementwise operators follow the left argument's length; missing right
  // elements read as zero.
  CHECK(as_seq(op(reg, "elemwise_add", {SeqI{1, 2, 3}, SeqI{10}})) ==
        SeqI{11, 2, 3});
  CHECK(as_seq(op(reg, "elemwise_add", {SeqI{1}, SeqI{10, 20}})) == SeqI{11});
}

TEST_CASE("matmul against a brute-force oracle") {
  Registry reg = builtin_registry();
  MatI I2{{1, 0}, {0, 1}};
  MatI m{{3, -1}, {2, 5}};
  CHECK(as_mat(op(reg, "matmul", {I2, m})) == m);

  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Int n = rng.range(0, 4), k = rng.range(0, 4), mcols = rng.range(0, 4);
    MatI a, b;
    for (Int i = 0; i < n; ++i) {
      SeqI row;
      for (Int j = 0; j < k; ++j) row.push_back(rng.range(-5, 5));
      a.push_back(row);
    }
    for (Int i = 0; i < k; ++i) {
      SeqI row;
      for (Int j = 0; j < mcols; ++j) row.push_back(rng.range(-5, 5));
      b.push_back(row);
    }
    MatI expect = matmul_brute(a, b);
    MatI got = as_mat(op(reg, "matmul", {a, b}));
    CHECK(got == expect);
  }
}

TEST_CASE("operator error paths") {
  Registry reg = builtin_registry();
  CHECK_THROWS_AS(op(reg, "conv1d", {SeqI{1, 2}, SeqI{1, 1}, (Int)0}), Error);
  try {
    op(reg, "conv1d", {SeqI{1, 2}, SeqI{1, 1}, (Int)0});
  } catch (const Error &e) {
    CHECK(e.kind() == ErrKind::NonPositiveStride);
  }
  CHECK_THROWS_AS(op(reg, "nope", {}), Error);
  CHECK_THROWS_AS(op(reg, "dot_product", {SeqI{1}}), Error);
  CHECK_THROWS_AS(op(reg, "matmul", {MatI{{1, 2}, {3}}, MatI{}}), Error);
  try {
    op(reg, "matmul", {MatI{{1, 2}, {3}}, MatI{}});
  } catch (const Error &e) {
    CHECK(e.kind() == ErrKind::NonRectangularMatrix);
  }
}

TEST_CASE("conv1d length law, exhaustive", "[property]") {
  Registry reg = builtin_registry();
  Rng rng(5);
  for (Int n = 0; n <= 10; ++n) {
    for (Int k = 1; k <= 3; ++k) {
      for (Int s = 1; s <= 2; ++s) {
        SeqI data, kernel;
        for (Int i = 0; i < n; ++i) data.push_back(rng.range(-10, 10));
        for (Int i = 0; i < k; ++i) kernel.push_back(rng.range(-2, 2));
        SeqI out = as_seq(op(reg, "conv1d", {data, kernel, s}));
        Int expect = n < k ? 0 : (n - k) / s + 1;
        INFO("n=" << n << " k=" << k << " s=" << s);
        CHECK((Int)out.size() == expect);
        CHECK(out == conv_brute(data, kernel, s));
      }
    }
  }
}

TEST_CASE("conv1d with kernel [1] and stride 1 is the identity",
          "[property]") {
  Registry reg = builtin_registry();
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Int n = rng.range(0, 12);
    SeqI d;
    for (Int i = 0; i < n; ++i) d.push_back(rng.range(-10, 10));
    CHECK(as_seq(op(reg, "conv1d", {d, SeqI{1}, (Int)1})) == d);
  }
}

TEST_CASE("dot_product is symmetric", "[property]") {
  Registry reg = builtin_registry();
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Int n = rng.range(0, 10), m = rng.range(0, 10);
    SeqI a, b;
    for (Int i = 0; i < n; ++i) a.push_back(rng.range(-10, 10));
    for (Int i = 0; i < m; ++i) b.push_back(rng.range(-10, 10));
    Int ab = as_int(op(reg, "dot_product", {a, b}));
    CHECK(ab == as_int(op(reg, "dot_product", {b, a})));
    CHECK(ab == dot_brute(a, b));
  }
}

TEST_CASE("registry static checks") {
  Registry reg = builtin_registry();
  // All bodies typecheck at construction; a malformed operator is rejected.
  OperatorSpec bad;
  bad.name = "bad_loop";
  bad.params = {{"a", IrType::SeqInt}};
  bad.return_type = IrType::Int;
  bad.body = parse_ir("(ite (== (len a) 0) 0 (bad_loop a))");
  CHECK_THROWS_AS(reg.add(bad), Error);

  OperatorSpec ok;
  ok.name = "good_loop";
  ok.params = {{"a", IrType::SeqInt}};
  ok.return_type = IrType::Int;
  ok.body = parse_ir(
      "(ite (== (len a) 0) 0 (+ 1 (good_loop (slice a 1 (len a)))))");
  CHECK_NOTHROW(reg.add(ok));
}

TEST_CASE("operator spec files round-trip through the loader") {
  Registry reg = builtin_registry();
  std::string rendered = render_registry(reg);
  Registry loaded = load_operator_specs(rendered);
  REQUIRE(loaded.ops().size() == reg.ops().size());
  CHECK(as_seq(op(loaded, "conv1d", {SeqI{1, 2, 3, 4}, SeqI{1, 1}, (Int)1})) ==
        SeqI{3, 5, 7});
  CHECK(as_int(op(loaded, "dot_product", {SeqI{1, 2}, SeqI{3, 4}})) == 11);
  // Hole and positivity clauses survive the round trip.
  const OperatorSpec &conv = loaded.get("conv1d");
  REQUIRE(conv.holes.size() == 2);
  CHECK(conv.holes[0].first == "kernel");
  CHECK(conv.positive_params == std::vector<std::string>{"stride"});
  // The shipped spec file stays in sync with the builtins.
  std::string shipped =
      testutil::read_file(std::string(LIFTC_SPECS_DIR) + "/operators.sexp");
  CHECK(shipped == rendered);
}
