#pragma once

// Target operator registry and expression semantics.
//
// Each accelerator operator is an OperatorSpec: a signature plus a recursive
// defining equation in the IR. The same equation is executable (eval below)
// and translatable to an SMT recursive function definition. Registry
// construction statically checks that every body typechecks and that every
// self-call recurses on a strict suffix slice of the designated sequence
// parameter, which is what makes evaluation terminate.

#include <algorithm>
#include <functional>
#include <set>

#include "liftc/ir.hpp"

namespace liftc {

// Which grid a synthesizable constant parameter draws from. The grids
// themselves live in GrammarConfig and are overridable via config file.
enum class HoleKind { KernelLit, Stride, Scalar };

inline const char *hole_kind_name(HoleKind k) {
  switch (k) {
  case HoleKind::KernelLit: return "kernel-grid";
  case HoleKind::Stride: return "stride-grid";
  case HoleKind::Scalar: return "scalar-grid";
  }
  return "?";
}

struct OperatorSpec {
  std::string name;
  std::vector<std::pair<std::string, IrType>> params;
  IrType return_type = IrType::Int;
  Ir body;
  // (param name, grid kind) for each synthesizable constant parameter.
  std::vector<std::pair<std::string, HoleKind>> holes;
  // Parameters that must be >= 1 at call time (strides).
  std::vector<std::string> positive_params;

  std::optional<IrType> param_type(const std::string &p) const {
    for (const auto &[n, t] : params)
      if (n == p) return t;
    return std::nullopt;
  }
};

class Registry {
public:
  void add(OperatorSpec spec);  // defined after typecheck below

  const OperatorSpec *find(const std::string &name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &ops_[it->second];
  }

  const OperatorSpec &get(const std::string &name) const {
    const OperatorSpec *s = find(name);
    if (!s) fail(ErrKind::UnknownOperator, name);
    return *s;
  }

  // Insertion order; also a valid dependency order since bodies may only
  // call themselves or previously added operators.
  const std::vector<OperatorSpec> &ops() const { return ops_; }

private:
  std::vector<OperatorSpec> ops_;
  std::map<std::string, size_t> index_;
};

// ---------------------------------------------------------------------------
// Typechecking

using TypeCtx = std::map<std::string, IrType>;

inline IrType typecheck(const Ir &e, const TypeCtx &ctx,
                        const Registry *reg = nullptr) {
  auto want = [&](const Ir &sub, IrType t, const char *where) {
    IrType got = typecheck(sub, ctx, reg);
    if (got != t)
      fail(ErrKind::TypeError, std::string(where) + ": expected " +
                                   type_name(t) + ", got " + type_name(got) +
                                   " in " + to_sexpr(sub));
    return got;
  };
  switch (e->tag) {
  case IrTag::IntLit: return IrType::Int;
  case IrTag::BoolLit: return IrType::Bool;
  case IrTag::Var: {
    auto it = ctx.find(e->name);
    if (it == ctx.end()) fail(ErrKind::UnboundVariable, e->name);
    return it->second;
  }
  case IrTag::Add:
  case IrTag::Sub:
  case IrTag::Mul:
    want(e->args[0], IrType::Int, "arithmetic");
    want(e->args[1], IrType::Int, "arithmetic");
    return IrType::Int;
  case IrTag::Lt:
  case IrTag::Le:
    want(e->args[0], IrType::Int, "comparison");
    want(e->args[1], IrType::Int, "comparison");
    return IrType::Bool;
  case IrTag::Eq: {
    IrType a = typecheck(e->args[0], ctx, reg);
    IrType b = typecheck(e->args[1], ctx, reg);
    if (a != b)
      fail(ErrKind::TypeError,
           "equality between " + type_name(a) + " and " + type_name(b) +
               " in " + to_sexpr(e));
    return IrType::Bool;
  }
  case IrTag::And:
  case IrTag::Or:
  case IrTag::Implies:
    want(e->args[0], IrType::Bool, "connective");
    want(e->args[1], IrType::Bool, "connective");
    return IrType::Bool;
  case IrTag::Not:
    want(e->args[0], IrType::Bool, "not");
    return IrType::Bool;
  case IrTag::Ite: {
    want(e->args[0], IrType::Bool, "ite condition");
    IrType t = typecheck(e->args[1], ctx, reg);
    IrType f = typecheck(e->args[2], ctx, reg);
    if (t != f)
      fail(ErrKind::TypeError, "ite branches disagree: " + type_name(t) +
                                   " vs " + type_name(f));
    return t;
  }
  case IrTag::EmptySeq: return seq_of(e->ty);
  case IrTag::SeqLit: {
    for (const auto &a : e->args) want(a, e->ty, "seq literal element");
    return seq_of(e->ty);
  }
  case IrTag::Len: {
    IrType t = typecheck(e->args[0], ctx, reg);
    if (!is_seq(t)) fail(ErrKind::TypeError, "len of non-sequence");
    return IrType::Int;
  }
  case IrTag::Index: {
    IrType t = typecheck(e->args[0], ctx, reg);
    if (!is_seq(t)) fail(ErrKind::TypeError, "index of non-sequence");
    want(e->args[1], IrType::Int, "index position");
    return elem_type(t);
  }
  case IrTag::Append: {
    IrType t = typecheck(e->args[0], ctx, reg);
    if (!is_seq(t)) fail(ErrKind::TypeError, "append to non-sequence");
    want(e->args[1], elem_type(t), "append element");
    return t;
  }
  case IrTag::Prepend: {
    IrType t = typecheck(e->args[1], ctx, reg);
    if (!is_seq(t)) fail(ErrKind::TypeError, "prepend to non-sequence");
    want(e->args[0], elem_type(t), "prepend element");
    return t;
  }
  case IrTag::Slice: {
    IrType t = typecheck(e->args[0], ctx, reg);
    if (!is_seq(t)) fail(ErrKind::TypeError, "slice of non-sequence");
    want(e->args[1], IrType::Int, "slice lo");
    want(e->args[2], IrType::Int, "slice hi");
    return t;
  }
  case IrTag::Call: {
    if (!reg) fail(ErrKind::UnknownOperator, e->name + " (no registry)");
    const OperatorSpec &op = reg->get(e->name);
    if (op.params.size() != e->args.size())
      fail(ErrKind::ArityMismatch,
           e->name + " expects " + std::to_string(op.params.size()) +
               " arguments, got " + std::to_string(e->args.size()));
    for (size_t i = 0; i < e->args.size(); ++i)
      want(e->args[i], op.params[i].second, op.name.c_str());
    return op.return_type;
  }
  }
  fail(ErrKind::TypeError, "unhandled expression");
}

// ---------------------------------------------------------------------------
// Evaluation
//
// Sequence semantics: index(e,i) requires 0 <= i < len(e); slice clamps its
// bounds into [0, len] and yields the empty sequence when lo >= hi; append
// adds at the tail, prepend at the head. Boolean connectives and ite are
// short-circuiting.

namespace detail {
constexpr int kEvalMaxDepth = 100000;
}

inline Value eval(const Ir &e, const Env &env, const Registry &reg,
                  int depth = 0);

inline Value eval_operator(const std::string &name,
                           const std::vector<Value> &args, const Registry &reg,
                           int depth = 0) {
  const OperatorSpec &op = reg.get(name);
  if (args.size() != op.params.size())
    fail(ErrKind::ArityMismatch, name);
  Env local;
  for (size_t i = 0; i < args.size(); ++i) {
    const auto &[pname, ptype] = op.params[i];
    if (value_type(args[i]) != ptype)
      fail(ErrKind::TypeError, name + " argument " + pname);
    local[pname] = args[i];
  }
  for (const auto &p : op.positive_params)
    if (as_int(local.at(p)) <= 0)
      fail(ErrKind::NonPositiveStride, name + " parameter " + p);
  // Matrix arguments must be rectangular for matrix operations.
  for (size_t i = 0; i < args.size(); ++i) {
    if (op.params[i].second == IrType::SeqSeqInt) {
      const MatI &m = as_mat(args[i]);
      for (const auto &row : m)
        if (row.size() != m[0].size())
          fail(ErrKind::NonRectangularMatrix, name);
    }
  }
  return eval(op.body, local, reg, depth + 1);
}

inline Value eval(const Ir &e, const Env &env, const Registry &reg,
                  int depth) {
  if (depth > detail::kEvalMaxDepth)
    fail(ErrKind::UnsupportedConstruct, "evaluation recursion limit exceeded");
  auto ev = [&](const Ir &s) { return eval(s, env, reg, depth + 1); };
  auto evi = [&](const Ir &s) { return as_int(ev(s)); };
  auto evb = [&](const Ir &s) { return as_bool(ev(s)); };
  switch (e->tag) {
  case IrTag::IntLit: return e->ival;
  case IrTag::BoolLit: return e->bval;
  case IrTag::Var: {
    auto it = env.find(e->name);
    if (it == env.end()) fail(ErrKind::UnboundVariable, e->name);
    return it->second;
  }
  case IrTag::Add: return evi(e->args[0]) + evi(e->args[1]);
  case IrTag::Sub: return evi(e->args[0]) - evi(e->args[1]);
  case IrTag::Mul: return evi(e->args[0]) * evi(e->args[1]);
  case IrTag::Lt: return evi(e->args[0]) < evi(e->args[1]);
  case IrTag::Le: return evi(e->args[0]) <= evi(e->args[1]);
  case IrTag::Eq: return value_eq(ev(e->args[0]), ev(e->args[1]));
  case IrTag::And: return evb(e->args[0]) ? evb(e->args[1]) : false;
  case IrTag::Or: return evb(e->args[0]) ? true : evb(e->args[1]);
  case IrTag::Not: return !evb(e->args[0]);
  case IrTag::Implies: return evb(e->args[0]) ? evb(e->args[1]) : true;
  case IrTag::Ite: return evb(e->args[0]) ? ev(e->args[1]) : ev(e->args[2]);
  case IrTag::EmptySeq:
    if (e->ty == IrType::Int) return SeqI{};
    return MatI{};
  case IrTag::SeqLit: {
    if (e->ty == IrType::Int) {
      SeqI s;
      s.reserve(e->args.size());
      for (const auto &a : e->args) s.push_back(as_int(ev(a)));
      return s;
    }
    MatI m;
    for (const auto &a : e->args) m.push_back(as_seq(ev(a)));
    return m;
  }
  case IrTag::Len: {
    Value v = ev(e->args[0]);
    if (auto *s = std::get_if<SeqI>(&v)) return (Int)s->size();
    return (Int)as_mat(v).size();
  }
  case IrTag::Index: {
    Value v = ev(e->args[0]);
    Int i = evi(e->args[1]);
    if (auto *s = std::get_if<SeqI>(&v)) {
      if (i < 0 || i >= (Int)s->size())
        fail(ErrKind::IndexOutOfBounds,
             "index " + std::to_string(i) + " into sequence of length " +
                 std::to_string(s->size()));
      return (*s)[(size_t)i];
    }
    const MatI &m = as_mat(v);
    if (i < 0 || i >= (Int)m.size())
      fail(ErrKind::IndexOutOfBounds,
           "row " + std::to_string(i) + " of matrix with " +
               std::to_string(m.size()) + " rows");
    return m[(size_t)i];
  }
  case IrTag::Append: {
    Value v = ev(e->args[0]);
    if (auto *s = std::get_if<SeqI>(&v)) {
      SeqI out = *s;
      out.push_back(as_int(ev(e->args[1])));
      return out;
    }
    MatI out = as_mat(v);
    out.push_back(as_seq(ev(e->args[1])));
    return out;
  }
  case IrTag::Prepend: {
    Value v = ev(e->args[1]);
    if (auto *s = std::get_if<SeqI>(&v)) {
      SeqI out;
      out.reserve(s->size() + 1);
      out.push_back(as_int(ev(e->args[0])));
      out.insert(out.end(), s->begin(), s->end());
      return out;
    }
    const MatI &m = as_mat(v);
    MatI out;
    out.reserve(m.size() + 1);
    out.push_back(as_seq(ev(e->args[0])));
    out.insert(out.end(), m.begin(), m.end());
    return out;
  }
  case IrTag::Slice: {
    Value v = ev(e->args[0]);
    Int lo = evi(e->args[1]);
    Int hi = evi(e->args[2]);
    auto clampTo = [&](Int n) {
      Int l = std::max<Int>(lo, 0), h = std::min<Int>(hi, n);
      return std::pair<Int, Int>(l, h);
    };
    if (auto *s = std::get_if<SeqI>(&v)) {
      auto [l, h] = clampTo((Int)s->size());
      if (l >= h) return SeqI{};
      return SeqI(s->begin() + l, s->begin() + h);
    }
    const MatI &m = as_mat(v);
    auto [l, h] = clampTo((Int)m.size());
    if (l >= h) return MatI{};
    return MatI(m.begin() + l, m.begin() + h);
  }
  case IrTag::Call: {
    std::vector<Value> args;
    args.reserve(e->args.size());
    for (const auto &a : e->args) args.push_back(ev(a));
    return eval_operator(e->name, args, reg, depth);
  }
  }
  fail(ErrKind::TypeError, "unhandled expression");
}

// ---------------------------------------------------------------------------
// Registry construction checks

namespace detail {

// True when `e` is slice(param, step, len(param)) for the given parameter,
// with a step that is either a positive literal or a declared positive
// parameter of the operator.
inline bool is_strict_suffix_slice(const Ir &e, const std::string &param,
                                   const OperatorSpec &spec) {
  if (e->tag != IrTag::Slice) return false;
  const Ir &s = e->args[0];
  const Ir &lo = e->args[1];
  const Ir &hi = e->args[2];
  if (s->tag != IrTag::Var || s->name != param) return false;
  if (hi->tag != IrTag::Len || hi->args[0]->tag != IrTag::Var ||
      hi->args[0]->name != param)
    return false;
  if (lo->tag == IrTag::IntLit) return lo->ival >= 1;
  if (lo->tag == IrTag::Var)
    return std::find(spec.positive_params.begin(), spec.positive_params.end(),
                     lo->name) != spec.positive_params.end();
  return false;
}

inline void check_self_calls(const Ir &e, const OperatorSpec &spec,
                             size_t dec_pos) {
  if (e->tag == IrTag::Call && e->name == spec.name) {
    if (e->args.size() != spec.params.size())
      fail(ErrKind::ArityMismatch, spec.name + " self-call");
    if (!is_strict_suffix_slice(e->args[dec_pos], spec.params[dec_pos].first,
                                spec))
      fail(ErrKind::UnsupportedConstruct,
           spec.name + ": self-call must recurse on a strict suffix slice of " +
               spec.params[dec_pos].first);
  }
  for (const auto &a : e->args) check_self_calls(a, spec, dec_pos);
}

}  // namespace detail

inline void Registry::add(OperatorSpec spec) {
  if (index_.count(spec.name))
    fail(ErrKind::ConfigError, "duplicate operator " + spec.name);
  for (const auto &[p, k] : spec.holes)
    if (!spec.param_type(p))
      fail(ErrKind::ConfigError, spec.name + ": hole on unknown parameter " + p);
  // The body may call itself and previously registered operators. Register
  // first so the typechecker can resolve self-calls, roll back on failure.
  index_[spec.name] = ops_.size();
  ops_.push_back(spec);
  try {
    TypeCtx ctx;
    for (const auto &[n, t] : spec.params) ctx[n] = t;
    IrType got = typecheck(spec.body, ctx, this);
    if (got != spec.return_type)
      fail(ErrKind::TypeError, spec.name + ": body has type " +
                                   type_name(got) + ", declared " +
                                   type_name(spec.return_type));
    // Structural decrease: recursion on the first sequence parameter.
    std::optional<size_t> dec;
    for (size_t i = 0; i < spec.params.size(); ++i)
      if (is_seq(spec.params[i].second)) {
        dec = i;
        break;
      }
    std::vector<std::string> called;
    call_targets(spec.body, called);
    bool recursive =
        std::find(called.begin(), called.end(), spec.name) != called.end();
    if (recursive) {
      if (!dec)
        fail(ErrKind::UnsupportedConstruct,
             spec.name + ": recursive operator without a sequence parameter");
      detail::check_self_calls(spec.body, spec, *dec);
    }
  } catch (...) {
    ops_.pop_back();
    index_.erase(spec.name);
    throw;
  }
}

// ---------------------------------------------------------------------------
// Built-in operators

inline Registry builtin_registry() {
  using namespace ir;
  Registry reg;

  // dot_product(a, b) = sum over j < min(len a, len b) of a[j]*b[j]
  {
    OperatorSpec op;
    op.name = "dot_product";
    op.params = {{"a", IrType::SeqInt}, {"b", IrType::SeqInt}};
    op.return_type = IrType::Int;
    Ir a = var("a"), b = var("b");
    op.body = ite(
        lor(eq(len(a), int_lit(0)), eq(len(b), int_lit(0))), int_lit(0),
        add(mul(index(a, int_lit(0)), index(b, int_lit(0))),
            call("dot_product", {slice(a, int_lit(1), len(a)),
                                 slice(b, int_lit(1), len(b))})));
    reg.add(op);
  }

  // conv1d(data, kernel, stride): sliding dot products, step `stride`.
  {
    OperatorSpec op;
    op.name = "conv1d";
    op.params = {{"data", IrType::SeqInt},
                 {"kernel", IrType::SeqInt},
                 {"stride", IrType::Int}};
    op.return_type = IrType::SeqInt;
    op.holes = {{"kernel", HoleKind::KernelLit}, {"stride", HoleKind::Stride}};
    op.positive_params = {"stride"};
    Ir d = var("data"), k = var("kernel"), s = var("stride");
    op.body =
        ite(lt(len(d), len(k)), empty_seq(IrType::Int),
            prepend(call("dot_product", {d, k}),
                    call("conv1d", {slice(d, s, len(d)), k, s})));
    reg.add(op);
  }

  // elemwise_add / elemwise_mul: pointwise over the length of the first
  // argument; missing right-hand elements read as zero.
  auto head_or_zero = [](Ir s) {
    return ir::ite(ir::eq(ir::len(s), ir::int_lit(0)), ir::int_lit(0),
                   ir::index(s, ir::int_lit(0)));
  };
  for (bool isMul : {false, true}) {
    OperatorSpec op;
    op.name = isMul ? "elemwise_mul" : "elemwise_add";
    op.params = {{"a", IrType::SeqInt}, {"b", IrType::SeqInt}};
    op.return_type = IrType::SeqInt;
    Ir a = var("a"), b = var("b");
    Ir hd = isMul ? mul(index(a, int_lit(0)), head_or_zero(b))
                  : add(index(a, int_lit(0)), head_or_zero(b));
    op.body = ite(eq(len(a), int_lit(0)), empty_seq(IrType::Int),
                  prepend(hd, call(op.name, {slice(a, int_lit(1), len(a)),
                                             slice(b, int_lit(1), len(b))})));
    reg.add(op);
  }

  // scalar_scale(a, c) = pointwise multiplication by c.
  {
    OperatorSpec op;
    op.name = "scalar_scale";
    op.params = {{"a", IrType::SeqInt}, {"c", IrType::Int}};
    op.return_type = IrType::SeqInt;
    op.holes = {{"c", HoleKind::Scalar}};
    Ir a = var("a"), c = var("c");
    op.body = ite(eq(len(a), int_lit(0)), empty_seq(IrType::Int),
                  prepend(mul(index(a, int_lit(0)), c),
                          call("scalar_scale",
                               {slice(a, int_lit(1), len(a)), c})));
    reg.add(op);
  }

  // vecmat(r, m) = r * m, a row vector times a matrix:
  //   sum over k of r[k] * m[k], accumulated with zero-padded elemwise_add.
  {
    OperatorSpec op;
    op.name = "vecmat";
    op.params = {{"r", IrType::SeqInt}, {"m", IrType::SeqSeqInt}};
    op.return_type = IrType::SeqInt;
    Ir r = var("r"), m = var("m");
    op.body = ite(
        lor(eq(len(r), int_lit(0)), eq(len(m), int_lit(0))),
        empty_seq(IrType::Int),
        call("elemwise_add",
             {call("scalar_scale", {index(m, int_lit(0)), index(r, int_lit(0))}),
              call("vecmat", {slice(r, int_lit(1), len(r)),
                              slice(m, int_lit(1), len(m))})}));
    reg.add(op);
  }

  // matmul(a, b): row i of the result is a[i] * b.
  {
    OperatorSpec op;
    op.name = "matmul";
    op.params = {{"a", IrType::SeqSeqInt}, {"b", IrType::SeqSeqInt}};
    op.return_type = IrType::SeqSeqInt;
    Ir a = var("a"), b = var("b");
    op.body = ite(eq(len(a), int_lit(0)), empty_seq(IrType::SeqInt),
                  prepend(call("vecmat", {index(a, int_lit(0)), b}),
                          call("matmul", {slice(a, int_lit(1), len(a)), b})));
    reg.add(op);
  }

  return reg;
}

// ---------------------------------------------------------------------------
// Declarative operator files
//
//   (operator NAME ((p TYPE) ...) RET
//     [(holes (p kernel-grid|stride-grid|scalar-grid) ...)]
//     [(positive p ...)]
//     BODY)

inline OperatorSpec operator_from_sexpr(const sexpr::Node &n) {
  if (n.is_atom || n.items.size() < 5 || !n.items[0].is_atom ||
      n.items[0].atom != "operator")
    fail(ErrKind::SyntaxError, "expected (operator name params ret ... body)");
  OperatorSpec op;
  if (!n.items[1].is_atom) fail(ErrKind::SyntaxError, "operator name");
  op.name = n.items[1].atom;
  for (const auto &p : n.items[2].items) {
    if (p.is_atom || p.items.size() != 2 || !p.items[0].is_atom)
      fail(ErrKind::SyntaxError, "operator parameter");
    op.params.emplace_back(p.items[0].atom, parse_type(p.items[1]));
  }
  op.return_type = parse_type(n.items[3]);
  size_t i = 4;
  for (; i + 1 < n.items.size(); ++i) {
    const auto &c = n.items[i];
    if (c.is_atom || c.items.empty() || !c.items[0].is_atom) break;
    if (c.items[0].atom == "holes") {
      for (size_t j = 1; j < c.items.size(); ++j) {
        const auto &h = c.items[j];
        if (h.is_atom || h.items.size() != 2)
          fail(ErrKind::SyntaxError, "hole declaration");
        HoleKind k;
        const std::string &kn = h.items[1].atom;
        if (kn == "kernel-grid") k = HoleKind::KernelLit;
        else if (kn == "stride-grid") k = HoleKind::Stride;
        else if (kn == "scalar-grid") k = HoleKind::Scalar;
        else fail(ErrKind::SyntaxError, "unknown hole grid " + kn);
        op.holes.emplace_back(h.items[0].atom, k);
      }
    } else if (c.items[0].atom == "positive") {
      for (size_t j = 1; j < c.items.size(); ++j)
        op.positive_params.push_back(c.items[j].atom);
    } else {
      break;
    }
  }
  if (i + 1 != n.items.size())
    fail(ErrKind::SyntaxError, "operator " + op.name + ": trailing forms");
  op.body = ir_from_sexpr(n.items[i]);
  return op;
}

inline Registry load_operator_specs(const std::string &text) {
  Registry reg;
  sexpr::Reader r(text);
  for (const auto &form : r.read_all()) reg.add(operator_from_sexpr(form));
  return reg;
}

inline std::string render_operator_spec(const OperatorSpec &op) {
  std::ostringstream os;
  os << "(operator " << op.name << " (";
  for (size_t i = 0; i < op.params.size(); ++i)
    os << (i ? " " : "") << "(" << op.params[i].first << " "
       << type_name(op.params[i].second) << ")";
  os << ") " << type_name(op.return_type);
  if (!op.holes.empty()) {
    os << "\n  (holes";
    for (const auto &[p, k] : op.holes)
      os << " (" << p << " " << hole_kind_name(k) << ")";
    os << ")";
  }
  if (!op.positive_params.empty()) {
    os << "\n  (positive";
    for (const auto &p : op.positive_params) os << " " << p;
    os << ")";
  }
  os << "\n  " << to_sexpr(op.body) << ")";
  return os.str();
}

inline std::string render_registry(const Registry &reg) {
  std::ostringstream os;
  for (const auto &op : reg.ops()) os << render_operator_spec(op) << "\n\n";
  return os.str();
}

}  // namespace liftc
