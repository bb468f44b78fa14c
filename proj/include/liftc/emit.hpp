#pragma once

// Report and target-code emission for synthesis results.
//
// The JSON report is the primary artifact and is byte-deterministic given a
// fixed configuration and solver (the wall_ms stat is honest timing and the
// only field that varies between identical runs). The C stub forwards the
// kernel's parameters to the accelerator entry points declared in
// liftc_accel.h and is checked compile-only.

#include <json.hpp>

#include "liftc/synth.hpp"

namespace liftc {

using Json = nlohmann::ordered_json;

struct LiftedCall {
  struct Arg {
    enum Kind { ParamRef, IntConst, SeqConst, Nested } kind = ParamRef;
    std::string param;  // operator parameter name
    bool is_hole = false;
    IrType type = IrType::Int;
    std::string ref;  // ParamRef
    Int ival = 0;     // IntConst
    SeqI sval;        // SeqConst
    std::shared_ptr<LiftedCall> nested;
  };
  std::string op;
  std::vector<Arg> args;
};

namespace detail {

inline LiftedCall lifted_from_ir(const Ir &t, const Registry &reg) {
  if (t->tag != IrTag::Call)
    fail(ErrKind::NotFound, "program summary is not an operator call");
  const OperatorSpec &op = reg.get(t->name);
  LiftedCall node;
  node.op = t->name;
  for (size_t i = 0; i < t->args.size(); ++i) {
    LiftedCall::Arg arg;
    arg.param = op.params[i].first;
    arg.type = op.params[i].second;
    for (const auto &[h, k] : op.holes) arg.is_hole = arg.is_hole || h == arg.param;
    const Ir &a = t->args[i];
    switch (a->tag) {
    case IrTag::Var:
      arg.kind = LiftedCall::Arg::ParamRef;
      arg.ref = a->name;
      break;
    case IrTag::IntLit:
      arg.kind = LiftedCall::Arg::IntConst;
      arg.ival = a->ival;
      break;
    case IrTag::EmptySeq:
      arg.kind = LiftedCall::Arg::SeqConst;
      break;
    case IrTag::SeqLit: {
      arg.kind = LiftedCall::Arg::SeqConst;
      for (const auto &e : a->args) {
        if (e->tag != IrTag::IntLit)
          fail(ErrKind::NotFound, "non-constant sequence literal in summary");
        arg.sval.push_back(e->ival);
      }
      break;
    }
    case IrTag::Call:
      arg.kind = LiftedCall::Arg::Nested;
      arg.nested = std::make_shared<LiftedCall>(lifted_from_ir(a, reg));
      break;
    default:
      fail(ErrKind::NotFound, "unsupported argument form in summary");
    }
    node.args.push_back(std::move(arg));
  }
  return node;
}

inline Json lifted_json(const LiftedCall &node) {
  Json args = Json::object();
  Json consts = Json::object();
  for (const auto &a : node.args) {
    Json v;
    switch (a.kind) {
    case LiftedCall::Arg::ParamRef: v = a.ref; break;
    case LiftedCall::Arg::IntConst: v = a.ival; break;
    case LiftedCall::Arg::SeqConst: v = a.sval; break;
    case LiftedCall::Arg::Nested: v = lifted_json(*a.nested); break;
    }
    if (a.is_hole) consts[a.param] = std::move(v);
    else args[a.param] = std::move(v);
  }
  Json j = Json::object();
  j["op"] = node.op;
  j["args"] = std::move(args);
  j["constants"] = std::move(consts);
  return j;
}

}  // namespace detail

// Extracts the operator-call tree from a Found result's program summary.
inline LiftedCall lifted_program(const SynthesisResult &result,
                                 const Registry &reg) {
  if (result.status != SynthStatus::Found || !result.candidate)
    fail(ErrKind::NotFound, "no lifted program: status is not found");
  const Ir &ps = result.candidate->ps;
  if (ps->tag != IrTag::Eq)
    fail(ErrKind::NotFound, "program summary is not an equation");
  return detail::lifted_from_ir(ps->args[1], reg);
}

// The full machine-readable report; total over all statuses.
inline std::string report_json(const SynthesisResult &result,
                               const Registry &reg) {
  Json j = Json::object();
  j["kernel"] = result.loop.kernel_name;
  j["status"] = synth_status_name(result.status);
  if (result.status == SynthStatus::Found) {
    j["lifted"] = detail::lifted_json(lifted_program(result, reg));
    j["invariant"] = to_sexpr(result.candidate->inv);
  } else {
    j["lifted"] = nullptr;
    j["invariant"] = nullptr;
  }
  Json ver = Json::object();
  ver["mode"] = result.bounded ? "bounded" : "full";
  if (result.bounded) ver["bound"] = result.bound;
  else ver["bound"] = nullptr;
  j["verification"] = std::move(ver);
  Json stats = Json::object();
  stats["enumerated"] = result.stats.enumerated;
  stats["oracle_pruned"] = result.stats.oracle_pruned;
  stats["smt_queries"] = result.stats.smt_queries;
  stats["counterexamples"] = result.stats.counterexamples;
  stats["wall_ms"] = result.stats.wall_ms;
  j["stats"] = std::move(stats);
  return j.dump(2) + "\n";
}

// Report emission restricted to successful runs.
inline std::string emit_json(const SynthesisResult &result,
                             const Registry &reg) {
  if (result.status != SynthStatus::Found)
    fail(ErrKind::NotFound, "cannot emit: status is not found");
  return report_json(result, reg);
}

// ---------------------------------------------------------------------------
// C stub emission. Calling convention per value type:
//   int            ->  int x
//   list<int>      ->  const int *x, int x_len        (outputs: int*, int*)
//   matrix         ->  const int *x, int x_rows, int x_cols
// Entry points are liftc_<operator> as declared in liftc_accel.h.

class CStubEmitter {
public:
  CStubEmitter(const SynthesisResult &result, const Registry &reg)
      : result_(result), reg_(reg) {}

  std::string emit() {
    if (result_.status != SynthStatus::Found)
      fail(ErrKind::NotFound, "cannot emit: status is not found");
    LiftedCall root = lifted_program(result_, reg_);
    const LoopNest &loop = result_.loop;

    std::ostringstream os;
    os << "/* generated by liftc */\n";
    os << "/* " << loop.kernel_name << ": "
       << to_sexpr(result_.candidate->ps) << " */\n";
    os << "#include \"liftc_accel.h\"\n\n";

    // Signature.
    std::ostringstream sig;
    bool scalarOut = loop.output_type == IrType::Int;
    sig << (scalarOut ? "int " : "void ") << loop.kernel_name << "(";
    bool first = true;
    for (const auto &[n, t] : loop.params) {
      if (!first) sig << ", ";
      first = false;
      if (t == IrType::Int) sig << "int " << n;
      else if (t == IrType::SeqInt) sig << "const int *" << n << ", int " << n << "_len";
      else sig << "const int *" << n << ", int " << n << "_rows, int " << n << "_cols";
    }
    if (!scalarOut) {
      if (!first) sig << ", ";
      if (loop.output_type == IrType::SeqInt)
        sig << "int *out, int *out_len";
      else
        sig << "int *out, int *out_rows, int *out_cols";
    }
    sig << ")";

    os << sig.str() << " {\n";
    Ref result = gen(root, reg_.get(root.op).return_type, true);
    for (const auto &d : decls_) os << "    " << d << "\n";
    for (const auto &s : stmts_) os << "    " << s << "\n";
    if (scalarOut) os << "    return " << result.scalar << ";\n";
    os << "}\n";
    return os.str();
  }

private:
  struct Ref {
    IrType type = IrType::Int;
    std::string scalar;
    std::string ptr, lenExpr;   // value expressions
    std::string rowsExpr, colsExpr;
  };

  Ref gen(const LiftedCall &node, IrType retType, bool isRoot) {
    std::vector<Ref> argRefs;
    for (const auto &a : node.args) argRefs.push_back(gen_arg(a));

    Ref out;
    out.type = retType;
    std::string call = "liftc_" + node.op + "(";
    bool first = true;
    auto push = [&](const std::string &s) {
      if (!first) call += ", ";
      first = false;
      call += s;
    };
    for (const auto &r : argRefs) {
      if (r.type == IrType::Int) push(r.scalar);
      else if (r.type == IrType::SeqInt) { push(r.ptr); push(r.lenExpr); }
      else { push(r.ptr); push(r.rowsExpr); push(r.colsExpr); }
    }
    if (retType == IrType::Int) {
      std::string t = isRoot ? std::string("r") : "t" + std::to_string(temp_++);
      decls_.push_back("int " + t + ";");
      stmts_.push_back(t + " = " + call + ");");
      out.scalar = t;
      return out;
    }
    std::string base;
    if (isRoot) {
      base = "out";
    } else {
      base = "t" + std::to_string(temp_++);
      decls_.push_back("int " + base + "[LIFTC_MAX_TENSOR];");
      if (retType == IrType::SeqInt)
        decls_.push_back("int " + base + "_len;");
      else
        decls_.push_back("int " + base + "_rows, " + base + "_cols;");
    }
    if (retType == IrType::SeqInt) {
      push(base);
      push(isRoot ? "out_len" : "&" + base + "_len");
      out.ptr = base;
      out.lenExpr = isRoot ? "*out_len" : base + "_len";
    } else {
      push(base);
      push(isRoot ? "out_rows" : "&" + base + "_rows");
      push(isRoot ? "out_cols" : "&" + base + "_cols");
      out.ptr = base;
      out.rowsExpr = isRoot ? "*out_rows" : base + "_rows";
      out.colsExpr = isRoot ? "*out_cols" : base + "_cols";
    }
    stmts_.push_back(call + ");");
    return out;
  }

  Ref gen_arg(const LiftedCall::Arg &a) {
    Ref r;
    r.type = a.type;
    switch (a.kind) {
    case LiftedCall::Arg::ParamRef:
      if (a.type == IrType::Int) r.scalar = a.ref;
      else if (a.type == IrType::SeqInt) {
        r.ptr = a.ref;
        r.lenExpr = a.ref + "_len";
      } else {
        r.ptr = a.ref;
        r.rowsExpr = a.ref + "_rows";
        r.colsExpr = a.ref + "_cols";
      }
      return r;
    case LiftedCall::Arg::IntConst:
      r.scalar = std::to_string(a.ival);
      return r;
    case LiftedCall::Arg::SeqConst: {
      std::string name = "k" + std::to_string(lit_++);
      std::ostringstream d;
      if (a.sval.empty()) {
        // No zero-length arrays in strict C; pass a one-slot array, length 0.
        d << "static const int " << name << "[1] = {0};";
        decls_.push_back(d.str());
        r.ptr = name;
        r.lenExpr = "0";
      } else {
        d << "static const int " << name << "[" << a.sval.size() << "] = {";
        for (size_t i = 0; i < a.sval.size(); ++i)
          d << (i ? ", " : "") << a.sval[i];
        d << "};";
        decls_.push_back(d.str());
        r.ptr = name;
        r.lenExpr = std::to_string(a.sval.size());
      }
      return r;
    }
    case LiftedCall::Arg::Nested:
      return gen(*a.nested, reg_.get(a.nested->op).return_type, false);
    }
    return r;
  }

  const SynthesisResult &result_;
  const Registry &reg_;
  std::vector<std::string> decls_, stmts_;
  int temp_ = 0, lit_ = 0;
};

inline std::string emit_c_stub(const SynthesisResult &result,
                               const Registry &reg) {
  return CStubEmitter(result, reg).emit();
}

}  // namespace liftc
