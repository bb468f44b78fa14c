#pragma once

// Static analysis: turns a shape-checked SourceAST into a LoopNest, the
// symbolic form the rest of the pipeline works on. The loop body is executed
// symbolically, so each state variable gets a single next-iteration
// expression over the state at the loop head.

#include "liftc/interp.hpp"
#include "liftc/operators.hpp"

namespace liftc {

struct LoopNest {
  std::string kernel_name;
  std::vector<std::pair<std::string, IrType>> params;
  // Loop counter first, then let-declared variables in declaration order.
  std::vector<std::pair<std::string, IrType>> state_vars;
  std::map<std::string, Ir> init;    // over params only
  Ir cond;                           // over params and state vars
  std::map<std::string, Ir> update;  // over params and state vars
  std::string output_var;
  IrType output_type = IrType::Int;

  bool is_state(const std::string &n) const {
    for (const auto &[v, t] : state_vars)
      if (v == n) return true;
    return false;
  }

  TypeCtx type_ctx() const {
    TypeCtx ctx;
    for (const auto &[n, t] : params) ctx[n] = t;
    for (const auto &[n, t] : state_vars) ctx[n] = t;
    return ctx;
  }

  std::string counter() const { return state_vars.front().first; }
};

namespace detail {

// Converts a source expression to IR, routing variable reads through the
// symbolic store when present.
inline Ir to_ir(const SrcExprPtr &e, const std::map<std::string, Ir> &store) {
  using namespace ir;
  auto look = [&](const std::string &n) {
    auto it = store.find(n);
    return it == store.end() ? var(n) : it->second;
  };
  switch (e->kind) {
  case SrcExpr::IntLit: return int_lit(e->ival);
  case SrcExpr::EmptyList: return empty_seq(IrType::Int);
  case SrcExpr::Var: return look(e->name);
  case SrcExpr::Len: return len(look(e->name));
  case SrcExpr::Index: return index(look(e->name), to_ir(e->rhs, store));
  case SrcExpr::Binop: {
    Ir l = to_ir(e->lhs, store), r = to_ir(e->rhs, store);
    if (e->op == "+") return add(l, r);
    if (e->op == "-") return sub(l, r);
    if (e->op == "*") return mul(l, r);
    if (e->op == "<") return lt(l, r);
    if (e->op == "<=") return le(l, r);
    if (e->op == "==") return eq(l, r);
    if (e->op == "&&") return land(l, r);
    fail(ErrKind::UnsupportedConstruct, "operator " + e->op);
  }
  }
  fail(ErrKind::UnsupportedConstruct, "unhandled expression");
}

}  // namespace detail

inline LoopNest analyze(const SourceAST &ast) {
  LoopNest loop;
  loop.kernel_name = ast.name;
  for (const auto &[n, t] : ast.params)
    loop.params.emplace_back(n, to_ir_type(t));

  const SrcStmt *forStmt = nullptr;
  std::vector<std::pair<std::string, IrType>> lets;
  std::map<std::string, Ir> preStore;  // pre-loop values over params

  size_t idx = 0;
  for (; idx < ast.body.size(); ++idx) {
    const SrcStmtPtr &st = ast.body[idx];
    if (st->kind == SrcStmt::For) {
      forStmt = st.get();
      ++idx;
      break;
    }
    if (st->kind == SrcStmt::Let) {
      lets.emplace_back(st->name, to_ir_type(st->type));
      preStore[st->name] = detail::to_ir(st->expr, preStore);
    } else if (st->kind == SrcStmt::Assign) {
      preStore[st->name] = detail::to_ir(st->expr, preStore);
    } else if (st->kind == SrcStmt::Return) {
      fail(ErrKind::NoLoop, ast.name + " has no loop to lift");
    } else {
      fail(ErrKind::UnsupportedConstruct,
           "statement before the loop at line " + std::to_string(st->line));
    }
  }
  if (!forStmt) fail(ErrKind::NoLoop, ast.name + " has no loop to lift");

  // State: counter first, then declared lets.
  loop.state_vars.emplace_back(forStmt->name, IrType::Int);
  for (const auto &lv : lets) loop.state_vars.push_back(lv);

  // init is fully substituted, so it ranges over params only.
  loop.init[forStmt->name] = detail::to_ir(forStmt->lo, preStore);
  for (const auto &[n, t] : lets) loop.init[n] = preStore.at(n);

  // cond and update range over state vars and params.
  std::map<std::string, Ir> empty;
  loop.cond = ir::lt(ir::var(forStmt->name), detail::to_ir(forStmt->hi, empty));

  // Symbolic execution of the body. Starts from the identity store; body
  // lets act as local temporaries and are dropped afterwards.
  std::map<std::string, Ir> cur;
  std::set<std::string> temps;
  for (const auto &st : forStmt->body) {
    switch (st->kind) {
    case SrcStmt::Let:
      temps.insert(st->name);
      cur[st->name] = detail::to_ir(st->expr, cur);
      break;
    case SrcStmt::Assign:
      cur[st->name] = detail::to_ir(st->expr, cur);
      break;
    case SrcStmt::Push: {
      auto it = cur.find(st->name);
      Ir base = it == cur.end() ? ir::var(st->name) : it->second;
      cur[st->name] = ir::append(base, detail::to_ir(st->expr, cur));
      break;
    }
    default:
      fail(ErrKind::UnsupportedConstruct,
           "unsupported statement in loop body at line " +
               std::to_string(st->line));
    }
  }
  for (const auto &[n, t] : loop.state_vars) {
    auto it = cur.find(n);
    loop.update[n] = it == cur.end() ? ir::var(n) : it->second;
  }
  loop.update[forStmt->name] =
      ir::add(loop.update.at(forStmt->name), ir::int_lit(1));

  // Everything after the loop must be the single return of a state var.
  if (idx + 1 != ast.body.size() || ast.body[idx]->kind != SrcStmt::Return)
    fail(ErrKind::UnsupportedConstruct,
         "only a single return may follow the loop");
  const SrcExprPtr &ret = ast.body[idx]->expr;
  if (ret->kind != SrcExpr::Var || !loop.is_state(ret->name))
    fail(ErrKind::UnsupportedConstruct,
         "return value must be a state variable");
  loop.output_var = ret->name;
  loop.output_type = to_ir_type(ast.return_type);

  // Closed-symbol and type sanity checks.
  TypeCtx ctx = loop.type_ctx();
  TypeCtx paramsOnly;
  for (const auto &[n, t] : loop.params) paramsOnly[n] = t;
  for (const auto &[n, e] : loop.init) typecheck(e, paramsOnly);
  if (typecheck(loop.cond, ctx) != IrType::Bool)
    fail(ErrKind::TypeError, "loop guard is not boolean");
  for (const auto &[n, t] : loop.state_vars) {
    if (typecheck(loop.update.at(n), ctx) != t)
      fail(ErrKind::TypeError, "update of " + n + " changes its type");
  }
  return loop;
}

inline LoopNest analyze_text(const std::string &text) {
  return analyze(parse_source(text));
}

// ---------------------------------------------------------------------------
// LoopNest execution. Used by the oracle prefilter and the faithfulness
// tests: init, then iterate update while the guard holds, then read the
// output variable. The returned trace holds the loop-head state (state vars
// only) for every visit, including the final one where the guard is false.

struct LoopRun {
  std::vector<Env> trace;  // state-variable bindings at each loop head
  Env final_env;           // params + final state
  Value output;
};

inline LoopRun run_loop(const LoopNest &loop, const Env &params,
                        const Registry &reg, long long max_iters = 1000000) {
  Env env;
  for (const auto &[n, t] : loop.params) {
    auto it = params.find(n);
    if (it == params.end()) fail(ErrKind::UnboundVariable, "parameter " + n);
    env[n] = it->second;
  }
  LoopRun run;
  for (const auto &[n, t] : loop.state_vars)
    env[n] = eval(loop.init.at(n), env, reg);
  auto snapshot = [&]() {
    Env st;
    for (const auto &[n, t] : loop.state_vars) st[n] = env.at(n);
    run.trace.push_back(std::move(st));
  };
  snapshot();
  long long iters = 0;
  while (as_bool(eval(loop.cond, env, reg))) {
    if (++iters > max_iters)
      fail(ErrKind::UnsupportedConstruct, "loop iteration limit exceeded");
    Env next = env;
    for (const auto &[n, t] : loop.state_vars)
      next[n] = eval(loop.update.at(n), env, reg);
    env = std::move(next);
    snapshot();
  }
  run.output = env.at(loop.output_var);
  run.final_env = std::move(env);
  return run;
}

// Upper-bound expression of the analyzed guard, when it has the canonical
// `counter < hi` shape.
inline std::optional<Ir> guard_upper_bound(const LoopNest &loop) {
  if (loop.cond->tag == IrTag::Lt && loop.cond->args[0]->tag == IrTag::Var &&
      loop.cond->args[0]->name == loop.counter())
    return loop.cond->args[1];
  return std::nullopt;
}

}  // namespace liftc
