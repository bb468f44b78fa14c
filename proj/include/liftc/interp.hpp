#pragma once

// Reference interpreter for mini-language ASTs. Executes the program
// directly, without going through the LoopNest abstraction, so it can serve
// as the independent ground truth for both the analyzer and the synthesizer.

#include "liftc/parser.hpp"

namespace liftc {

namespace detail {

inline Value interp_expr(const SrcExprPtr &e, const Env &env) {
  switch (e->kind) {
  case SrcExpr::IntLit: return e->ival;
  case SrcExpr::EmptyList: return SeqI{};
  case SrcExpr::Var: {
    auto it = env.find(e->name);
    if (it == env.end()) fail(ErrKind::UnboundVariable, e->name);
    return it->second;
  }
  case SrcExpr::Len: {
    auto it = env.find(e->name);
    if (it == env.end()) fail(ErrKind::UnboundVariable, e->name);
    return (Int)as_seq(it->second).size();
  }
  case SrcExpr::Index: {
    auto it = env.find(e->name);
    if (it == env.end()) fail(ErrKind::UnboundVariable, e->name);
    const SeqI &s = as_seq(it->second);
    Int i = as_int(interp_expr(e->rhs, env));
    if (i < 0 || i >= (Int)s.size())
      fail(ErrKind::IndexOutOfBounds,
           e->name + "[" + std::to_string(i) + "], length " +
               std::to_string(s.size()));
    return s[(size_t)i];
  }
  case SrcExpr::Binop: {
    if (e->op == "&&")
      return as_bool(interp_expr(e->lhs, env)) &&
             as_bool(interp_expr(e->rhs, env));
    Int l = as_int(interp_expr(e->lhs, env));
    Int r = as_int(interp_expr(e->rhs, env));
    if (e->op == "+") return l + r;
    if (e->op == "-") return l - r;
    if (e->op == "*") return l * r;
    if (e->op == "<") return l < r;
    if (e->op == "<=") return l <= r;
    if (e->op == "==") return l == r;
    fail(ErrKind::SyntaxError, "unknown operator " + e->op);
  }
  }
  fail(ErrKind::SyntaxError, "unhandled expression");
}

inline void interp_block(const std::vector<SrcStmtPtr> &stmts, Env &env);

inline void interp_stmt(const SrcStmtPtr &st, Env &env) {
  switch (st->kind) {
  case SrcStmt::Let:
  case SrcStmt::Assign:
    env[st->name] = interp_expr(st->expr, env);
    return;
  case SrcStmt::Push: {
    SeqI s = as_seq(env.at(st->name));
    s.push_back(as_int(interp_expr(st->expr, env)));
    env[st->name] = std::move(s);
    return;
  }
  case SrcStmt::For: {
    env[st->name] = interp_expr(st->lo, env);
    while (as_int(env.at(st->name)) < as_int(interp_expr(st->hi, env))) {
      interp_block(st->body, env);
      env[st->name] = as_int(env.at(st->name)) + 1;
    }
    return;
  }
  case SrcStmt::Return:
    return;  // handled by the caller
  }
}

inline void interp_block(const std::vector<SrcStmtPtr> &stmts, Env &env) {
  for (const auto &st : stmts) interp_stmt(st, env);
}

}  // namespace detail

// Runs the program on the given parameter bindings and returns its result.
inline Value run_source(const SourceAST &ast, const Env &params) {
  Env env;
  for (const auto &[n, t] : ast.params) {
    auto it = params.find(n);
    if (it == params.end()) fail(ErrKind::UnboundVariable, "parameter " + n);
    if (value_type(it->second) != to_ir_type(t))
      fail(ErrKind::TypeError, "parameter " + n);
    env[n] = it->second;
  }
  detail::interp_block(ast.body, env);
  const SrcStmtPtr &ret = ast.body.back();
  return detail::interp_expr(ret->expr, env);
}

}  // namespace liftc
