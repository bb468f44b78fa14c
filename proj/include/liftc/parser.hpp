#pragma once

// Frontend for the kernel mini-language (.mc files):
//
//   program := "fn" ident "(" [param {"," param}] ")" "->" type "{" {stmt} "}"
//   param   := ident ":" type
//   type    := "int" | "list<int>"
//   stmt    := "let" ident ":" type "=" expr ";"
//            | ident "=" expr ";"
//            | ident ".push(" expr ");"
//            | "for" ident "in" expr ".." expr "{" {stmt} "}"
//            | "return" expr ";"
//   expr    := intlit | "[]" | ident | expr binop expr | ident "[" expr "]"
//            | "len(" ident ")" | "(" expr ")"
//   binop   := "+" | "-" | "*" | "<" | "<=" | "==" | "&&"
//
// Precedence, tightest first: * ; + - ; < <= == ; &&.
//
// parse_source also enforces the v1 shape restrictions (single non-nested
// loop, straight-line body, declare-before-use, no shadowing) so malformed
// programs are rejected with a position before any analysis runs.

#include <cctype>
#include <set>

#include "liftc/ir.hpp"

namespace liftc {

enum class SrcType { IntT, ListT };

inline IrType to_ir_type(SrcType t) {
  return t == SrcType::IntT ? IrType::Int : IrType::SeqInt;
}

inline std::string src_type_name(SrcType t) {
  return t == SrcType::IntT ? "int" : "list<int>";
}

// --- AST -------------------------------------------------------------------

struct SrcExpr;
using SrcExprPtr = std::shared_ptr<const SrcExpr>;

struct SrcExpr {
  enum Kind { IntLit, EmptyList, Var, Binop, Index, Len } kind;
  Int ival = 0;
  std::string name;   // Var, Index target, Len target
  std::string op;     // Binop
  SrcExprPtr lhs, rhs;  // Binop; Index uses rhs for the position
  int line = 0, col = 0;
};

struct SrcStmt;
using SrcStmtPtr = std::shared_ptr<const SrcStmt>;

struct SrcStmt {
  enum Kind { Let, Assign, Push, For, Return } kind;
  std::string name;          // Let/Assign/Push target, For counter
  SrcType type = SrcType::IntT;  // Let
  SrcExprPtr expr;           // Let init, Assign rhs, Push element, Return value
  SrcExprPtr lo, hi;         // For bounds
  std::vector<SrcStmtPtr> body;  // For
  int line = 0, col = 0;
};

struct SourceAST {
  std::string name;
  std::vector<std::pair<std::string, SrcType>> params;
  SrcType return_type = SrcType::IntT;
  std::vector<SrcStmtPtr> body;
};

// --- Lexer -----------------------------------------------------------------

namespace detail {

struct Token {
  enum Kind {
    Ident,
    Int,
    Punct,  // one of ( ) { } [ ] , ; : . and operators
    End,
  } kind = End;
  std::string text;
  long long ival = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token &peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() &&
           isspace((unsigned char)text_[pos_]))
      bump();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = text_[pos_];
    if (isalpha((unsigned char)c) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
        bump();
      tok_.kind = Token::Ident;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (isdigit((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < text_.size() && isdigit((unsigned char)text_[pos_])) bump();
      tok_.kind = Token::Int;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      tok_.ival = std::stoll(tok_.text);
      return;
    }
    // Multi-character punctuation first.
    static const char *two[] = {"->", "..", "<=", "==", "&&"};
    for (const char *t : two) {
      if (text_.substr(pos_, 2) == t) {
        tok_.kind = Token::Punct;
        tok_.text = t;
        bump();
        bump();
        return;
      }
    }
    static const std::string singles = "(){}[],;:.<>=+-*";
    if (singles.find(c) != std::string::npos) {
      tok_.kind = Token::Punct;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    fail(ErrKind::SyntaxError, "unexpected character '" + std::string(1, c) +
                                   "' at line " + std::to_string(line_) +
                                   ", column " + std::to_string(col_));
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

[[noreturn]] inline void syntax_error(const Token &t, const std::string &msg) {
  fail(ErrKind::SyntaxError, msg + " at line " + std::to_string(t.line) +
                                 ", column " + std::to_string(t.col));
}

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  SourceAST parse_program() {
    SourceAST ast;
    expect_ident("fn");
    ast.name = expect_name();
    expect_punct("(");
    if (!at_punct(")")) {
      for (;;) {
        std::string p = expect_name();
        expect_punct(":");
        SrcType t = parse_type();
        ast.params.emplace_back(p, t);
        if (!at_punct(",")) break;
        lex_.next();
      }
    }
    expect_punct(")");
    expect_punct("->");
    ast.return_type = parse_type();
    expect_punct("{");
    while (!at_punct("}")) ast.body.push_back(parse_stmt());
    expect_punct("}");
    if (lex_.peek().kind != Token::End)
      syntax_error(lex_.peek(), "exactly one function per file; extra input");
    return ast;
  }

private:
  SrcType parse_type() {
    Token t = lex_.next();
    if (t.kind != Token::Ident) syntax_error(t, "expected a type");
    if (t.text == "int") return SrcType::IntT;
    if (t.text == "list") {
      expect_punct("<");
      Token e = lex_.next();
      if (e.kind != Token::Ident || e.text != "int")
        syntax_error(e, "only list<int> is supported");
      expect_punct(">");
      return SrcType::ListT;
    }
    syntax_error(t, "unknown type '" + t.text + "'");
  }

  SrcStmtPtr parse_stmt() {
    Token t = lex_.peek();
    auto st = std::make_shared<SrcStmt>();
    st->line = t.line;
    st->col = t.col;
    if (t.kind == Token::Ident && t.text == "let") {
      lex_.next();
      st->kind = SrcStmt::Let;
      st->name = expect_name();
      expect_punct(":");
      st->type = parse_type();
      expect_punct("=");
      st->expr = parse_expr();
      expect_punct(";");
      return st;
    }
    if (t.kind == Token::Ident && t.text == "for") {
      lex_.next();
      st->kind = SrcStmt::For;
      st->name = expect_name();
      expect_ident("in");
      st->lo = parse_expr();
      expect_punct("..");
      st->hi = parse_expr();
      expect_punct("{");
      while (!at_punct("}")) st->body.push_back(parse_stmt());
      expect_punct("}");
      return st;
    }
    if (t.kind == Token::Ident && t.text == "return") {
      lex_.next();
      st->kind = SrcStmt::Return;
      st->expr = parse_expr();
      expect_punct(";");
      return st;
    }
    if (t.kind == Token::Ident) {
      lex_.next();
      st->name = t.text;
      if (at_punct(".")) {
        lex_.next();
        expect_ident("push");
        expect_punct("(");
        st->kind = SrcStmt::Push;
        st->expr = parse_expr();
        expect_punct(")");
        expect_punct(";");
        return st;
      }
      expect_punct("=");
      st->kind = SrcStmt::Assign;
      st->expr = parse_expr();
      expect_punct(";");
      return st;
    }
    syntax_error(t, "expected a statement");
  }

  // Precedence climbing: && < comparisons < additive < multiplicative.
  SrcExprPtr parse_expr() { return parse_and(); }

  SrcExprPtr parse_and() {
    SrcExprPtr e = parse_cmp();
    while (at_punct("&&")) {
      Token t = lex_.next();
      e = mk_binop("&&", e, parse_cmp(), t);
    }
    return e;
  }

  SrcExprPtr parse_cmp() {
    SrcExprPtr e = parse_add();
    while (at_punct("<") || at_punct("<=") || at_punct("==")) {
      Token t = lex_.next();
      e = mk_binop(t.text, e, parse_add(), t);
    }
    return e;
  }

  SrcExprPtr parse_add() {
    SrcExprPtr e = parse_mul();
    while (at_punct("+") || at_punct("-")) {
      Token t = lex_.next();
      e = mk_binop(t.text, e, parse_mul(), t);
    }
    return e;
  }

  SrcExprPtr parse_mul() {
    SrcExprPtr e = parse_atom();
    while (at_punct("*")) {
      Token t = lex_.next();
      e = mk_binop("*", e, parse_atom(), t);
    }
    return e;
  }

  SrcExprPtr parse_atom() {
    Token t = lex_.peek();
    auto e = std::make_shared<SrcExpr>();
    e->line = t.line;
    e->col = t.col;
    if (t.kind == Token::Int) {
      lex_.next();
      e->kind = SrcExpr::IntLit;
      e->ival = t.ival;
      return e;
    }
    if (at_punct("[")) {
      lex_.next();
      expect_punct("]");
      e->kind = SrcExpr::EmptyList;
      return e;
    }
    if (at_punct("(")) {
      lex_.next();
      SrcExprPtr inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    if (t.kind == Token::Ident && t.text == "len") {
      lex_.next();
      expect_punct("(");
      e->kind = SrcExpr::Len;
      e->name = expect_name();
      expect_punct(")");
      return e;
    }
    if (t.kind == Token::Ident) {
      lex_.next();
      if (at_punct("[")) {
        lex_.next();
        e->kind = SrcExpr::Index;
        e->name = t.text;
        e->rhs = parse_expr();
        expect_punct("]");
        return e;
      }
      e->kind = SrcExpr::Var;
      e->name = t.text;
      return e;
    }
    syntax_error(t, "expected an expression");
  }

  SrcExprPtr mk_binop(const std::string &op, SrcExprPtr l, SrcExprPtr r,
                      const Token &t) {
    auto e = std::make_shared<SrcExpr>();
    e->kind = SrcExpr::Binop;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->line = t.line;
    e->col = t.col;
    return e;
  }

  bool at_punct(const std::string &p) {
    return lex_.peek().kind == Token::Punct && lex_.peek().text == p;
  }

  void expect_punct(const std::string &p) {
    Token t = lex_.next();
    if (t.kind != Token::Punct || t.text != p)
      syntax_error(t, "expected '" + p + "'");
  }

  void expect_ident(const std::string &kw) {
    Token t = lex_.next();
    if (t.kind != Token::Ident || t.text != kw)
      syntax_error(t, "expected '" + kw + "'");
  }

  std::string expect_name() {
    Token t = lex_.next();
    static const std::set<std::string> reserved = {"fn",  "let",    "for",
                                                   "in",  "return", "len",
                                                   "int", "list",   "push"};
    if (t.kind != Token::Ident || reserved.count(t.text))
      syntax_error(t, "expected an identifier");
    return t.text;
  }

  Lexer lex_;
};

// --- Static shape checks ---------------------------------------------------

struct ScopeChecker {
  std::map<std::string, SrcType> vars;   // declared so far
  std::set<std::string> mutable_vars;    // let-declared state + loop counters
  int loops_seen = 0;

  void declare(const std::string &name, SrcType t, int line, int col,
               bool is_mutable) {
    if (vars.count(name))
      fail(ErrKind::SyntaxError, "shadowing declaration of '" + name +
                                     "' at line " + std::to_string(line) +
                                     ", column " + std::to_string(col));
    vars[name] = t;
    if (is_mutable) mutable_vars.insert(name);
  }

  SrcType lookup(const std::string &name, int line, int col) const {
    auto it = vars.find(name);
    if (it == vars.end())
      fail(ErrKind::SyntaxError, "use of undeclared identifier '" + name +
                                     "' at line " + std::to_string(line) +
                                     ", column " + std::to_string(col));
    return it->second;
  }

  SrcType check_expr(const SrcExprPtr &e) {
    switch (e->kind) {
    case SrcExpr::IntLit: return SrcType::IntT;
    case SrcExpr::EmptyList: return SrcType::ListT;
    case SrcExpr::Var: return lookup(e->name, e->line, e->col);
    case SrcExpr::Len:
      if (lookup(e->name, e->line, e->col) != SrcType::ListT)
        fail(ErrKind::SyntaxError, "len() of non-list '" + e->name + "'");
      return SrcType::IntT;
    case SrcExpr::Index: {
      if (lookup(e->name, e->line, e->col) != SrcType::ListT)
        fail(ErrKind::SyntaxError, "indexing non-list '" + e->name + "'");
      if (check_expr(e->rhs) != SrcType::IntT)
        fail(ErrKind::SyntaxError, "index must be an int");
      return SrcType::IntT;
    }
    case SrcExpr::Binop: {
      // No bool-typed positions exist in v1, so comparison operators can
      // never denote a usable value.
      if (e->op == "<" || e->op == "<=" || e->op == "==" || e->op == "&&")
        fail(ErrKind::UnsupportedConstruct,
             "operator '" + e->op + "' has no value position at line " +
                 std::to_string(e->line));
      SrcType l = check_expr(e->lhs), r = check_expr(e->rhs);
      if (l != SrcType::IntT || r != SrcType::IntT)
        fail(ErrKind::SyntaxError, "operator '" + e->op +
                                       "' expects int operands at line " +
                                       std::to_string(e->line));
      return SrcType::IntT;
    }
    }
    fail(ErrKind::SyntaxError, "unhandled expression");
  }

  void check_stmts(const std::vector<SrcStmtPtr> &stmts, bool in_loop) {
    for (const auto &st : stmts) {
      switch (st->kind) {
      case SrcStmt::Let: {
        SrcType t = check_expr(st->expr);
        if (t != st->type)
          fail(ErrKind::SyntaxError, "let '" + st->name +
                                         "' initializer type mismatch at line " +
                                         std::to_string(st->line));
        declare(st->name, st->type, st->line, st->col, true);
        break;
      }
      case SrcStmt::Assign: {
        SrcType t = lookup(st->name, st->line, st->col);
        if (!mutable_vars.count(st->name))
          fail(ErrKind::UnsupportedConstruct,
               "assignment to parameter '" + st->name + "' at line " +
                   std::to_string(st->line));
        if (check_expr(st->expr) != t)
          fail(ErrKind::SyntaxError, "assignment type mismatch for '" +
                                         st->name + "' at line " +
                                         std::to_string(st->line));
        break;
      }
      case SrcStmt::Push: {
        if (lookup(st->name, st->line, st->col) != SrcType::ListT)
          fail(ErrKind::SyntaxError, "push on non-list '" + st->name + "'");
        if (!mutable_vars.count(st->name))
          fail(ErrKind::UnsupportedConstruct,
               "push on parameter '" + st->name + "' at line " +
                   std::to_string(st->line));
        if (check_expr(st->expr) != SrcType::IntT)
          fail(ErrKind::SyntaxError, "push element must be an int");
        break;
      }
      case SrcStmt::For: {
        if (in_loop)
          fail(ErrKind::UnsupportedConstruct,
               "nested loop at line " + std::to_string(st->line));
        if (loops_seen > 0)
          fail(ErrKind::UnsupportedConstruct,
               "more than one loop at line " + std::to_string(st->line));
        ++loops_seen;
        if (check_expr(st->lo) != SrcType::IntT ||
            check_expr(st->hi) != SrcType::IntT)
          fail(ErrKind::SyntaxError, "loop bounds must be int");
        declare(st->name, SrcType::IntT, st->line, st->col, true);
        check_stmts(st->body, true);
        break;
      }
      case SrcStmt::Return:
        if (in_loop)
          fail(ErrKind::UnsupportedConstruct,
               "return inside loop at line " + std::to_string(st->line));
        check_expr(st->expr);
        break;
      }
    }
  }
};

}  // namespace detail

// Parses and shape-checks one mini-language program.
inline SourceAST parse_source(const std::string &text) {
  detail::Parser p(text);
  SourceAST ast = p.parse_program();
  detail::ScopeChecker sc;
  for (const auto &[n, t] : ast.params) sc.declare(n, t, 1, 1, false);
  sc.check_stmts(ast.body, false);
  // The last top-level statement must be the (only) return.
  int returns = 0;
  for (const auto &st : ast.body)
    if (st->kind == SrcStmt::Return) ++returns;
  if (returns != 1 || ast.body.empty() ||
      ast.body.back()->kind != SrcStmt::Return)
    fail(ErrKind::SyntaxError, "function must end with a single return");
  if (sc.check_expr(ast.body.back()->expr) != ast.return_type)
    fail(ErrKind::SyntaxError, "return type mismatch");
  return ast;
}

}  // namespace liftc
