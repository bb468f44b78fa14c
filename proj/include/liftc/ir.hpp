#pragma once

// Typed expression IR shared by the frontend analysis, operator semantics,
// VC generation and SMT emission, plus the evaluator that gives it meaning.
//
// Expressions are immutable trees. Integers are mathematical integers at the
// scale this tool operates on (int64 carrier; corpus magnitudes stay tiny).
// Boolean connectives and ite evaluate lazily, so a formula like
//   (=> (<= 0 i) (index data i))
// never touches data[i] when the premise is false.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace liftc {

// ---------------------------------------------------------------------------
// Errors

enum class ErrKind {
  SyntaxError,
  UnsupportedConstruct,
  NoLoop,
  TypeError,
  UnboundVariable,
  UnknownOperator,
  ArityMismatch,
  IndexOutOfBounds,
  NonRectangularMatrix,
  NonPositiveStride,
  SolverUnavailable,
  ProtocolError,
  NotFound,
  ConfigError,
};

inline const char *err_kind_name(ErrKind k) {
  switch (k) {
  case ErrKind::SyntaxError: return "SyntaxError";
  case ErrKind::UnsupportedConstruct: return "UnsupportedConstruct";
  case ErrKind::NoLoop: return "NoLoop";
  case ErrKind::TypeError: return "TypeError";
  case ErrKind::UnboundVariable: return "UnboundVariable";
  case ErrKind::UnknownOperator: return "UnknownOperator";
  case ErrKind::ArityMismatch: return "ArityMismatch";
  case ErrKind::IndexOutOfBounds: return "IndexOutOfBounds";
  case ErrKind::NonRectangularMatrix: return "NonRectangularMatrix";
  case ErrKind::NonPositiveStride: return "NonPositiveStride";
  case ErrKind::SolverUnavailable: return "SolverUnavailable";
  case ErrKind::ProtocolError: return "ProtocolError";
  case ErrKind::NotFound: return "NotFound";
  case ErrKind::ConfigError: return "ConfigError";
  }
  return "Error";
}

class Error : public std::runtime_error {
public:
  Error(ErrKind kind, std::string msg)
      : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrKind kind() const { return kind_; }

private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string &msg) {
  throw Error(k, msg);
}

// ---------------------------------------------------------------------------
// Types

enum class IrType { Int, Bool, SeqInt, SeqSeqInt };

inline bool is_seq(IrType t) {
  return t == IrType::SeqInt || t == IrType::SeqSeqInt;
}

// Element type of a sequence type.
inline IrType elem_type(IrType t) {
  switch (t) {
  case IrType::SeqInt: return IrType::Int;
  case IrType::SeqSeqInt: return IrType::SeqInt;
  default: fail(ErrKind::TypeError, "not a sequence type");
  }
}

inline IrType seq_of(IrType t) {
  switch (t) {
  case IrType::Int: return IrType::SeqInt;
  case IrType::SeqInt: return IrType::SeqSeqInt;
  default: fail(ErrKind::TypeError, "no sequence type over this element type");
  }
}

inline std::string type_name(IrType t) {
  switch (t) {
  case IrType::Int: return "Int";
  case IrType::Bool: return "Bool";
  case IrType::SeqInt: return "(Seq Int)";
  case IrType::SeqSeqInt: return "(Seq (Seq Int))";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Values

using Int = long long;
using SeqI = std::vector<Int>;
using MatI = std::vector<SeqI>;

using Value = std::variant<Int, bool, SeqI, MatI>;

inline IrType value_type(const Value &v) {
  switch (v.index()) {
  case 0: return IrType::Int;
  case 1: return IrType::Bool;
  case 2: return IrType::SeqInt;
  default: return IrType::SeqSeqInt;
  }
}

inline Int as_int(const Value &v) {
  if (auto *p = std::get_if<Int>(&v)) return *p;
  fail(ErrKind::TypeError, "expected an integer value");
}

inline bool as_bool(const Value &v) {
  if (auto *p = std::get_if<bool>(&v)) return *p;
  fail(ErrKind::TypeError, "expected a boolean value");
}

inline const SeqI &as_seq(const Value &v) {
  if (auto *p = std::get_if<SeqI>(&v)) return *p;
  fail(ErrKind::TypeError, "expected an integer sequence value");
}

inline const MatI &as_mat(const Value &v) {
  if (auto *p = std::get_if<MatI>(&v)) return *p;
  fail(ErrKind::TypeError, "expected a matrix value");
}

inline bool value_eq(const Value &a, const Value &b) { return a == b; }

inline std::string value_str(const Value &v) {
  std::ostringstream os;
  struct P {
    std::ostringstream &os;
    void operator()(Int i) { os << i; }
    void operator()(bool b) { os << (b ? "true" : "false"); }
    void operator()(const SeqI &s) {
      os << "[";
      for (size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
      os << "]";
    }
    void operator()(const MatI &m) {
      os << "[";
      for (size_t i = 0; i < m.size(); ++i) {
        os << (i ? ", " : "") << "[";
        for (size_t j = 0; j < m[i].size(); ++j)
          os << (j ? ", " : "") << m[i][j];
        os << "]";
      }
      os << "]";
    }
  };
  std::visit(P{os}, v);
  return os.str();
}

// Environment binding free variables to values.
using Env = std::map<std::string, Value>;

// ---------------------------------------------------------------------------
// Expressions

enum class IrTag {
  IntLit,
  BoolLit,
  Var,
  Add,
  Sub,
  Mul,
  Lt,
  Le,
  Eq,
  And,
  Or,
  Not,
  Implies,
  Ite,
  EmptySeq,  // elem type stored in `ty`
  SeqLit,    // element exprs in args; elem type in `ty`
  Len,
  Index,
  Append,   // (append seq elem)
  Prepend,  // (prepend elem seq)
  Slice,    // (slice seq lo hi), clamped
  Call,     // name + args
};

struct IrNode;
using Ir = std::shared_ptr<const IrNode>;

struct IrNode {
  IrTag tag;
  Int ival = 0;                 // IntLit
  bool bval = false;            // BoolLit
  std::string name;             // Var, Call
  IrType ty = IrType::Int;      // EmptySeq/SeqLit element type
  std::vector<Ir> args;
};

namespace ir {

inline Ir make(IrTag tag, std::vector<Ir> args = {}) {
  auto n = std::make_shared<IrNode>();
  n->tag = tag;
  n->args = std::move(args);
  return n;
}

inline Ir int_lit(Int v) {
  auto n = std::make_shared<IrNode>();
  n->tag = IrTag::IntLit;
  n->ival = v;
  return n;
}

inline Ir bool_lit(bool v) {
  auto n = std::make_shared<IrNode>();
  n->tag = IrTag::BoolLit;
  n->bval = v;
  return n;
}

inline Ir var(std::string name) {
  auto n = std::make_shared<IrNode>();
  n->tag = IrTag::Var;
  n->name = std::move(name);
  return n;
}

inline Ir add(Ir a, Ir b) { return make(IrTag::Add, {a, b}); }
inline Ir sub(Ir a, Ir b) { return make(IrTag::Sub, {a, b}); }
inline Ir mul(Ir a, Ir b) { return make(IrTag::Mul, {a, b}); }
inline Ir lt(Ir a, Ir b) { return make(IrTag::Lt, {a, b}); }
inline Ir le(Ir a, Ir b) { return make(IrTag::Le, {a, b}); }
inline Ir eq(Ir a, Ir b) { return make(IrTag::Eq, {a, b}); }
inline Ir land(Ir a, Ir b) { return make(IrTag::And, {a, b}); }
inline Ir lor(Ir a, Ir b) { return make(IrTag::Or, {a, b}); }
inline Ir lnot(Ir a) { return make(IrTag::Not, {a}); }
inline Ir implies(Ir a, Ir b) { return make(IrTag::Implies, {a, b}); }
inline Ir ite(Ir c, Ir t, Ir f) { return make(IrTag::Ite, {c, t, f}); }

inline Ir empty_seq(IrType elem) {
  auto n = std::make_shared<IrNode>();
  n->tag = IrTag::EmptySeq;
  n->ty = elem;
  return n;
}

inline Ir seq_lit(std::vector<Ir> elems, IrType elem = IrType::Int) {
  auto n = std::make_shared<IrNode>();
  n->tag = IrTag::SeqLit;
  n->ty = elem;
  n->args = std::move(elems);
  return n;
}

inline Ir seq_lit_ints(const SeqI &vals) {
  std::vector<Ir> es;
  es.reserve(vals.size());
  for (Int v : vals) es.push_back(int_lit(v));
  return seq_lit(std::move(es));
}

inline Ir len(Ir s) { return make(IrTag::Len, {s}); }
inline Ir index(Ir s, Ir i) { return make(IrTag::Index, {s, i}); }
inline Ir append(Ir s, Ir x) { return make(IrTag::Append, {s, x}); }
inline Ir prepend(Ir x, Ir s) { return make(IrTag::Prepend, {x, s}); }
inline Ir slice(Ir s, Ir lo, Ir hi) { return make(IrTag::Slice, {s, lo, hi}); }

inline Ir call(std::string name, std::vector<Ir> args) {
  auto n = std::make_shared<IrNode>();
  n->tag = IrTag::Call;
  n->name = std::move(name);
  n->args = std::move(args);
  return n;
}

}  // namespace ir

// Structural equality.
inline bool ir_equal(const Ir &a, const Ir &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
  case IrTag::IntLit:
    if (a->ival != b->ival) return false;
    break;
  case IrTag::BoolLit:
    if (a->bval != b->bval) return false;
    break;
  case IrTag::Var:
  case IrTag::Call:
    if (a->name != b->name) return false;
    break;
  case IrTag::EmptySeq:
  case IrTag::SeqLit:
    if (a->ty != b->ty) return false;
    break;
  default:
    break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!ir_equal(a->args[i], b->args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Canonical s-expression rendering (stable across releases; used in reports,
// golden dumps and the declarative operator/candidate file formats).

namespace detail {

inline std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline void print_sexpr(std::ostringstream &os, const Ir &e) {
  switch (e->tag) {
  case IrTag::IntLit: os << e->ival; return;
  case IrTag::BoolLit: os << (e->bval ? "true" : "false"); return;
  case IrTag::Var: os << e->name; return;
  case IrTag::EmptySeq:
    os << "(empty-seq " << type_name(e->ty) << ")";
    return;
  default: break;
  }
  const char *head = nullptr;
  switch (e->tag) {
  case IrTag::Add: head = "+"; break;
  case IrTag::Sub: head = "-"; break;
  case IrTag::Mul: head = "*"; break;
  case IrTag::Lt: head = "<"; break;
  case IrTag::Le: head = "<="; break;
  case IrTag::Eq: head = "=="; break;
  case IrTag::And: head = "and"; break;
  case IrTag::Or: head = "or"; break;
  case IrTag::Not: head = "not"; break;
  case IrTag::Implies: head = "=>"; break;
  case IrTag::Ite: head = "ite"; break;
  case IrTag::SeqLit: head = "seq"; break;
  case IrTag::Len: head = "len"; break;
  case IrTag::Index: head = "index"; break;
  case IrTag::Append: head = "append"; break;
  case IrTag::Prepend: head = "prepend"; break;
  case IrTag::Slice: head = "slice"; break;
  case IrTag::Call: head = e->name.c_str(); break;
  default: head = "?"; break;
  }
  os << "(" << head;
  for (const auto &a : e->args) {
    os << " ";
    print_sexpr(os, a);
  }
  os << ")";
}

}  // namespace detail

inline std::string to_sexpr(const Ir &e) {
  std::ostringstream os;
  detail::print_sexpr(os, e);
  return os.str();
}

// ---------------------------------------------------------------------------
// S-expression reader. Accepts exactly what to_sexpr produces; used for the
// declarative operator file, candidate files and golden-dump comparisons.

namespace sexpr {

struct Node {
  // Either an atom or a list.
  bool is_atom = false;
  std::string atom;
  std::vector<Node> items;
};

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Reads all top-level forms.
  std::vector<Node> read_all() {
    std::vector<Node> out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_ws();
    }
    return out;
  }

  Node read() {
    skip_ws();
    if (pos_ >= text_.size())
      fail(ErrKind::SyntaxError, "unexpected end of s-expression input");
    if (text_[pos_] == '(') {
      ++pos_;
      Node n;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        n.items.push_back(read());
        skip_ws();
      }
      if (pos_ >= text_.size())
        fail(ErrKind::SyntaxError, "missing ')' in s-expression");
      ++pos_;
      return n;
    }
    if (text_[pos_] == ')')
      fail(ErrKind::SyntaxError, "unexpected ')' in s-expression");
    Node n;
    n.is_atom = true;
    size_t start = pos_;
    while (pos_ < text_.size() && !isspace((unsigned char)text_[pos_]) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    n.atom = std::string(text_.substr(start, pos_ - start));
    return n;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (isspace((unsigned char)c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

inline bool is_int_atom(const std::string &s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!isdigit((unsigned char)s[i])) return false;
  return true;
}

}  // namespace sexpr

inline IrType parse_type(const sexpr::Node &n) {
  if (n.is_atom) {
    if (n.atom == "Int") return IrType::Int;
    if (n.atom == "Bool") return IrType::Bool;
    fail(ErrKind::SyntaxError, "unknown type atom: " + n.atom);
  }
  // (Seq Int) or (Seq (Seq Int))
  if (n.items.size() == 2 && n.items[0].is_atom && n.items[0].atom == "Seq") {
    IrType e = parse_type(n.items[1]);
    return seq_of(e);
  }
  fail(ErrKind::SyntaxError, "malformed type s-expression");
}

inline Ir ir_from_sexpr(const sexpr::Node &n) {
  using namespace ir;
  if (n.is_atom) {
    if (n.atom == "true") return bool_lit(true);
    if (n.atom == "false") return bool_lit(false);
    if (sexpr::is_int_atom(n.atom)) return int_lit(std::stoll(n.atom));
    return var(n.atom);
  }
  if (n.items.empty() || !n.items[0].is_atom)
    fail(ErrKind::SyntaxError, "malformed expression s-expression");
  const std::string &h = n.items[0].atom;
  auto sub = [&](size_t i) { return ir_from_sexpr(n.items[i]); };
  auto want = [&](size_t k, const char *what) {
    if (n.items.size() != k + 1)
      fail(ErrKind::SyntaxError,
           std::string(what) + " expects " + std::to_string(k) + " arguments");
  };
  if (h == "+") { want(2, "+"); return add(sub(1), sub(2)); }
  if (h == "-") { want(2, "-"); return ir::sub(ir_from_sexpr(n.items[1]), ir_from_sexpr(n.items[2])); }
  if (h == "*") { want(2, "*"); return mul(sub(1), sub(2)); }
  if (h == "<") { want(2, "<"); return lt(sub(1), sub(2)); }
  if (h == "<=") { want(2, "<="); return le(sub(1), sub(2)); }
  if (h == "==") { want(2, "=="); return eq(sub(1), sub(2)); }
  if (h == "and") { want(2, "and"); return land(sub(1), sub(2)); }
  if (h == "or") { want(2, "or"); return lor(sub(1), sub(2)); }
  if (h == "not") { want(1, "not"); return lnot(sub(1)); }
  if (h == "=>") { want(2, "=>"); return implies(sub(1), sub(2)); }
  if (h == "ite") { want(3, "ite"); return ite(sub(1), sub(2), sub(3)); }
  if (h == "empty-seq") {
    want(1, "empty-seq");
    return empty_seq(parse_type(n.items[1]));
  }
  if (h == "seq") {
    std::vector<Ir> es;
    for (size_t i = 1; i < n.items.size(); ++i) es.push_back(sub(i));
    return seq_lit(std::move(es));
  }
  if (h == "len") { want(1, "len"); return len(sub(1)); }
  if (h == "index") { want(2, "index"); return index(sub(1), sub(2)); }
  if (h == "append") { want(2, "append"); return append(sub(1), sub(2)); }
  if (h == "prepend") { want(2, "prepend"); return prepend(sub(1), sub(2)); }
  if (h == "slice") { want(3, "slice"); return slice(sub(1), sub(2), sub(3)); }
  // Anything else is an operator call.
  std::vector<Ir> es;
  for (size_t i = 1; i < n.items.size(); ++i) es.push_back(sub(i));
  return call(h, std::move(es));
}

inline Ir parse_ir(const std::string &text) {
  sexpr::Reader r(text);
  return ir_from_sexpr(r.read());
}

// ---------------------------------------------------------------------------
// Substitution: capture-free simultaneous substitution of variables.
// The IR carries no binders, so no renaming is ever needed.

inline Ir substitute(const Ir &e, const std::map<std::string, Ir> &bindings) {
  switch (e->tag) {
  case IrTag::IntLit:
  case IrTag::BoolLit:
  case IrTag::EmptySeq:
    return e;
  case IrTag::Var: {
    auto it = bindings.find(e->name);
    return it == bindings.end() ? e : it->second;
  }
  default: {
    bool changed = false;
    std::vector<Ir> args;
    args.reserve(e->args.size());
    for (const auto &a : e->args) {
      Ir s = substitute(a, bindings);
      changed = changed || (s != a);
      args.push_back(std::move(s));
    }
    if (!changed) return e;
    auto n = std::make_shared<IrNode>(*e);
    n->args = std::move(args);
    return n;
  }
  }
}

// Collects free variables in deterministic first-occurrence order.
inline void free_vars(const Ir &e, std::vector<std::string> &out) {
  if (e->tag == IrTag::Var) {
    for (const auto &v : out)
      if (v == e->name) return;
    out.push_back(e->name);
    return;
  }
  for (const auto &a : e->args) free_vars(a, out);
}

// Collects call targets (transitively within this expression only).
inline void call_targets(const Ir &e, std::vector<std::string> &out) {
  if (e->tag == IrTag::Call) {
    bool seen = false;
    for (const auto &v : out) seen = seen || v == e->name;
    if (!seen) out.push_back(e->name);
  }
  for (const auto &a : e->args) call_targets(a, out);
}

}  // namespace liftc
