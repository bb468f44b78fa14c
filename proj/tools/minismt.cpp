// minismt: a small SMT-LIB v2.6 solver for quantifier-free formulas over
// unbounded integers and integer sequences with recursive function
// definitions (define-fun-rec). It speaks the protocol on stdin/stdout:
//
//   sat     -- a model was constructed and concretely validated
//   unsat   -- every branch of an exhaustive symbolic case analysis over the
//              (length-bounded) sequence space was refuted
//   unknown -- anything else
//
// The decision procedure grounds sequence constants per length assignment,
// unrolls recursive definitions (they terminate once their sequence
// arguments are ground), case-splits on symbolic indices and slice bounds,
// and refutes each resulting conjunction of polynomial atoms by equality
// substitution, constant folding and Fourier-Motzkin elimination. `unsat`
// requires in-script length bounds of the form (assert (<= (seq.len v) N))
// for every sequence constant; without them only sat/unknown are possible.
// Models are always re-evaluated against the original assertions before
// being reported.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace minismt {

using i64 = long long;

// ---------------------------------------------------------------------------
// S-expressions

struct SExpr {
  bool atom = false;
  std::string s;
  std::vector<SExpr> kids;
};

struct ParseError {
  std::string msg;
};

class SReader {
public:
  explicit SReader(const std::string &text) : t_(text) {}

  bool at_end() {
    skip();
    return pos_ >= t_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= t_.size()) throw ParseError{"unexpected end of input"};
    char c = t_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr e;
      skip();
      while (pos_ < t_.size() && t_[pos_] != ')') {
        e.kids.push_back(read());
        skip();
      }
      if (pos_ >= t_.size()) throw ParseError{"missing ')'"};
      ++pos_;
      return e;
    }
    if (c == ')') throw ParseError{"stray ')'"};
    SExpr e;
    e.atom = true;
    if (c == '"') {
      ++pos_;
      while (pos_ < t_.size() && t_[pos_] != '"') e.s += t_[pos_++];
      if (pos_ >= t_.size()) throw ParseError{"unterminated string"};
      ++pos_;
      return e;
    }
    if (c == '|') {
      ++pos_;
      while (pos_ < t_.size() && t_[pos_] != '|') e.s += t_[pos_++];
      if (pos_ >= t_.size()) throw ParseError{"unterminated symbol"};
      ++pos_;
      return e;
    }
    while (pos_ < t_.size() && !isspace((unsigned char)t_[pos_]) &&
           t_[pos_] != '(' && t_[pos_] != ')')
      e.s += t_[pos_++];
    return e;
  }

private:
  void skip() {
    while (pos_ < t_.size()) {
      if (t_[pos_] == ';') {
        while (pos_ < t_.size() && t_[pos_] != '\n') ++pos_;
      } else if (isspace((unsigned char)t_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }
  const std::string &t_;
  size_t pos_ = 0;
};

inline bool is_number(const std::string &s) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!isdigit((unsigned char)s[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sorts and terms

enum class Sort { Int, Bool, SeqInt, SeqMat };

inline std::string sort_str(Sort s) {
  switch (s) {
  case Sort::Int: return "Int";
  case Sort::Bool: return "Bool";
  case Sort::SeqInt: return "(Seq Int)";
  case Sort::SeqMat: return "(Seq (Seq Int))";
  }
  return "?";
}

inline Sort parse_sort(const SExpr &e) {
  if (e.atom) {
    if (e.s == "Int") return Sort::Int;
    if (e.s == "Bool") return Sort::Bool;
    throw ParseError{"unknown sort " + e.s};
  }
  if (e.kids.size() == 2 && e.kids[0].atom && e.kids[0].s == "Seq") {
    Sort inner = parse_sort(e.kids[1]);
    if (inner == Sort::Int) return Sort::SeqInt;
    if (inner == Sort::SeqInt) return Sort::SeqMat;
  }
  throw ParseError{"unsupported sort"};
}

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum K { Num, BoolC, Var, App } k = Num;
  i64 num = 0;
  bool b = false;
  std::string head;  // Var name or App head
  std::vector<TermP> args;
};

inline TermP mk_num(i64 v) {
  auto t = std::make_shared<Term>();
  t->k = Term::Num;
  t->num = v;
  return t;
}
inline TermP mk_bool(bool v) {
  auto t = std::make_shared<Term>();
  t->k = Term::BoolC;
  t->b = v;
  return t;
}
inline TermP mk_var(std::string n) {
  auto t = std::make_shared<Term>();
  t->k = Term::Var;
  t->head = std::move(n);
  return t;
}
inline TermP mk_app(std::string h, std::vector<TermP> args) {
  auto t = std::make_shared<Term>();
  t->k = Term::App;
  t->head = std::move(h);
  t->args = std::move(args);
  return t;
}

struct FunDef {
  std::string name;
  std::vector<std::pair<std::string, Sort>> params;
  Sort ret = Sort::Int;
  TermP body;
};

struct Script {
  std::vector<std::pair<std::string, Sort>> consts;  // declaration order
  std::map<std::string, Sort> const_sorts;
  std::map<std::string, FunDef> rec_funs;
  std::vector<TermP> asserts;
  bool has_uninterpreted = false;
};

// Macro table for define-fun: inlined at conversion time.
struct Macro {
  std::vector<std::string> params;
  TermP body;
};

inline TermP substitute(const TermP &t,
                        const std::map<std::string, TermP> &sub) {
  switch (t->k) {
  case Term::Num:
  case Term::BoolC:
    return t;
  case Term::Var: {
    auto it = sub.find(t->head);
    return it == sub.end() ? t : it->second;
  }
  case Term::App: {
    std::vector<TermP> args;
    args.reserve(t->args.size());
    for (const auto &a : t->args) args.push_back(substitute(a, sub));
    return mk_app(t->head, std::move(args));
  }
  }
  return t;
}

class TermBuilder {
public:
  explicit TermBuilder(const std::map<std::string, Macro> &macros)
      : macros_(macros) {}

  TermP convert(const SExpr &e, const std::map<std::string, TermP> &scope) {
    if (e.atom) {
      if (is_number(e.s)) return mk_num(std::stoll(e.s));
      if (e.s == "true") return mk_bool(true);
      if (e.s == "false") return mk_bool(false);
      auto it = scope.find(e.s);
      if (it != scope.end()) return it->second;
      return mk_var(e.s);
    }
    if (e.kids.empty()) throw ParseError{"empty application"};
    // (as seq.empty SORT)
    if (e.kids[0].atom && e.kids[0].s == "as") {
      if (e.kids.size() == 3 && e.kids[1].atom && e.kids[1].s == "seq.empty") {
        Sort s = parse_sort(e.kids[2]);
        return mk_app(s == Sort::SeqMat ? "seq.empty.mat" : "seq.empty", {});
      }
      throw ParseError{"unsupported 'as' form"};
    }
    if (e.kids[0].atom && e.kids[0].s == "let") {
      if (e.kids.size() != 3) throw ParseError{"let"};
      std::map<std::string, TermP> inner = scope;
      for (const auto &b : e.kids[1].kids) {
        if (b.atom || b.kids.size() != 2 || !b.kids[0].atom)
          throw ParseError{"let binding"};
        inner[b.kids[0].s] = convert(b.kids[1], scope);  // parallel let
      }
      return convert(e.kids[2], inner);
    }
    if (!e.kids[0].atom) throw ParseError{"non-atomic application head"};
    const std::string &h = e.kids[0].s;
    std::vector<TermP> args;
    for (size_t i = 1; i < e.kids.size(); ++i)
      args.push_back(convert(e.kids[i], scope));
    auto m = macros_.find(h);
    if (m != macros_.end()) {
      if (m->second.params.size() != args.size())
        throw ParseError{"arity of " + h};
      std::map<std::string, TermP> sub;
      for (size_t i = 0; i < args.size(); ++i)
        sub[m->second.params[i]] = args[i];
      return substitute(m->second.body, sub);
    }
    return mk_app(h, std::move(args));
  }

private:
  const std::map<std::string, Macro> &macros_;
};

// ---------------------------------------------------------------------------
// Type checking (also the "parse cleanly" guarantee for emitted scripts)

struct TypeError {
  std::string msg;
};

class TypeChecker {
public:
  TypeChecker(const Script &sc) : sc_(sc) {}

  Sort check(const TermP &t, const std::map<std::string, Sort> &env) {
    switch (t->k) {
    case Term::Num: return Sort::Int;
    case Term::BoolC: return Sort::Bool;
    case Term::Var: {
      auto it = env.find(t->head);
      if (it != env.end()) return it->second;
      auto c = sc_.const_sorts.find(t->head);
      if (c != sc_.const_sorts.end()) return c->second;
      throw TypeError{"unbound symbol " + t->head};
    }
    case Term::App: return check_app(t, env);
    }
    throw TypeError{"bad term"};
  }

private:
  Sort check_app(const TermP &t, const std::map<std::string, Sort> &env) {
    const std::string &h = t->head;
    auto n = t->args.size();
    auto arg = [&](size_t i) { return check(t->args[i], env); };
    auto all_int = [&]() {
      for (size_t i = 0; i < n; ++i)
        if (arg(i) != Sort::Int) throw TypeError{h + ": int expected"};
    };
    auto all_bool = [&]() {
      for (size_t i = 0; i < n; ++i)
        if (arg(i) != Sort::Bool) throw TypeError{h + ": bool expected"};
    };
    if (h == "+" || h == "*") {
      if (n < 2) throw TypeError{h};
      all_int();
      return Sort::Int;
    }
    if (h == "-") {
      if (n < 1) throw TypeError{h};
      all_int();
      return Sort::Int;
    }
    if (h == "<" || h == "<=" || h == ">" || h == ">=") {
      if (n != 2) throw TypeError{h};
      all_int();
      return Sort::Bool;
    }
    if (h == "and" || h == "or") {
      all_bool();
      return Sort::Bool;
    }
    if (h == "=>") {
      if (n != 2) throw TypeError{h};
      all_bool();
      return Sort::Bool;
    }
    if (h == "not") {
      if (n != 1) throw TypeError{h};
      all_bool();
      return Sort::Bool;
    }
    if (h == "=" || h == "distinct") {
      if (n != 2) throw TypeError{h};
      Sort a = arg(0), b = arg(1);
      if (a != b) throw TypeError{h + ": sort mismatch"};
      return Sort::Bool;
    }
    if (h == "ite") {
      if (n != 3) throw TypeError{h};
      if (arg(0) != Sort::Bool) throw TypeError{"ite condition"};
      Sort a = arg(1), b = arg(2);
      if (a != b) throw TypeError{"ite branches"};
      return a;
    }
    if (h == "seq.empty") return Sort::SeqInt;
    if (h == "seq.empty.mat") return Sort::SeqMat;
    if (h == "seq.unit") {
      if (n != 1) throw TypeError{h};
      Sort a = arg(0);
      if (a == Sort::Int) return Sort::SeqInt;
      if (a == Sort::SeqInt) return Sort::SeqMat;
      throw TypeError{"seq.unit"};
    }
    if (h == "seq.++") {
      if (n < 1) throw TypeError{h};
      Sort a = arg(0);
      if (a != Sort::SeqInt && a != Sort::SeqMat) throw TypeError{h};
      for (size_t i = 1; i < n; ++i)
        if (arg(i) != a) throw TypeError{h};
      return a;
    }
    if (h == "seq.len") {
      if (n != 1) throw TypeError{h};
      Sort a = arg(0);
      if (a != Sort::SeqInt && a != Sort::SeqMat) throw TypeError{h};
      return Sort::Int;
    }
    if (h == "seq.nth") {
      if (n != 2) throw TypeError{h};
      Sort a = arg(0);
      if (arg(1) != Sort::Int) throw TypeError{h};
      if (a == Sort::SeqInt) return Sort::Int;
      if (a == Sort::SeqMat) return Sort::SeqInt;
      throw TypeError{h};
    }
    if (h == "seq.extract") {
      if (n != 3) throw TypeError{h};
      Sort a = arg(0);
      if (arg(1) != Sort::Int || arg(2) != Sort::Int) throw TypeError{h};
      if (a != Sort::SeqInt && a != Sort::SeqMat) throw TypeError{h};
      return a;
    }
    auto f = sc_.rec_funs.find(h);
    if (f != sc_.rec_funs.end()) {
      if (f->second.params.size() != n) throw TypeError{"arity of " + h};
      for (size_t i = 0; i < n; ++i)
        if (arg(i) != f->second.params[i].second)
          throw TypeError{h + ": argument sort"};
      return f->second.ret;
    }
    throw TypeError{"unknown function " + h};
  }

  const Script &sc_;
};

// ---------------------------------------------------------------------------
// Polynomials over ground integer atoms

using Mono = std::vector<int>;  // sorted variable ids, with multiplicity

// Sparse polynomial over a flat sorted term vector; polynomials here are
// tiny (a handful of terms), so linear/merge operations beat node-based
// containers by a wide margin.
struct Poly {
  std::vector<std::pair<Mono, i64>> t;  // sorted by monomial; no zero coeffs

  static Poly constant(i64 c) {
    Poly p;
    if (c) p.t.emplace_back(Mono{}, c);
    return p;
  }
  static Poly variable(int id) {
    Poly p;
    p.t.emplace_back(Mono{id}, 1);
    return p;
  }
  bool is_const() const {
    return t.empty() || (t.size() == 1 && t[0].first.empty());
  }
  i64 const_val() const {
    return (!t.empty() && t[0].first.empty()) ? t[0].second : 0;
  }
  i64 coeff(const Mono &m) const {
    auto it = std::lower_bound(
        t.begin(), t.end(), m,
        [](const auto &a, const Mono &key) { return a.first < key; });
    return (it != t.end() && it->first == m) ? it->second : 0;
  }
  void erase(const Mono &m) {
    auto it = std::lower_bound(
        t.begin(), t.end(), m,
        [](const auto &a, const Mono &key) { return a.first < key; });
    if (it != t.end() && it->first == m) t.erase(it);
  }
  void add_term(const Mono &m, i64 c) {
    if (!c) return;
    auto it = std::lower_bound(
        t.begin(), t.end(), m,
        [](const auto &a, const Mono &key) { return a.first < key; });
    if (it != t.end() && it->first == m) {
      it->second += c;
      if (!it->second) t.erase(it);
    } else {
      t.insert(it, {m, c});
    }
  }
  static Poly merge(const Poly &a, const Poly &b, i64 sign) {
    Poly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() || j < b.t.size()) {
      if (j >= b.t.size() || (i < a.t.size() && a.t[i].first < b.t[j].first)) {
        r.t.push_back(a.t[i++]);
      } else if (i >= a.t.size() || b.t[j].first < a.t[i].first) {
        r.t.emplace_back(b.t[j].first, sign * b.t[j].second);
        ++j;
      } else {
        i64 c = a.t[i].second + sign * b.t[j].second;
        if (c) r.t.emplace_back(a.t[i].first, c);
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend Poly operator+(const Poly &a, const Poly &b) { return merge(a, b, 1); }
  friend Poly operator-(const Poly &a, const Poly &b) { return merge(a, b, -1); }
  friend Poly operator*(const Poly &a, const Poly &b) {
    Poly r;
    for (const auto &[m1, c1] : a.t)
      for (const auto &[m2, c2] : b.t) {
        Mono m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        std::sort(m.begin(), m.end());
        r.add_term(m, c1 * c2);
      }
    return r;
  }
  bool operator==(const Poly &o) const { return t == o.t; }
  bool operator<(const Poly &o) const { return t < o.t; }
};

struct Atom {
  enum Op { EQ0, NE0, LE0 } op = EQ0;  // p == 0, p != 0, p <= 0
  Poly p;
};

inline bool operator<(const Atom &a, const Atom &b) {
  if (a.op != b.op) return a.op < b.op;
  return a.p < b.p;
}

// Formulas over atoms; built with constant folding.
struct Formula;
using FormP = std::shared_ptr<const Formula>;

struct Formula {
  enum K { FTrue, FFalse, FAtom, FAnd, FOr, FNot } k = FTrue;
  Atom atom;
  std::vector<FormP> kids;
};

inline FormP f_true() {
  static FormP t = std::make_shared<Formula>();
  return t;
}
inline FormP f_false() {
  static FormP f = [] {
    auto x = std::make_shared<Formula>();
    x->k = Formula::FFalse;
    return x;
  }();
  return f;
}
inline FormP f_atom(Atom a) {
  if (a.p.is_const()) {
    i64 c = a.p.const_val();
    bool v = a.op == Atom::EQ0 ? c == 0 : a.op == Atom::NE0 ? c != 0 : c <= 0;
    return v ? f_true() : f_false();
  }
  auto x = std::make_shared<Formula>();
  x->k = Formula::FAtom;
  x->atom = std::move(a);
  return x;
}
inline FormP f_and(std::vector<FormP> ks) {
  std::vector<FormP> out;
  for (auto &k : ks) {
    if (k->k == Formula::FFalse) return f_false();
    if (k->k == Formula::FTrue) continue;
    if (k->k == Formula::FAnd) {
      for (auto &g : k->kids) out.push_back(g);
    } else {
      out.push_back(k);
    }
  }
  if (out.empty()) return f_true();
  if (out.size() == 1) return out[0];
  auto x = std::make_shared<Formula>();
  x->k = Formula::FAnd;
  x->kids = std::move(out);
  return x;
}
inline FormP f_or(std::vector<FormP> ks) {
  std::vector<FormP> out;
  for (auto &k : ks) {
    if (k->k == Formula::FTrue) return f_true();
    if (k->k == Formula::FFalse) continue;
    if (k->k == Formula::FOr) {
      for (auto &g : k->kids) out.push_back(g);
    } else {
      out.push_back(k);
    }
  }
  if (out.empty()) return f_false();
  if (out.size() == 1) return out[0];
  auto x = std::make_shared<Formula>();
  x->k = Formula::FOr;
  x->kids = std::move(out);
  return x;
}
inline FormP f_not(FormP k) {
  if (k->k == Formula::FTrue) return f_false();
  if (k->k == Formula::FFalse) return f_true();
  if (k->k == Formula::FNot) return k->kids[0];
  auto x = std::make_shared<Formula>();
  x->k = Formula::FNot;
  x->kids = {std::move(k)};
  return x;
}

// Negation of an atom stays an atom over integers.
inline Atom negate_atom(const Atom &a) {
  switch (a.op) {
  case Atom::EQ0: return {Atom::NE0, a.p};
  case Atom::NE0: return {Atom::EQ0, a.p};
  case Atom::LE0: {  // not(p <= 0)  <=>  p >= 1  <=>  1 - p <= 0
    Poly q = Poly::constant(1) - a.p;
    return {Atom::LE0, q};
  }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Symbolic values and the branching evaluator

struct SymSeq {
  std::vector<Poly> elems;
};

struct SymVal {
  Sort sort = Sort::Int;
  Poly p;       // Int
  FormP f;      // Bool
  SymSeq seq;   // SeqInt
};

struct Budget {
  long long ops = 0;
  long long limit = 24000000;
  bool exceeded = false;
  bool charge(long long n = 1) {
    ops += n;
    if (ops > limit) exceeded = true;
    return !exceeded;
  }
};

// Path constraints are persistent cons chains: copying a path is one
// reference bump and extending it allocates a single node, so the branch
// cross products stop churning vectors of shared pointers.
struct PathNode;
using PathLink = std::shared_ptr<const PathNode>;
struct PathNode {
  FormP f;
  PathLink tail;
};

class Path {
public:
  void push_back(FormP f) {
    head_ = std::make_shared<const PathNode>(PathNode{std::move(f), head_});
  }
  void append(const Path &o) {
    for (const PathNode *n = o.head_.get(); n; n = n->tail.get())
      push_back(n->f);
  }
  template <typename F>
  void for_each(F fn) const {
    for (const PathNode *n = head_.get(); n; n = n->tail.get()) fn(n->f);
  }
  bool empty() const { return head_ == nullptr; }

private:
  PathLink head_;
};

struct Alt {
  Path path;  // extra conjuncts for this alternative
  SymVal v;
};

// Cheap feasibility screen for a path: detects direct conflicts between
// single-variable linear atoms (x == c1 vs x == c2, or bounds that cross).
// Only reports false on genuine arithmetic conflicts, so pruning on it is
// sound for both sat and unsat.
inline bool quick_feasible(const Path &path) {
  // Flat scratch tables; linear scans beat maps at these sizes and the
  // function runs millions of times.
  constexpr int kMax = 48;
  int eqVar[kMax];
  i64 eqVal[kMax];
  int eqN = 0;
  int lbVar[kMax];
  i64 lbVal[kMax];
  int lbN = 0;
  int ubVar[kMax];
  i64 ubVal[kMax];
  int ubN = 0;
  bool bad = false;

  auto visit = [&](const Atom &a) -> bool {
    if (a.p.t.size() > 2) return true;
    int var = 0;
    i64 coef = 0, cst = 0;
    for (const auto &[m, c] : a.p.t) {
      if (m.empty()) {
        cst = c;
      } else if (m.size() == 1) {
        var = m[0];
        coef = c;
      } else {
        return true;  // nonlinear: skip
      }
    }
    if (coef != 1 && coef != -1) return true;
    if (a.op == Atom::EQ0) {
      i64 v = coef == 1 ? -cst : cst;
      for (int i = 0; i < eqN; ++i)
        if (eqVar[i] == var) return eqVal[i] == v;
      if (eqN < kMax) {
        eqVar[eqN] = var;
        eqVal[eqN] = v;
        ++eqN;
      }
      return true;
    }
    if (a.op == Atom::LE0) {
      if (coef == 1) {  // x + cst <= 0  =>  x <= -cst
        i64 b = -cst;
        for (int i = 0; i < ubN; ++i)
          if (ubVar[i] == var) {
            if (b < ubVal[i]) ubVal[i] = b;
            return true;
          }
        if (ubN < kMax) {
          ubVar[ubN] = var;
          ubVal[ubN] = b;
          ++ubN;
        }
      } else {  // -x + cst <= 0  =>  x >= cst
        i64 b = cst;
        for (int i = 0; i < lbN; ++i)
          if (lbVar[i] == var) {
            if (b > lbVal[i]) lbVal[i] = b;
            return true;
          }
        if (lbN < kMax) {
          lbVar[lbN] = var;
          lbVal[lbN] = b;
          ++lbN;
        }
      }
    }
    return true;
  };

  path.for_each([&](const FormP &f) {
    if (bad) return;
    if (f->k == Formula::FFalse) {
      bad = true;
      return;
    }
    if (f->k == Formula::FAtom) {
      if (!visit(f->atom)) bad = true;
    } else if (f->k == Formula::FAnd) {
      for (const auto &k : f->kids)
        if (k->k == Formula::FAtom && !visit(k->atom)) {
          bad = true;
          return;
        }
    }
  });
  if (bad) return false;
  for (int i = 0; i < eqN; ++i) {
    for (int j = 0; j < lbN; ++j)
      if (lbVar[j] == eqVar[i] && eqVal[i] < lbVal[j]) return false;
    for (int j = 0; j < ubN; ++j)
      if (ubVar[j] == eqVar[i] && eqVal[i] > ubVal[j]) return false;
  }
  for (int i = 0; i < lbN; ++i)
    for (int j = 0; j < ubN; ++j)
      if (ubVar[j] == lbVar[i] && ubVal[j] < lbVal[i]) return false;
  return true;
}


class SymEval {
public:
  SymEval(const Script &sc, Budget &budget) : sc_(sc), budget_(budget) {}

  // All alternatives for `t` under `bind`. Empty result means give up.
  std::vector<Alt> eval(const TermP &t,
                        const std::map<std::string, SymVal> &bind,
                        int fuel = 4000) {
    if (!budget_.charge() || fuel <= 0) {
      budget_.exceeded = true;
      return {};
    }
    switch (t->k) {
    case Term::Num: {
      SymVal v;
      v.sort = Sort::Int;
      v.p = Poly::constant(t->num);
      return {{{}, v}};
    }
    case Term::BoolC: {
      SymVal v;
      v.sort = Sort::Bool;
      v.f = t->b ? f_true() : f_false();
      return {{{}, v}};
    }
    case Term::Var: {
      auto it = bind.find(t->head);
      if (it == bind.end()) return {};  // matrices and the like: give up
      return {{{}, it->second}};
    }
    case Term::App:
      return eval_app(t, bind, fuel);
    }
    return {};
  }

private:
  using Binding = std::map<std::string, SymVal>;

  // Cartesian combination of child alternatives.
  bool eval_args(const TermP &t, const Binding &bind, int fuel,
                 std::vector<std::vector<Alt>> &out) {
    for (const auto &a : t->args) {
      auto alts = eval(a, bind, fuel - 1);
      if (alts.empty()) return false;
      out.push_back(std::move(alts));
    }
    return true;
  }

  template <typename F>
  std::vector<Alt> combine(std::vector<std::vector<Alt>> &argAlts, F make) {
    std::vector<Alt> out;
    std::vector<size_t> pick(argAlts.size(), 0);
    for (;;) {
      if (!budget_.charge()) return {};
      Path path;
      std::vector<const SymVal *> vals;
      for (size_t i = 0; i < argAlts.size(); ++i) {
        const Alt &a = argAlts[i][pick[i]];
        path.append(a.path);
        vals.push_back(&a.v);
      }
      if (quick_feasible(path)) {
        std::vector<Alt> sub = make(vals);
        for (auto &s : sub) {
          Alt r;
          r.path = path;
          r.path.append(s.path);
          r.v = std::move(s.v);
          if (quick_feasible(r.path)) out.push_back(std::move(r));
        }
      }
      size_t pos = argAlts.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++pick[pos] < argAlts[pos].size()) {
          done = false;
          break;
        }
        pick[pos] = 0;
      }
      if (done) break;
      if (out.size() > 60000) {
        budget_.exceeded = true;
        return {};
      }
    }
    return out;
  }

  static Alt one(SymVal v) { return {{}, std::move(v)}; }
  static SymVal vint(Poly p) {
    SymVal v;
    v.sort = Sort::Int;
    v.p = std::move(p);
    return v;
  }
  static SymVal vbool(FormP f) {
    SymVal v;
    v.sort = Sort::Bool;
    v.f = std::move(f);
    return v;
  }
  static SymVal vseq(SymSeq s) {
    SymVal v;
    v.sort = Sort::SeqInt;
    v.seq = std::move(s);
    return v;
  }

  FormP seq_eq(const SymSeq &a, const SymSeq &b) {
    if (a.elems.size() != b.elems.size()) return f_false();
    std::vector<FormP> parts;
    for (size_t i = 0; i < a.elems.size(); ++i)
      parts.push_back(f_atom({Atom::EQ0, a.elems[i] - b.elems[i]}));
    return f_and(std::move(parts));
  }

  std::vector<Alt> eval_app(const TermP &t, const Binding &bind, int fuel) {
    const std::string &h = t->head;

    // Recursive function application: evaluate args, then unfold.
    auto rf = sc_.rec_funs.find(h);
    if (rf != sc_.rec_funs.end()) {
      std::vector<std::vector<Alt>> argAlts;
      if (!eval_args(t, bind, fuel, argAlts)) return {};
      const FunDef &fd = rf->second;
      std::vector<Alt> out;
      std::vector<size_t> pick(argAlts.size(), 0);
      for (;;) {
        if (!budget_.charge(4)) return {};
        Binding inner;
        Path path;
        for (size_t i = 0; i < argAlts.size(); ++i) {
          const Alt &a = argAlts[i][pick[i]];
          path.append(a.path);
          inner[fd.params[i].first] = a.v;
        }
        if (quick_feasible(path)) {
          auto sub = eval(fd.body, inner, fuel - 1);
          if (sub.empty() && budget_.exceeded) return {};
          for (auto &s : sub) {
            Alt r;
            r.path = path;
            r.path.append(s.path);
            r.v = std::move(s.v);
            if (quick_feasible(r.path)) out.push_back(std::move(r));
          }
        }
        size_t pos = argAlts.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++pick[pos] < argAlts[pos].size()) {
            done = false;
            break;
          }
          pick[pos] = 0;
        }
        if (done || argAlts.empty()) break;
      }
      return out;
    }

    if (h == "seq.empty") return {one(vseq({}))};
    if (h == "seq.empty.mat") return {};  // matrices unsupported in solving

    // Lazy ite: only the taken branch is evaluated when the condition is
    // decided, otherwise both branches are explored under path constraints.
    // Eager evaluation here would unroll recursive definitions forever.
    if (h == "ite") {
      auto condAlts = eval(t->args[0], bind, fuel - 1);
      if (condAlts.empty()) return {};
      std::vector<Alt> out;
      for (const auto &ca : condAlts) {
        const FormP c = ca.v.f ? ca.v.f : f_false();
        auto take = [&](const TermP &branch, FormP guard) {
          auto sub = eval(branch, bind, fuel - 1);
          if (sub.empty()) return false;
          for (auto &s : sub) {
            Alt r;
            r.path = ca.path;
            if (guard) r.path.push_back(guard);
            r.path.append(s.path);
            r.v = std::move(s.v);
            if (quick_feasible(r.path)) out.push_back(std::move(r));
          }
          return true;
        };
        if (c->k == Formula::FTrue) {
          if (!take(t->args[1], nullptr)) return {};
        } else if (c->k == Formula::FFalse) {
          if (!take(t->args[2], nullptr)) return {};
        } else {
          // Peek at the branch sort cheaply: bool-valued ite folds into a
          // formula; other sorts fork the world.
          auto thenAlts = eval(t->args[1], bind, fuel - 1);
          if (thenAlts.empty()) return {};
          if (thenAlts[0].v.sort == Sort::Bool) {
            auto elseAlts = eval(t->args[2], bind, fuel - 1);
            if (elseAlts.empty()) return {};
            for (const auto &ta : thenAlts)
              for (const auto &ea : elseAlts) {
                Alt r;
                r.path = ca.path;
                r.path.append(ta.path);
                r.path.append(ea.path);
                SymVal v;
                v.sort = Sort::Bool;
                v.f = f_or({f_and({c, ta.v.f}), f_and({f_not(c), ea.v.f})});
                r.v = std::move(v);
                if (quick_feasible(r.path)) out.push_back(std::move(r));
              }
          } else {
            for (const auto &ta : thenAlts) {
              Alt r;
              r.path = ca.path;
              r.path.push_back(c);
              r.path.append(ta.path);
              r.v = ta.v;
              if (quick_feasible(r.path)) out.push_back(std::move(r));
            }
            auto elseAlts = eval(t->args[2], bind, fuel - 1);
            if (elseAlts.empty()) return {};
            for (const auto &ea : elseAlts) {
              Alt r;
              r.path = ca.path;
              r.path.push_back(f_not(c));
              r.path.append(ea.path);
              r.v = ea.v;
              if (quick_feasible(r.path)) out.push_back(std::move(r));
            }
          }
        }
      }
      return out;
    }

    // Short-circuiting connectives: arguments are evaluated left to right
    // and a decided partial result skips the remaining work. This keeps the
    // alternative cross product proportional to the live branches only.
    if (h == "and" || h == "or" || h == "=>") {
      bool isAnd = h == "and";
      bool isImp = h == "=>";
      struct Partial {
        Path path;
        std::vector<FormP> parts;  // collected operand formulas
        FormP decided;             // set once the result is known
      };
      std::vector<Partial> live;
      live.emplace_back();
      for (size_t ai = 0; ai < t->args.size(); ++ai) {
        bool anyOpen = false;
        for (const auto &p : live) anyOpen = anyOpen || !p.decided;
        if (!anyOpen) break;
        auto argA = eval(t->args[ai], bind, fuel - 1);
        if (argA.empty()) return {};
        std::vector<Partial> next;
        for (const auto &p : live) {
          if (p.decided) {
            next.push_back(p);
            continue;
          }
          for (const auto &aa : argA) {
            Partial q = p;
            q.path.append(aa.path);
            if (!quick_feasible(q.path)) continue;
            FormP f = aa.v.f ? aa.v.f : f_false();
            if (isImp && ai == 0) f = f_not(f);
            if (f->k == (isAnd ? Formula::FFalse : Formula::FTrue)) {
              q.decided = isAnd ? f_false() : f_true();
            } else if (f->k != (isAnd ? Formula::FTrue : Formula::FFalse)) {
              q.parts.push_back(f);
            }
            next.push_back(std::move(q));
          }
        }
        live = std::move(next);
        if (live.size() > 60000) {
          budget_.exceeded = true;
          return {};
        }
      }
      std::vector<Alt> out;
      for (auto &p : live) {
        FormP f = p.decided ? p.decided
                            : (isAnd ? f_and(std::move(p.parts))
                                     : f_or(std::move(p.parts)));
        Alt r;
        r.path = std::move(p.path);
        r.v = vbool(std::move(f));
        out.push_back(std::move(r));
      }
      return out;
    }

    std::vector<std::vector<Alt>> argAlts;
    if (!eval_args(t, bind, fuel, argAlts)) return {};

    auto intFold = [&](auto f, i64 unitFirst) {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        Poly acc = vs[0]->p;
        if (vs.size() == 1 && unitFirst) acc = Poly::constant(0) - acc;
        for (size_t i = 1; i < vs.size(); ++i) acc = f(acc, vs[i]->p);
        return std::vector<Alt>{one(vint(acc))};
      });
    };

    if (h == "+")
      return intFold([](const Poly &a, const Poly &b) { return a + b; }, 0);
    if (h == "-")
      return intFold([](const Poly &a, const Poly &b) { return a - b; }, 1);
    if (h == "*")
      return intFold([](const Poly &a, const Poly &b) { return a * b; }, 0);

    if (h == "<" || h == "<=" || h == ">" || h == ">=") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        Poly d;
        if (h == "<") d = vs[0]->p - vs[1]->p + Poly::constant(1);
        else if (h == "<=") d = vs[0]->p - vs[1]->p;
        else if (h == ">") d = vs[1]->p - vs[0]->p + Poly::constant(1);
        else d = vs[1]->p - vs[0]->p;
        return std::vector<Alt>{one(vbool(f_atom({Atom::LE0, d})))};
      });
    }
    if (h == "=" || h == "distinct") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        FormP f;
        if (vs[0]->sort == Sort::Int)
          f = f_atom({Atom::EQ0, vs[0]->p - vs[1]->p});
        else if (vs[0]->sort == Sort::Bool)
          f = f_or({f_and({vs[0]->f, vs[1]->f}),
                    f_and({f_not(vs[0]->f), f_not(vs[1]->f)})});
        else
          f = seq_eq(vs[0]->seq, vs[1]->seq);
        if (h == "distinct") f = f_not(f);
        return std::vector<Alt>{one(vbool(f))};
      });
    }
    if (h == "not") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        return std::vector<Alt>{one(vbool(f_not(vs[0]->f)))};
      });
    }
    if (h == "seq.unit") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        SymSeq s;
        s.elems = {vs[0]->p};
        return std::vector<Alt>{one(vseq(s))};
      });
    }
    if (h == "seq.++") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        SymSeq s;
        for (const auto *v : vs)
          s.elems.insert(s.elems.end(), v->seq.elems.begin(),
                         v->seq.elems.end());
        return std::vector<Alt>{one(vseq(s))};
      });
    }
    if (h == "seq.len") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        return std::vector<Alt>{
            one(vint(Poly::constant((i64)vs[0]->seq.elems.size())))};
      });
    }
    if (h == "seq.nth") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        const SymSeq &s = vs[0]->seq;
        const Poly &idx = vs[1]->p;
        i64 L = (i64)s.elems.size();
        if (idx.is_const()) {
          i64 i = idx.const_val();
          Poly v = (i >= 0 && i < L) ? s.elems[(size_t)i] : Poly::constant(0);
          return std::vector<Alt>{one(vint(v))};
        }
        std::vector<Alt> alts;
        for (i64 i = 0; i < L; ++i) {
          Alt a = one(vint(s.elems[(size_t)i]));
          a.path.push_back(f_atom({Atom::EQ0, idx - Poly::constant(i)}));
          alts.push_back(std::move(a));
        }
        // Out of range reads as 0 (arbitrary but fixed).
        Alt neg = one(vint(Poly::constant(0)));
        neg.path.push_back(f_atom({Atom::LE0, idx + Poly::constant(1)}));
        alts.push_back(std::move(neg));
        Alt big = one(vint(Poly::constant(0)));
        big.path.push_back(f_atom({Atom::LE0, Poly::constant(L) - idx}));
        alts.push_back(std::move(big));
        return alts;
      });
    }
    if (h == "seq.extract") {
      return combine(argAlts, [&](const std::vector<const SymVal *> &vs) {
        const SymSeq &s = vs[0]->seq;
        const Poly &off = vs[1]->p;
        const Poly &cnt = vs[2]->p;
        i64 L = (i64)s.elems.size();
        auto take = [&](i64 o, i64 n) {
          SymSeq r;
          if (o >= 0 && o < L && n > 0) {
            i64 m = std::min(n, L - o);
            for (i64 i = 0; i < m; ++i) r.elems.push_back(s.elems[(size_t)(o + i)]);
          }
          return r;
        };
        if (off.is_const() && cnt.is_const())
          return std::vector<Alt>{
              one(vseq(take(off.const_val(), cnt.const_val())))};
        std::vector<Alt> alts;
        // Invalid offset or length: empty result.
        {
          Alt a = one(vseq({}));
          a.path.push_back(f_atom({Atom::LE0, off + Poly::constant(1)}));
          alts.push_back(std::move(a));
          Alt b = one(vseq({}));
          b.path.push_back(f_atom({Atom::LE0, Poly::constant(L) - off}));
          alts.push_back(std::move(b));
          Alt c = one(vseq({}));
          c.path.push_back(f_atom({Atom::LE0, cnt}));
          c.path.push_back(f_atom({Atom::LE0, Poly::constant(0) - off}));
          c.path.push_back(f_atom({Atom::LE0, off - Poly::constant(L - 1)}));
          alts.push_back(std::move(c));
        }
        for (i64 o = 0; o < L; ++o) {
          // count below the available suffix
          for (i64 n = 1; n < L - o; ++n) {
            Alt a = one(vseq(take(o, n)));
            a.path.push_back(f_atom({Atom::EQ0, off - Poly::constant(o)}));
            a.path.push_back(f_atom({Atom::EQ0, cnt - Poly::constant(n)}));
            alts.push_back(std::move(a));
          }
          // count at least the available suffix
          Alt a = one(vseq(take(o, L - o)));
          a.path.push_back(f_atom({Atom::EQ0, off - Poly::constant(o)}));
          a.path.push_back(
              f_atom({Atom::LE0, Poly::constant(L - o) - cnt}));
          alts.push_back(std::move(a));
        }
        return alts;
      });
    }
    return {};  // unknown head: give up (answer will be unknown)
  }

  const Script &sc_;
  Budget &budget_;
};

// ---------------------------------------------------------------------------
// Conjunction decision: substitution, constant folding, Fourier-Motzkin
// refutation, then bounded backtracking model search.

struct ConjDecision {
  enum K { Refuted, Model, Undecided } k = Undecided;
  std::map<int, i64> assignment;  // var id -> value (Model only)
};

class ConjSolver {
public:
  explicit ConjSolver(Budget &budget) : budget_(budget) {}

  struct Presolved {
    bool refuted = false;
    std::vector<std::pair<int, Poly>> chain;  // substitution, in order
    std::vector<Atom> residual;               // substituted, non-constant
  };

  // Eliminates unit-coefficient equality variables and folds constants.
  Presolved presolve(std::vector<Atom> atoms) {
    Presolved out;
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].op != Atom::EQ0) continue;
        auto pick = unit_var(atoms[i].p);
        if (!pick) continue;
        auto [var, rest] = *pick;
        Poly def = rest;  // var == def
        out.chain.emplace_back(var, def);
        std::vector<Atom> next;
        next.reserve(atoms.size() - 1);
        for (size_t j = 0; j < atoms.size(); ++j) {
          if (j == i) continue;
          if (poly_has(atoms[j].p, var))
            next.push_back({atoms[j].op, subst_var(atoms[j].p, var, def)});
          else
            next.push_back(std::move(atoms[j]));
        }
        atoms = std::move(next);
        changed = true;
        break;
      }
      if (!budget_.charge(8)) return out;
    }
    for (const auto &a : atoms) {
      if (a.p.is_const()) {
        i64 c = a.p.const_val();
        bool ok = a.op == Atom::EQ0 ? c == 0
                  : a.op == Atom::NE0 ? c != 0
                                      : c <= 0;
        if (!ok) {
          out.refuted = true;
          return out;
        }
        continue;
      }
      out.residual.push_back(a);
    }
    return out;
  }

  // Applies a substitution chain to a polynomial.
  Poly apply_chain(const std::vector<std::pair<int, Poly>> &chain,
                   Poly p) const {
    for (const auto &[var, def] : chain)
      if (poly_has(p, var)) p = subst_var(p, var, def);
    return p;
  }

  // Reconstructs eliminated variables, newest first.
  static void rebuild(const std::vector<std::pair<int, Poly>> &chain,
                      std::map<int, i64> &model) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      model[it->first] = eval_poly(it->second, model);
  }

  ConjDecision decide(std::vector<Atom> atoms) {
    Presolved pre = presolve(std::move(atoms));
    if (pre.refuted) return {ConjDecision::Refuted, {}};
    if (fm_refute(pre.residual)) return {ConjDecision::Refuted, {}};
    auto model = search_model(pre.residual);
    if (!model) return {ConjDecision::Undecided, {}};
    rebuild(pre.chain, *model);
    return {ConjDecision::Model, *model};
  }

private:
  static bool poly_has(const Poly &p, int var) {
    for (const auto &[m, c] : p.t)
      for (int x : m)
        if (x == var) return true;
    return false;
  }

  // A variable occurring linearly with coefficient +-1 and in no other
  // monomial of the polynomial.
  std::optional<std::pair<int, Poly>> unit_var(const Poly &p) {
    for (const auto &[m, c] : p.t) {
      if (m.size() != 1) continue;
      if (c != 1 && c != -1) continue;
      int v = m[0];
      bool elsewhere = false;
      for (const auto &[m2, c2] : p.t) {
        if (&m2 == &m) continue;
        for (int x : m2) elsewhere = elsewhere || x == v;
      }
      if (elsewhere) continue;
      // p = c*v + rest == 0  =>  v = -rest/c
      Poly rest = p;
      rest.erase(m);
      Poly def = c == 1 ? Poly::constant(0) - rest : rest;
      return std::make_pair(v, def);
    }
    return std::nullopt;
  }

  static Poly subst_var(const Poly &p, int var, const Poly &def) {
    Poly out;
    for (const auto &[m, c] : p.t) {
      int count = 0;
      Mono rest;
      for (int x : m) {
        if (x == var) ++count;
        else rest.push_back(x);
      }
      Poly term;
      term.add_term(rest, c);
      for (int i = 0; i < count; ++i) term = term * def;
      out = out + term;
    }
    return out;
  }

  static i64 eval_poly(const Poly &p, const std::map<int, i64> &env) {
    i64 sum = 0;
    for (const auto &[m, c] : p.t) {
      i64 prod = c;
      for (int v : m) {
        auto it = env.find(v);
        prod *= it == env.end() ? 0 : it->second;
      }
      sum += prod;
    }
    return sum;
  }

  // Fourier-Motzkin over rationals, monomials as variables; sound for
  // refutation. Equalities contribute both directions; disequalities are
  // ignored here.
  bool fm_refute(const std::vector<Atom> &atoms) {
    std::vector<Poly> ineqs;  // each p means p <= 0
    for (const auto &a : atoms) {
      if (a.op == Atom::LE0) ineqs.push_back(a.p);
      else if (a.op == Atom::EQ0) {
        ineqs.push_back(a.p);
        ineqs.push_back(Poly::constant(0) - a.p);
      }
    }
    std::set<Mono> vars;
    for (const auto &p : ineqs)
      for (const auto &[m, c] : p.t)
        if (!m.empty()) vars.insert(m);
    for (const Mono &v : vars) {
      if (ineqs.size() > 400 || !budget_.charge(ineqs.size())) return false;
      std::vector<Poly> pos, neg, rest;
      for (const auto &p : ineqs) {
        i64 c = p.coeff(v);
        if (c == 0) rest.push_back(p);
        else if (c > 0) pos.push_back(p);
        else neg.push_back(p);
      }
      std::vector<Poly> next = rest;
      for (const auto &p : pos)
        for (const auto &q : neg) {
          i64 a = p.coeff(v);
          i64 b = -q.coeff(v);
          // b*p + a*q eliminates v.
          Poly combo = (Poly::constant(b) * p) + (Poly::constant(a) * q);
          combo.erase(v);
          if (combo.is_const()) {
            if (combo.const_val() > 0) return true;
            continue;
          }
          next.push_back(std::move(combo));
        }
      ineqs = std::move(next);
      for (const auto &p : ineqs)
        if (p.is_const() && p.const_val() > 0) return true;
    }
    for (const auto &p : ineqs)
      if (p.is_const() && p.const_val() > 0) return true;
    return false;
  }

  std::optional<std::map<int, i64>> search_model(
      const std::vector<Atom> &atoms) {
    std::vector<int> vars;
    for (const auto &a : atoms)
      for (const auto &[m, c] : a.p.t)
        for (int v : m)
          if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    static const i64 narrow[] = {0, 1, -1, 2, -2, 3, -3};
    static const i64 wide[] = {0,  1, -1, 2, -2, 3, -3, 4, -4,
                               5, -5, 6, -6, 7, -7, 8, -8};
    for (int pass = 0; pass < 2; ++pass) {
      const i64 *vals = pass == 0 ? narrow : wide;
      size_t nvals = pass == 0 ? std::size(narrow) : std::size(wide);
      std::map<int, i64> env;
      long long nodes = 0;
      if (try_assign(atoms, vars, 0, vals, nvals, env, nodes)) return env;
      if (budget_.exceeded) return std::nullopt;
    }
    return std::nullopt;
  }

  bool atom_holds(const Atom &a, const std::map<int, i64> &env,
                  bool &ground) {
    i64 sum = 0;
    for (const auto &[m, c] : a.p.t) {
      i64 prod = c;
      for (int v : m) {
        auto it = env.find(v);
        if (it == env.end()) {
          ground = false;
          return true;
        }
        prod *= it->second;
      }
      sum += prod;
    }
    ground = true;
    switch (a.op) {
    case Atom::EQ0: return sum == 0;
    case Atom::NE0: return sum != 0;
    case Atom::LE0: return sum <= 0;
    }
    return false;
  }

  bool try_assign(const std::vector<Atom> &atoms, const std::vector<int> &vars,
                  size_t i, const i64 *vals, size_t nvals,
                  std::map<int, i64> &env, long long &nodes) {
    if (++nodes > 300000 || !budget_.charge()) return false;
    // Prune on any ground-false atom.
    for (const auto &a : atoms) {
      bool ground = false;
      if (!atom_holds(a, env, ground) && ground) return false;
    }
    if (i == vars.size()) {
      for (const auto &a : atoms) {
        bool ground = false;
        if (!atom_holds(a, env, ground) || !ground) return false;
      }
      return true;
    }
    for (size_t k = 0; k < nvals; ++k) {
      env[vars[i]] = vals[k];
      if (try_assign(atoms, vars, i + 1, vals, nvals, env, nodes)) return true;
    }
    env.erase(vars[i]);
    return false;
  }

  Budget &budget_;
};

// DNF expansion with a cap. Input formulas are negation-normalized on the
// fly (atom negation stays an atom).
inline bool dnf(const FormP &f, bool neg, std::vector<std::vector<Atom>> &out,
                std::vector<Atom> cur, size_t cap) {
  if (out.size() > cap) return false;
  switch (f->k) {
  case Formula::FTrue:
    if (neg) return true;  // contributes nothing when false
    out.push_back(std::move(cur));
    return true;
  case Formula::FFalse:
    if (!neg) return true;
    out.push_back(std::move(cur));
    return true;
  case Formula::FAtom:
    cur.push_back(neg ? negate_atom(f->atom) : f->atom);
    out.push_back(std::move(cur));
    return true;
  case Formula::FNot:
    return dnf(f->kids[0], !neg, out, std::move(cur), cap);
  case Formula::FAnd:
  case Formula::FOr: {
    bool conj = (f->k == Formula::FAnd) != neg;
    if (conj) {
      // Conjunction: expand children sequentially (product).
      std::vector<std::vector<Atom>> acc{std::move(cur)};
      for (const auto &k : f->kids) {
        std::vector<std::vector<Atom>> next;
        for (auto &pre : acc) {
          std::vector<std::vector<Atom>> sub;
          if (!dnf(k, neg, sub, pre, cap)) return false;
          for (auto &s : sub) next.push_back(std::move(s));
          if (next.size() > cap) return false;
        }
        acc = std::move(next);
      }
      for (auto &a : acc) out.push_back(std::move(a));
      return out.size() <= cap;
    }
    // Disjunction: each child extends independently.
    for (const auto &k : f->kids)
      if (!dnf(k, neg, out, cur, cap)) return false;
    return true;
  }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Concrete evaluation for final model validation (total semantics).

struct CVal {
  Sort sort = Sort::Int;
  i64 i = 0;
  bool b = false;
  std::vector<i64> seq;
};

class ConcreteEval {
public:
  ConcreteEval(const Script &sc) : sc_(sc) {}

  std::optional<CVal> eval(const TermP &t,
                           const std::map<std::string, CVal> &env, int fuel) {
    if (fuel <= 0 || ++ops_ > 4000000) return std::nullopt;
    switch (t->k) {
    case Term::Num: return CVal{Sort::Int, t->num, false, {}};
    case Term::BoolC: return CVal{Sort::Bool, 0, t->b, {}};
    case Term::Var: {
      auto it = env.find(t->head);
      if (it == env.end()) return std::nullopt;
      return it->second;
    }
    case Term::App: break;
    }
    const std::string &h = t->head;
    auto rf = sc_.rec_funs.find(h);
    if (rf != sc_.rec_funs.end()) {
      std::map<std::string, CVal> inner;
      for (size_t i = 0; i < t->args.size(); ++i) {
        auto v = eval(t->args[i], env, fuel - 1);
        if (!v) return std::nullopt;
        inner[rf->second.params[i].first] = *v;
      }
      return eval(rf->second.body, inner, fuel - 1);
    }
    // Short-circuit logic first.
    if (h == "and" || h == "or") {
      bool isAnd = h == "and";
      for (const auto &a : t->args) {
        auto v = eval(a, env, fuel - 1);
        if (!v) return std::nullopt;
        if (isAnd && !v->b) return CVal{Sort::Bool, 0, false, {}};
        if (!isAnd && v->b) return CVal{Sort::Bool, 0, true, {}};
      }
      return CVal{Sort::Bool, 0, isAnd, {}};
    }
    if (h == "=>") {
      auto a = eval(t->args[0], env, fuel - 1);
      if (!a) return std::nullopt;
      if (!a->b) return CVal{Sort::Bool, 0, true, {}};
      return eval(t->args[1], env, fuel - 1);
    }
    if (h == "ite") {
      auto c = eval(t->args[0], env, fuel - 1);
      if (!c) return std::nullopt;
      return eval(t->args[c->b ? 1 : 2], env, fuel - 1);
    }
    if (h == "seq.empty") return CVal{Sort::SeqInt, 0, false, {}};
    std::vector<CVal> args;
    for (const auto &a : t->args) {
      auto v = eval(a, env, fuel - 1);
      if (!v) return std::nullopt;
      args.push_back(*v);
    }
    if (h == "+" || h == "-" || h == "*") {
      i64 acc = args[0].i;
      if (h == "-" && args.size() == 1) acc = -acc;
      for (size_t i = 1; i < args.size(); ++i) {
        if (h == "+") acc += args[i].i;
        else if (h == "-") acc -= args[i].i;
        else acc *= args[i].i;
      }
      return CVal{Sort::Int, acc, false, {}};
    }
    if (h == "<") return CVal{Sort::Bool, 0, args[0].i < args[1].i, {}};
    if (h == "<=") return CVal{Sort::Bool, 0, args[0].i <= args[1].i, {}};
    if (h == ">") return CVal{Sort::Bool, 0, args[0].i > args[1].i, {}};
    if (h == ">=") return CVal{Sort::Bool, 0, args[0].i >= args[1].i, {}};
    if (h == "=" || h == "distinct") {
      bool eq;
      if (args[0].sort == Sort::Int) eq = args[0].i == args[1].i;
      else if (args[0].sort == Sort::Bool) eq = args[0].b == args[1].b;
      else eq = args[0].seq == args[1].seq;
      return CVal{Sort::Bool, 0, h == "=" ? eq : !eq, {}};
    }
    if (h == "not") return CVal{Sort::Bool, 0, !args[0].b, {}};
    if (h == "seq.unit") return CVal{Sort::SeqInt, 0, false, {args[0].i}};
    if (h == "seq.++") {
      CVal out{Sort::SeqInt, 0, false, {}};
      for (const auto &a : args)
        out.seq.insert(out.seq.end(), a.seq.begin(), a.seq.end());
      return out;
    }
    if (h == "seq.len")
      return CVal{Sort::Int, (i64)args[0].seq.size(), false, {}};
    if (h == "seq.nth") {
      i64 i = args[1].i;
      i64 L = (i64)args[0].seq.size();
      return CVal{Sort::Int, (i >= 0 && i < L) ? args[0].seq[(size_t)i] : 0,
                  false, {}};
    }
    if (h == "seq.extract") {
      i64 o = args[1].i, n = args[2].i;
      i64 L = (i64)args[0].seq.size();
      CVal out{Sort::SeqInt, 0, false, {}};
      if (o >= 0 && o < L && n > 0) {
        i64 m = std::min(n, L - o);
        for (i64 i = 0; i < m; ++i) out.seq.push_back(args[0].seq[(size_t)(o + i)]);
      }
      return out;
    }
    return std::nullopt;
  }

private:
  const Script &sc_;
  long long ops_ = 0;
};

// ---------------------------------------------------------------------------
// The solver proper

struct ModelEntry {
  std::string name;
  Sort sort;
  CVal value;
};

class Solver {
public:
  explicit Solver(const Script &sc) : sc_(sc) {}

  std::string check_sat() {
    model_.clear();
    if (sc_.has_uninterpreted) return "unknown";
    // Matrices are parsed and type-checked but not solved for.
    for (const auto &[n, s] : sc_.consts)
      if (s == Sort::SeqMat && occurs(n)) return "unknown";

    // Sequence length bounds from asserts of the form (<= (seq.len v) N).
    std::map<std::string, i64> bounds;
    for (const auto &a : sc_.asserts) {
      if (a->k == Term::App && a->head == "<=" && a->args.size() == 2 &&
          a->args[0]->k == Term::App && a->args[0]->head == "seq.len" &&
          a->args[0]->args[0]->k == Term::Var &&
          a->args[1]->k == Term::Num) {
        const std::string &v = a->args[0]->args[0]->head;
        i64 b = a->args[1]->num;
        auto it = bounds.find(v);
        bounds[v] = it == bounds.end() ? b : std::min(it->second, b);
      }
    }

    std::vector<std::pair<std::string, Sort>> seqVars, intVars, boolVars;
    for (const auto &[n, s] : sc_.consts) {
      if (!occurs(n)) continue;
      if (s == Sort::SeqInt) seqVars.emplace_back(n, s);
      else if (s == Sort::Int) intVars.emplace_back(n, s);
      else if (s == Sort::Bool) boolVars.emplace_back(n, s);
    }
    bool complete = true;  // can we claim unsat at the end?
    std::vector<i64> caps;
    for (const auto &[n, s] : seqVars) {
      auto it = bounds.find(n);
      if (it == bounds.end()) {
        complete = false;
        caps.push_back(kSearchLen);
      } else {
        caps.push_back(std::min<i64>(it->second, 16));
      }
    }

    Budget budget;
    bool sawUndecided = false;

    // Enumerate length assignments in lexicographic order.
    std::vector<i64> lens(seqVars.size(), 0);
    for (;;) {
      int r = solve_world(seqVars, intVars, boolVars, lens, budget);
      if (r == 1) return "sat";
      if (r == 2) sawUndecided = true;
      if (budget.exceeded) return "unknown";
      if (lens.empty()) break;
      size_t pos = lens.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++lens[pos] <= caps[pos]) {
          done = false;
          break;
        }
        lens[pos] = 0;
      }
      if (done) break;
    }
    if (sawUndecided || !complete) return "unknown";
    return "unsat";
  }

  std::string get_model_text() const {
    std::ostringstream os;
    os << "(\n";
    for (const auto &m : model_) {
      os << "  (define-fun " << m.name << " () " << sort_str(m.sort) << " ";
      if (m.sort == Sort::Int)
        os << (m.value.i < 0 ? "(- " + std::to_string(-m.value.i) + ")"
                             : std::to_string(m.value.i));
      else if (m.sort == Sort::Bool)
        os << (m.value.b ? "true" : "false");
      else if (m.value.seq.empty())
        os << "(as seq.empty (Seq Int))";
      else if (m.value.seq.size() == 1)
        os << "(seq.unit "
           << (m.value.seq[0] < 0
                   ? "(- " + std::to_string(-m.value.seq[0]) + ")"
                   : std::to_string(m.value.seq[0]))
           << ")";
      else {
        os << "(seq.++";
        for (i64 v : m.value.seq)
          os << " (seq.unit "
             << (v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v))
             << ")";
        os << ")";
      }
      os << ")\n";
    }
    os << ")\n";
    return os.str();
  }

private:
  static constexpr i64 kSearchLen = 8;  // sat search cap for unbounded vars

  bool occurs(const std::string &name) const {
    for (const auto &a : sc_.asserts)
      if (occurs_in(a, name)) return true;
    return false;
  }

  static bool occurs_in(const TermP &t, const std::string &name) {
    if (t->k == Term::Var) return t->head == name;
    for (const auto &a : t->args)
      if (occurs_in(a, name)) return true;
    return false;
  }

  // Returns 1 = sat (model stored), 0 = refuted everywhere, 2 = undecided.
  int solve_world(const std::vector<std::pair<std::string, Sort>> &seqVars,
                  const std::vector<std::pair<std::string, Sort>> &intVars,
                  const std::vector<std::pair<std::string, Sort>> &boolVars,
                  const std::vector<i64> &lens, Budget &budget) {
    // Bool worlds: up to 2^k assignments.
    size_t nb = boolVars.size();
    int result = 0;
    for (size_t mask = 0; mask < (size_t(1) << nb); ++mask) {
      int r = solve_ground(seqVars, intVars, boolVars, lens, mask, budget);
      if (r == 1) return 1;
      if (r == 2) result = 2;
      if (budget.exceeded) return 2;
    }
    return result;
  }

  int solve_ground(const std::vector<std::pair<std::string, Sort>> &seqVars,
                   const std::vector<std::pair<std::string, Sort>> &intVars,
                   const std::vector<std::pair<std::string, Sort>> &boolVars,
                   const std::vector<i64> &lens, size_t boolMask,
                   Budget &budget) {
    // Assign symbolic atoms.
    std::map<std::string, SymVal> bind;
    int nextVar = 0;
    std::map<int, std::pair<std::string, i64>> varOrigin;  // id -> (seq, idx)
    std::map<int, std::string> intOrigin;
    for (size_t i = 0; i < seqVars.size(); ++i) {
      SymVal v;
      v.sort = Sort::SeqInt;
      for (i64 j = 0; j < lens[i]; ++j) {
        int id = nextVar++;
        varOrigin[id] = {seqVars[i].first, j};
        v.seq.elems.push_back(Poly::variable(id));
      }
      bind[seqVars[i].first] = std::move(v);
    }
    for (const auto &[n, s] : intVars) {
      int id = nextVar++;
      intOrigin[id] = n;
      SymVal v;
      v.sort = Sort::Int;
      v.p = Poly::variable(id);
      bind[n] = std::move(v);
    }
    for (size_t i = 0; i < boolVars.size(); ++i) {
      SymVal v;
      v.sort = Sort::Bool;
      v.f = (boolMask >> i) & 1 ? f_true() : f_false();
      bind[boolVars[i].first] = std::move(v);
    }

    // Evaluate all asserts symbolically; each yields alternatives. An
    // alternative whose formula already folded to false refutes its whole
    // path region and is dropped here.
    SymEval ev(sc_, budget);
    std::vector<std::vector<Alt>> perAssert;
    for (const auto &a : sc_.asserts) {
      auto alts = ev.eval(a, bind);
      if (alts.empty()) return 2;
      std::vector<Alt> live;
      for (auto &alt : alts) {
        FormP f = alt.v.f ? alt.v.f : f_false();
        if (f->k == Formula::FFalse) continue;
        live.push_back(std::move(alt));
      }
      if (live.empty()) return 0;  // assert false everywhere: world refuted
      perAssert.push_back(std::move(live));
    }

    // Cross product of assert alternatives; each yields one formula.
    std::vector<size_t> pick(perAssert.size(), 0);
    int verdict = 0;
    std::set<std::vector<Atom>> refutedMemo;
    for (;;) {
      if (!budget.charge(16)) return 2;
      std::vector<FormP> parts;
      Path merged;
      for (size_t i = 0; i < perAssert.size(); ++i) {
        const Alt &alt = perAssert[i][pick[i]];
        merged.append(alt.path);
        alt.path.for_each([&](const FormP &p) { parts.push_back(p); });
        parts.push_back(alt.v.f ? alt.v.f : f_false());
      }
      if (quick_feasible(merged)) {
        FormP world = f_and(std::move(parts));
        int r = decide_formula(world, seqVars, lens, varOrigin,
                               intOrigin, boolVars, boolMask, budget,
                               refutedMemo);
        if (r == 1) return 1;
        if (r == 2) verdict = 2;
      }
      size_t pos = pick.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++pick[pos] < perAssert[pos].size()) {
          done = false;
          break;
        }
        pick[pos] = 0;
      }
      if (done || pick.empty()) break;
    }
    return verdict;
  }

  // Applies a substitution chain over a formula tree, refolding constants.
  static FormP subst_form(const FormP &f, ConjSolver &cs,
                          const std::vector<std::pair<int, Poly>> &chain) {
    switch (f->k) {
    case Formula::FTrue:
    case Formula::FFalse:
      return f;
    case Formula::FAtom:
      return f_atom({f->atom.op, cs.apply_chain(chain, f->atom.p)});
    case Formula::FNot:
      return f_not(subst_form(f->kids[0], cs, chain));
    case Formula::FAnd:
    case Formula::FOr: {
      std::vector<FormP> ks;
      ks.reserve(f->kids.size());
      for (const auto &k : f->kids) ks.push_back(subst_form(k, cs, chain));
      return f->k == Formula::FAnd ? f_and(std::move(ks))
                                   : f_or(std::move(ks));
    }
    }
    return f;
  }

  int decide_formula(const FormP &f,
                     const std::vector<std::pair<std::string, Sort>> &seqVars,
                     const std::vector<i64> &lens,
                     const std::map<int, std::pair<std::string, i64>> &varOrigin,
                     const std::map<int, std::string> &intOrigin,
                     const std::vector<std::pair<std::string, Sort>> &boolVars,
                     size_t boolMask, Budget &budget,
                     std::set<std::vector<Atom>> &refutedMemo) {
    if (f->k == Formula::FFalse) return 0;
    ConjSolver cs(budget);

    // The top-level conjunction carries the path constraints and premise
    // equalities shared by every disjunct; solve it once up front.
    std::vector<Atom> baseAtoms;
    std::vector<FormP> residualForms;
    std::function<void(const FormP &)> split = [&](const FormP &g) {
      if (g->k == Formula::FAnd) {
        for (const auto &k : g->kids) split(k);
      } else if (g->k == Formula::FAtom) {
        baseAtoms.push_back(g->atom);
      } else if (g->k != Formula::FTrue) {
        residualForms.push_back(g);
      }
    };
    split(f);

    ConjSolver::Presolved pre = cs.presolve(std::move(baseAtoms));
    if (pre.refuted) return 0;
    if (budget.exceeded) return 2;

    std::vector<FormP> rest;
    rest.reserve(residualForms.size());
    for (const auto &g : residualForms)
      rest.push_back(subst_form(g, cs, pre.chain));
    FormP remainder = f_and(std::move(rest));
    if (remainder->k == Formula::FFalse) return 0;

    std::vector<std::vector<Atom>> conjs;
    if (!dnf(remainder, false, conjs, {}, 30000)) return 2;
    int verdict = 0;
    for (auto &conj : conjs) {
      std::vector<Atom> atoms = pre.residual;
      for (auto &a : conj) atoms.push_back(std::move(a));
      std::vector<Atom> key = atoms;
      std::sort(key.begin(), key.end());
      if (refutedMemo.count(key)) continue;
      ConjDecision d = cs.decide(std::move(atoms));
      if (budget.exceeded) return 2;
      if (d.k == ConjDecision::Refuted) {
        refutedMemo.insert(std::move(key));
        continue;
      }
      if (d.k == ConjDecision::Undecided) {
        verdict = 2;
        continue;
      }
      // Candidate model: compose with the outer chain, then build concrete
      // values and validate.
      std::map<int, i64> assign = d.assignment;
      ConjSolver::rebuild(pre.chain, assign);
      if (build_and_validate(assign, seqVars, lens, varOrigin,
                             intOrigin, boolVars, boolMask))
        return 1;
      verdict = 2;
    }
    return verdict;
  }

  bool build_and_validate(
      const std::map<int, i64> &assign,
      const std::vector<std::pair<std::string, Sort>> &seqVars,
      const std::vector<i64> &lens,
      const std::map<int, std::pair<std::string, i64>> &varOrigin,
      const std::map<int, std::string> &intOrigin,
      const std::vector<std::pair<std::string, Sort>> &boolVars,
      size_t boolMask) {
    std::map<std::string, CVal> env;
    for (size_t i = 0; i < seqVars.size(); ++i) {
      CVal v;
      v.sort = Sort::SeqInt;
      v.seq.assign((size_t)lens[i], 0);
      env[seqVars[i].first] = v;
    }
    for (const auto &[id, origin] : varOrigin) {
      auto it = assign.find(id);
      i64 val = it == assign.end() ? 0 : it->second;
      env[origin.first].seq[(size_t)origin.second] = val;
    }
    for (const auto &[id, name] : intOrigin) {
      auto it = assign.find(id);
      CVal v;
      v.sort = Sort::Int;
      v.i = it == assign.end() ? 0 : it->second;
      env[name] = v;
    }
    for (size_t i = 0; i < boolVars.size(); ++i) {
      CVal v;
      v.sort = Sort::Bool;
      v.b = (boolMask >> i) & 1;
      env[boolVars[i].first] = v;
    }
    // Unmentioned declared constants get defaults.
    for (const auto &[n, s] : sc_.consts) {
      if (env.count(n)) continue;
      CVal v;
      v.sort = s == Sort::SeqMat ? Sort::SeqInt : s;
      env[n] = v;
    }
    ConcreteEval ce(sc_);
    for (const auto &a : sc_.asserts) {
      auto v = ce.eval(a, env, 100000);
      if (!v || v->sort != Sort::Bool || !v->b) return false;
    }
    model_.clear();
    for (const auto &[n, s] : sc_.consts) {
      ModelEntry m;
      m.name = n;
      m.sort = s == Sort::SeqMat ? Sort::SeqInt : s;
      m.value = env[n];
      model_.push_back(std::move(m));
    }
    model_valid_ = true;
    return true;
  }

  const Script &sc_;
  std::vector<ModelEntry> model_;
  bool model_valid_ = false;
};

// ---------------------------------------------------------------------------
// Command loop

int run(std::istream &in, std::ostream &out) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  SReader reader(text);
  Script sc;
  std::map<std::string, Macro> macros;
  TermBuilder builder(macros);
  std::string lastResult;
  Solver solver(sc);
  bool haveResult = false;
  std::string modelText;

  try {
    while (!reader.at_end()) {
      SExpr cmd = reader.read();
      if (cmd.atom || cmd.kids.empty() || !cmd.kids[0].atom) {
        out << "(error \"malformed command\")\n";
        return 1;
      }
      const std::string &c = cmd.kids[0].s;
      if (c == "set-logic" || c == "set-info" || c == "set-option" ||
          c == "echo")
        continue;
      if (c == "exit") break;
      if (c == "declare-fun") {
        if (cmd.kids.size() != 4 || !cmd.kids[1].atom || cmd.kids[2].atom)
          throw ParseError{"declare-fun"};
        if (!cmd.kids[2].kids.empty()) {
          sc.has_uninterpreted = true;  // n-ary uninterpreted: parse only
          continue;
        }
        if (sc.const_sorts.count(cmd.kids[1].s))
          throw ParseError{"duplicate declaration of " + cmd.kids[1].s};
        Sort s = parse_sort(cmd.kids[3]);
        sc.consts.emplace_back(cmd.kids[1].s, s);
        sc.const_sorts[cmd.kids[1].s] = s;
        continue;
      }
      if (c == "declare-const") {
        if (cmd.kids.size() != 3 || !cmd.kids[1].atom)
          throw ParseError{"declare-const"};
        if (sc.const_sorts.count(cmd.kids[1].s))
          throw ParseError{"duplicate declaration of " + cmd.kids[1].s};
        Sort s = parse_sort(cmd.kids[2]);
        sc.consts.emplace_back(cmd.kids[1].s, s);
        sc.const_sorts[cmd.kids[1].s] = s;
        continue;
      }
      if (c == "define-fun" || c == "define-fun-rec") {
        if (cmd.kids.size() != 5 || !cmd.kids[1].atom)
          throw ParseError{c};
        std::vector<std::pair<std::string, Sort>> params;
        for (const auto &p : cmd.kids[2].kids) {
          if (p.atom || p.kids.size() != 2 || !p.kids[0].atom)
            throw ParseError{"parameter"};
          params.emplace_back(p.kids[0].s, parse_sort(p.kids[1]));
        }
        Sort ret = parse_sort(cmd.kids[3]);
        if (c == "define-fun-rec") {
          // Register the signature before converting the body so self-calls
          // type-check.
          FunDef fd;
          fd.name = cmd.kids[1].s;
          fd.params = params;
          fd.ret = ret;
          sc.rec_funs[fd.name] = fd;
          std::map<std::string, TermP> scope;
          TermP body = builder.convert(cmd.kids[4], scope);
          std::map<std::string, Sort> env;
          for (const auto &[n, s] : params) env[n] = s;
          TypeChecker tc(sc);
          if (tc.check(body, env) != ret) throw TypeError{fd.name + ": body sort"};
          sc.rec_funs[fd.name].body = body;
        } else {
          std::map<std::string, TermP> scope;
          TermP body = builder.convert(cmd.kids[4], scope);
          std::map<std::string, Sort> env;
          for (const auto &[n, s] : params) env[n] = s;
          TypeChecker tc(sc);
          if (tc.check(body, env) != ret)
            throw TypeError{cmd.kids[1].s + ": body sort"};
          Macro m;
          for (const auto &[n, s] : params) m.params.push_back(n);
          m.body = body;
          macros[cmd.kids[1].s] = std::move(m);
        }
        continue;
      }
      if (c == "assert") {
        if (cmd.kids.size() != 2) throw ParseError{"assert"};
        std::map<std::string, TermP> scope;
        TermP t = builder.convert(cmd.kids[1], scope);
        TypeChecker tc(sc);
        std::map<std::string, Sort> env;
        if (tc.check(t, env) != Sort::Bool)
          throw TypeError{"assert expects Bool"};
        sc.asserts.push_back(t);
        continue;
      }
      if (c == "check-sat") {
        lastResult = solver.check_sat();
        haveResult = true;
        out << lastResult << "\n";
        out.flush();
        if (lastResult == "sat") modelText = solver.get_model_text();
        continue;
      }
      if (c == "get-model") {
        if (haveResult && lastResult == "sat") {
          out << modelText;
          out.flush();
        } else {
          out << "(error \"no model available\")\n";
        }
        continue;
      }
      out << "(error \"unsupported command " << c << "\")\n";
      return 1;
    }
  } catch (const ParseError &e) {
    out << "(error \"" << e.msg << "\")\n";
    return 1;
  } catch (const TypeError &e) {
    out << "(error \"" << e.msg << "\")\n";
    return 1;
  }
  return 0;
}

}  // namespace minismt

int main() {
  return minismt::run(std::cin, std::cout);
}
