#pragma once

// SMT backend: translates verification conditions and the recursive operator
// definitions into self-contained SMT-LIB v2.6 scripts, drives an external
// solver process over stdin/stdout, and classifies the result.
//
// Encoding choices:
//  - integers map to solver integers, integer sequences to (Seq Int);
//  - slice compiles to liftc-slice, a clamped seq.extract;
//  - index compiles to liftc-nth, which reads 0 out of range. The reference
//    interpreter errors there instead; the counterexample re-check treats an
//    evaluation error as falsification, so the two semantics never let a
//    bogus model through;
//  - the VC's universal prefix becomes free constants and the negated body
//    is asserted: unsat means the VC is valid;
//  - in bounded mode every sequence constant is additionally length-bounded,
//    and a fully-unsat result is reported as bounded-verified, never as
//    Verified.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <fstream>

#include "liftc/vcgen.hpp"

namespace liftc {

struct SmtQuery {
  std::string script;
  VcLabel vc_label = VcLabel::Initial;
  long long candidate_index = 0;
};

struct EmitOptions {
  int bounded = 0;  // 0 = full; N > 0 bounds every sequence length by N
  std::string kernel_name = "kernel";
  long long candidate_index = 0;
};

namespace detail {

struct EmitNeeds {
  bool nth_int = false, nth_mat = false;
  bool slice_int = false, slice_mat = false;
};

inline void scan_needs(const Ir &e, const TypeCtx &ctx, const Registry &reg,
                       EmitNeeds &needs) {
  if (e->tag == IrTag::Index || e->tag == IrTag::Slice) {
    IrType t = typecheck(e->args[0], ctx, &reg);
    if (e->tag == IrTag::Index)
      (t == IrType::SeqInt ? needs.nth_int : needs.nth_mat) = true;
    else
      (t == IrType::SeqInt ? needs.slice_int : needs.slice_mat) = true;
  }
  for (const auto &a : e->args) scan_needs(a, ctx, reg, needs);
}

inline std::string smt_term(const Ir &e, const TypeCtx &ctx,
                            const Registry &reg) {
  auto bin = [&](const char *op) {
    return "(" + std::string(op) + " " + smt_term(e->args[0], ctx, reg) + " " +
           smt_term(e->args[1], ctx, reg) + ")";
  };
  switch (e->tag) {
  case IrTag::IntLit:
    return e->ival < 0 ? "(- " + std::to_string(-e->ival) + ")"
                       : std::to_string(e->ival);
  case IrTag::BoolLit: return e->bval ? "true" : "false";
  case IrTag::Var: return e->name;
  case IrTag::Add: return bin("+");
  case IrTag::Sub: return bin("-");
  case IrTag::Mul: return bin("*");
  case IrTag::Lt: return bin("<");
  case IrTag::Le: return bin("<=");
  case IrTag::Eq: return bin("=");
  case IrTag::And: return bin("and");
  case IrTag::Or: return bin("or");
  case IrTag::Implies: return bin("=>");
  case IrTag::Not:
    return "(not " + smt_term(e->args[0], ctx, reg) + ")";
  case IrTag::Ite:
    return "(ite " + smt_term(e->args[0], ctx, reg) + " " +
           smt_term(e->args[1], ctx, reg) + " " +
           smt_term(e->args[2], ctx, reg) + ")";
  case IrTag::EmptySeq:
    return "(as seq.empty " + type_name(seq_of(e->ty)) + ")";
  case IrTag::SeqLit: {
    if (e->args.empty())
      return "(as seq.empty " + type_name(seq_of(e->ty)) + ")";
    if (e->args.size() == 1)
      return "(seq.unit " + smt_term(e->args[0], ctx, reg) + ")";
    std::string s = "(seq.++";
    for (const auto &a : e->args)
      s += " (seq.unit " + smt_term(a, ctx, reg) + ")";
    return s + ")";
  }
  case IrTag::Len:
    return "(seq.len " + smt_term(e->args[0], ctx, reg) + ")";
  case IrTag::Index: {
    IrType t = typecheck(e->args[0], ctx, &reg);
    const char *f = t == IrType::SeqInt ? "liftc-nth" : "liftc-nth-mat";
    return "(" + std::string(f) + " " + smt_term(e->args[0], ctx, reg) + " " +
           smt_term(e->args[1], ctx, reg) + ")";
  }
  case IrTag::Append:
    return "(seq.++ " + smt_term(e->args[0], ctx, reg) + " (seq.unit " +
           smt_term(e->args[1], ctx, reg) + "))";
  case IrTag::Prepend:
    return "(seq.++ (seq.unit " + smt_term(e->args[0], ctx, reg) + ") " +
           smt_term(e->args[1], ctx, reg) + ")";
  case IrTag::Slice: {
    IrType t = typecheck(e->args[0], ctx, &reg);
    const char *f = t == IrType::SeqInt ? "liftc-slice" : "liftc-slice-mat";
    return "(" + std::string(f) + " " + smt_term(e->args[0], ctx, reg) + " " +
           smt_term(e->args[1], ctx, reg) + " " +
           smt_term(e->args[2], ctx, reg) + ")";
  }
  case IrTag::Call: {
    std::string s = "(" + e->name;
    for (const auto &a : e->args) s += " " + smt_term(a, ctx, reg);
    return s + ")";
  }
  }
  fail(ErrKind::TypeError, "unhandled expression in SMT emission");
}

inline void emit_helpers(std::ostringstream &os, const EmitNeeds &n) {
  if (n.nth_int)
    os << "(define-fun liftc-nth ((s (Seq Int)) (i Int)) Int\n"
          "  (ite (and (<= 0 i) (< i (seq.len s))) (seq.nth s i) 0))\n";
  if (n.nth_mat)
    os << "(define-fun liftc-nth-mat ((s (Seq (Seq Int))) (i Int)) (Seq Int)\n"
          "  (ite (and (<= 0 i) (< i (seq.len s))) (seq.nth s i)\n"
          "       (as seq.empty (Seq Int))))\n";
  if (n.slice_int)
    os << "(define-fun liftc-slice ((s (Seq Int)) (lo Int) (hi Int)) (Seq Int)\n"
          "  (let ((l (ite (< lo 0) 0 lo))\n"
          "        (h (ite (< (seq.len s) hi) (seq.len s) hi)))\n"
          "    (ite (<= h l) (as seq.empty (Seq Int)) (seq.extract s l (- h l)))))\n";
  if (n.slice_mat)
    os << "(define-fun liftc-slice-mat ((s (Seq (Seq Int))) (lo Int) (hi Int)) "
          "(Seq (Seq Int))\n"
          "  (let ((l (ite (< lo 0) 0 lo))\n"
          "        (h (ite (< (seq.len s) hi) (seq.len s) hi)))\n"
          "    (ite (<= h l) (as seq.empty (Seq (Seq Int))) "
          "(seq.extract s l (- h l)))))\n";
}

}  // namespace detail

inline SmtQuery emit_query(const Vc &vc, const Registry &reg,
                           const EmitOptions &opts) {
  TypeCtx ctx;
  for (const auto &[n, t] : vc.quantified) ctx[n] = t;
  if (typecheck(vc.body, ctx, &reg) != IrType::Bool)
    fail(ErrKind::TypeError, "verification condition must be boolean");

  // Operators reachable from the VC, kept in registry (dependency) order.
  std::vector<std::string> work;
  call_targets(vc.body, work);
  std::set<std::string> reach;
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    if (reach.count(n)) continue;
    reach.insert(n);
    call_targets(reg.get(n).body, work);
  }

  detail::EmitNeeds needs;
  detail::scan_needs(vc.body, ctx, reg, needs);
  for (const auto &op : reg.ops()) {
    if (!reach.count(op.name)) continue;
    TypeCtx opCtx;
    for (const auto &[n, t] : op.params) opCtx[n] = t;
    detail::scan_needs(op.body, opCtx, reg, needs);
  }

  std::ostringstream os;
  os << "; liftc vc query\n";
  os << "; kernel: " << opts.kernel_name << "\n";
  os << "; candidate: " << opts.candidate_index << "\n";
  os << "; vc: " << vc_label_name(vc.label) << "\n";
  os << "; mode: " << (opts.bounded > 0 ? "bounded" : "full");
  if (opts.bounded > 0) os << " " << opts.bounded;
  os << "\n(set-logic ALL)\n";
  detail::emit_helpers(os, needs);
  for (const auto &op : reg.ops()) {
    if (!reach.count(op.name)) continue;
    TypeCtx opCtx;
    for (const auto &[n, t] : op.params) opCtx[n] = t;
    os << "(define-fun-rec " << op.name << " (";
    for (size_t i = 0; i < op.params.size(); ++i)
      os << (i ? " " : "") << "(" << op.params[i].first << " "
         << type_name(op.params[i].second) << ")";
    os << ") " << type_name(op.return_type) << "\n  "
       << detail::smt_term(op.body, opCtx, reg) << ")\n";
  }
  for (const auto &[n, t] : vc.quantified)
    os << "(declare-const " << n << " " << type_name(t) << ")\n";
  if (opts.bounded > 0) {
    for (const auto &[n, t] : vc.quantified)
      if (is_seq(t))
        os << "(assert (<= (seq.len " << n << ") " << opts.bounded << "))\n";
  }
  os << "(assert (not " << detail::smt_term(vc.body, ctx, reg) << "))\n";
  os << "(check-sat)\n(get-model)\n";

  SmtQuery q;
  q.script = os.str();
  q.vc_label = vc.label;
  q.candidate_index = opts.candidate_index;
  return q;
}

// ---------------------------------------------------------------------------
// Solver process driver. One fresh process per query; the command line is
// run through /bin/sh and must speak SMT-LIB over stdin/stdout.

struct RawSolverResult {
  enum Status { Sat, Unsat, Unknown, TimedOut } status = Unknown;
  std::string model_text;  // everything after the status line
  std::string transcript;  // full raw output
};

inline RawSolverResult run_solver(const SmtQuery &query,
                                  const std::string &solver_cmd,
                                  double timeout_s) {
  if (solver_cmd.empty())
    fail(ErrKind::SolverUnavailable,
         "no solver command (use --solver-cmd or LIFTC_SOLVER)");
  static bool ignore_sigpipe = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)ignore_sigpipe;

  int inPipe[2], outPipe[2];
  if (pipe(inPipe) != 0 || pipe(outPipe) != 0)
    fail(ErrKind::SolverUnavailable, "pipe creation failed");
  pid_t pid = fork();
  if (pid < 0) fail(ErrKind::SolverUnavailable, "fork failed");
  if (pid == 0) {
    dup2(inPipe[0], 0);
    dup2(outPipe[1], 1);
    int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, 2);
    close(inPipe[0]);
    close(inPipe[1]);
    close(outPipe[0]);
    close(outPipe[1]);
    execl("/bin/sh", "sh", "-c", solver_cmd.c_str(), (char *)nullptr);
    _exit(127);
  }
  close(inPipe[0]);
  close(outPipe[1]);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::microseconds(
                      (long long)(std::max(0.0, timeout_s) * 1e6));

  // Feed the script. Scripts are small; if the child died early the write
  // fails with EPIPE, which is fine, the exit status tells the story.
  size_t written = 0;
  while (written < query.script.size()) {
    ssize_t n = write(inPipe[1], query.script.data() + written,
                      query.script.size() - written);
    if (n <= 0) break;
    written += (size_t)n;
  }
  close(inPipe[1]);

  std::string out;
  char buf[4096];
  bool timedOut = false;
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    long long remainMs =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count();
    if (remainMs <= 0) {
      timedOut = true;
      break;
    }
    struct pollfd pfd{outPipe[0], POLLIN, 0};
    int pr = poll(&pfd, 1, (int)std::min<long long>(remainMs, 200));
    if (pr < 0) break;
    if (pr == 0) continue;
    ssize_t n = read(outPipe[0], buf, sizeof buf);
    if (n <= 0) break;
    out.append(buf, (size_t)n);
  }
  close(outPipe[0]);
  int st = 0;
  if (timedOut) {
    kill(pid, SIGKILL);
    waitpid(pid, &st, 0);
  } else {
    // The child closed stdout; reap it within the remaining budget so a
    // wedged solver cannot hang the pipeline past its deadline.
    for (;;) {
      pid_t r = waitpid(pid, &st, WNOHANG);
      if (r == pid) break;
      if (std::chrono::steady_clock::now() >= deadline) {
        kill(pid, SIGKILL);
        waitpid(pid, &st, 0);
        break;
      }
      poll(nullptr, 0, 5);
    }
  }

  RawSolverResult res;
  res.transcript = out;
  if (timedOut) {
    res.status = RawSolverResult::TimedOut;
    return res;
  }
  if (WIFEXITED(st) && WEXITSTATUS(st) == 127)
    fail(ErrKind::SolverUnavailable, "could not run: " + solver_cmd);

  // First line that is exactly sat/unsat/unknown decides; the rest is model.
  std::istringstream is(out);
  std::string line;
  bool found = false;
  std::string rest;
  while (std::getline(is, line)) {
    std::string t = detail::trim(line);
    if (!found) {
      if (t == "sat") {
        res.status = RawSolverResult::Sat;
        found = true;
      } else if (t == "unsat") {
        res.status = RawSolverResult::Unsat;
        found = true;
      } else if (t == "unknown") {
        res.status = RawSolverResult::Unknown;
        found = true;
      } else if (t == "timeout") {
        res.status = RawSolverResult::TimedOut;
        found = true;
      }
    } else {
      rest += line;
      rest += "\n";
    }
  }
  if (!found) {
    if (out.empty())
      fail(ErrKind::SolverUnavailable,
           "solver produced no output: " + solver_cmd);
    fail(ErrKind::ProtocolError, "unparseable solver output: " +
                                     out.substr(0, 200));
  }
  res.model_text = rest;
  return res;
}

// ---------------------------------------------------------------------------
// Model parsing. Accepts the (define-fun NAME () SORT VALUE) shape both z3
// and cvc5 print, with or without a leading `model` keyword. Values outside
// the fragment raise ProtocolError; the mandatory concrete re-check below
// makes any parsed model harmless.

namespace detail {

inline Value smt_value(const sexpr::Node &n, IrType type) {
  if (n.is_atom) {
    if (n.atom == "true") return true;
    if (n.atom == "false") return false;
    if (sexpr::is_int_atom(n.atom)) return (Int)std::stoll(n.atom);
    fail(ErrKind::ProtocolError, "unexpected model atom " + n.atom);
  }
  if (n.items.empty()) fail(ErrKind::ProtocolError, "empty model value");
  if (n.items[0].is_atom) {
    const std::string &h = n.items[0].atom;
    if (h == "-" && n.items.size() == 2)
      return -as_int(smt_value(n.items[1], IrType::Int));
    if (h == "as")  // (as seq.empty SORT)
      return type == IrType::SeqSeqInt ? Value(MatI{}) : Value(SeqI{});
    if (h == "seq.unit") {
      if (type == IrType::SeqSeqInt)
        return MatI{as_seq(smt_value(n.items[1], IrType::SeqInt))};
      return SeqI{as_int(smt_value(n.items[1], IrType::Int))};
    }
    if (h == "seq.++") {
      if (type == IrType::SeqSeqInt) {
        MatI m;
        for (size_t i = 1; i < n.items.size(); ++i) {
          MatI part = as_mat(smt_value(n.items[i], type));
          m.insert(m.end(), part.begin(), part.end());
        }
        return m;
      }
      SeqI s;
      for (size_t i = 1; i < n.items.size(); ++i) {
        SeqI part = as_seq(smt_value(n.items[i], type));
        s.insert(s.end(), part.begin(), part.end());
      }
      return s;
    }
  }
  fail(ErrKind::ProtocolError, "unsupported model value form");
}

inline Env parse_model(const std::string &model_text,
                       const std::vector<std::pair<std::string, IrType>> &vars) {
  Env env;
  // Missing constants are don't-cares; default them.
  for (const auto &[n, t] : vars) {
    switch (t) {
    case IrType::Int: env[n] = (Int)0; break;
    case IrType::Bool: env[n] = false; break;
    case IrType::SeqInt: env[n] = SeqI{}; break;
    case IrType::SeqSeqInt: env[n] = MatI{}; break;
    }
  }
  sexpr::Reader reader(model_text);
  std::vector<sexpr::Node> forms;
  try {
    forms = reader.read_all();
  } catch (const Error &) {
    fail(ErrKind::ProtocolError, "unparseable model text");
  }
  auto handle = [&](const sexpr::Node &d) {
    if (d.is_atom || d.items.size() < 5 || !d.items[0].is_atom ||
        d.items[0].atom != "define-fun" || !d.items[1].is_atom)
      return;
    const std::string &name = d.items[1].atom;
    for (const auto &[n, t] : vars) {
      if (n == name)
        env[n] = smt_value(d.items[d.items.size() - 1], t);
    }
  };
  for (const auto &f : forms) {
    if (f.is_atom) continue;
    size_t start = 0;
    if (!f.items.empty() && f.items[0].is_atom && f.items[0].atom == "model")
      start = 1;
    for (size_t i = start; i < f.items.size(); ++i) handle(f.items[i]);
    handle(f);
  }
  return env;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Candidate verification

struct VerificationOutcome {
  enum Kind {
    Verified,         // all three negations unsat, full mode
    BoundedVerified,  // all three negations unsat under the length bound
    Counterexample,
    Unknown,
    SolverTimeout,
  } kind = Unknown;
  VcLabel vc_label = VcLabel::Initial;  // VC that decided the outcome
  Env witness;                          // Counterexample only
  std::string transcript;
};

inline const char *outcome_name(VerificationOutcome::Kind k) {
  switch (k) {
  case VerificationOutcome::Verified: return "verified";
  case VerificationOutcome::BoundedVerified: return "bounded-verified";
  case VerificationOutcome::Counterexample: return "counterexample";
  case VerificationOutcome::Unknown: return "unknown";
  case VerificationOutcome::SolverTimeout: return "timeout";
  }
  return "?";
}

struct VerifyOptions {
  std::string solver_cmd;
  double per_query_timeout_s = 10.0;
  int bounded = 0;
  std::string kernel_name = "kernel";
  long long candidate_index = 0;
  std::string dump_dir;  // when set, scripts are written here
};

inline void dump_query(const SmtQuery &q, const VerifyOptions &opts) {
  if (opts.dump_dir.empty()) return;
  std::string path = opts.dump_dir + "/" + opts.kernel_name + "." +
                     std::to_string(q.candidate_index) + "." +
                     vc_label_name(q.vc_label) + ".smt2";
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrKind::ConfigError, "cannot write " + path);
  f << q.script;
}

inline VerificationOutcome verify_candidate(const VCSet &vcs,
                                            const Registry &reg,
                                            const VerifyOptions &opts) {
  VerificationOutcome out;
  EmitOptions eopts;
  eopts.bounded = opts.bounded;
  eopts.kernel_name = opts.kernel_name;
  eopts.candidate_index = opts.candidate_index;
  for (const Vc *vc : vcs.all()) {
    SmtQuery q = emit_query(*vc, reg, eopts);
    dump_query(q, opts);
    RawSolverResult raw = run_solver(q, opts.solver_cmd,
                                     opts.per_query_timeout_s);
    out.transcript += "; " + std::string(vc_label_name(vc->label)) + "\n";
    out.transcript += raw.transcript;
    switch (raw.status) {
    case RawSolverResult::Unsat:
      continue;
    case RawSolverResult::Sat: {
      Env witness = detail::parse_model(raw.model_text, vc->quantified);
      // Mandatory re-check: a model that does not falsify the VC under the
      // reference evaluator is a protocol violation, not a counterexample.
      if (vc_holds(*vc, witness, reg))
        fail(ErrKind::ProtocolError,
             "solver model does not falsify the " +
                 std::string(vc_label_name(vc->label)) + " condition");
      out.kind = VerificationOutcome::Counterexample;
      out.vc_label = vc->label;
      out.witness = std::move(witness);
      return out;
    }
    case RawSolverResult::Unknown:
      out.kind = VerificationOutcome::Unknown;
      out.vc_label = vc->label;
      return out;
    case RawSolverResult::TimedOut:
      out.kind = VerificationOutcome::SolverTimeout;
      out.vc_label = vc->label;
      return out;
    }
  }
  out.kind = opts.bounded > 0 ? VerificationOutcome::BoundedVerified
                              : VerificationOutcome::Verified;
  return out;
}

}  // namespace liftc
