#pragma once

// Verification conditions for a (LoopNest, Candidate) pair:
//
//   initial      :=  forall params.              Inv[state := init]
//   preservation :=  forall params, state. (Inv and guard) => Inv[state := update]
//   termination  :=  forall params, state. (Inv and not guard) => PS
//
// Substitution is the only transformation applied; no function symbols are
// introduced beyond the registry operators already present in Inv and PS.

#include "liftc/analyze.hpp"

namespace liftc {

struct HoleAssignment {
  // Constants chosen for the candidate, keyed by "<op>.<param>" where they
  // came from an operator hole, or "const<k>" for grammar constant leaves.
  std::vector<std::pair<std::string, Value>> values;
  long long candidate_index = -1;
};

struct Candidate {
  Ir ps;   // boolean: outputVar == T(inputs...)
  Ir inv;  // boolean over state vars and params
  HoleAssignment meta;
};

enum class VcLabel { Initial, Preservation, Termination };

inline const char *vc_label_name(VcLabel l) {
  switch (l) {
  case VcLabel::Initial: return "initial";
  case VcLabel::Preservation: return "preservation";
  case VcLabel::Termination: return "termination";
  }
  return "?";
}

struct Vc {
  VcLabel label;
  // Universal quantifier prefix, in deterministic order.
  std::vector<std::pair<std::string, IrType>> quantified;
  Ir body;
};

struct VCSet {
  Vc initial, preservation, termination;

  const Vc &get(VcLabel l) const {
    switch (l) {
    case VcLabel::Initial: return initial;
    case VcLabel::Preservation: return preservation;
    case VcLabel::Termination: return termination;
    }
    return initial;
  }

  std::vector<const Vc *> all() const {
    return {&initial, &preservation, &termination};
  }
};

inline VCSet make_vcs(const LoopNest &loop, const Candidate &cand,
                      const Registry &reg) {
  TypeCtx ctx = loop.type_ctx();
  if (typecheck(cand.ps, ctx, &reg) != IrType::Bool)
    fail(ErrKind::TypeError, "candidate PS is not boolean in the loop context");
  if (typecheck(cand.inv, ctx, &reg) != IrType::Bool)
    fail(ErrKind::TypeError, "candidate Inv is not boolean in the loop context");

  std::map<std::string, Ir> initSub, updateSub;
  for (const auto &[n, t] : loop.state_vars) {
    initSub[n] = loop.init.at(n);
    updateSub[n] = loop.update.at(n);
  }

  VCSet vcs;
  vcs.initial.label = VcLabel::Initial;
  vcs.initial.quantified = loop.params;
  vcs.initial.body = substitute(cand.inv, initSub);

  std::vector<std::pair<std::string, IrType>> full = loop.params;
  for (const auto &sv : loop.state_vars) full.push_back(sv);

  vcs.preservation.label = VcLabel::Preservation;
  vcs.preservation.quantified = full;
  vcs.preservation.body = ir::implies(ir::land(cand.inv, loop.cond),
                                      substitute(cand.inv, updateSub));

  vcs.termination.label = VcLabel::Termination;
  vcs.termination.quantified = full;
  vcs.termination.body =
      ir::implies(ir::land(cand.inv, ir::lnot(loop.cond)), cand.ps);

  for (const Vc *vc : vcs.all()) {
    TypeCtx qctx;
    for (const auto &[n, t] : vc->quantified) qctx[n] = t;
    if (typecheck(vc->body, qctx, &reg) != IrType::Bool)
      fail(ErrKind::TypeError, "verification condition is not boolean");
    std::vector<std::string> fv;
    free_vars(vc->body, fv);
    for (const auto &v : fv)
      if (!qctx.count(v))
        fail(ErrKind::TypeError,
             "verification condition has unquantified variable " + v);
  }
  return vcs;
}

// Evaluates a VC body on one concrete binding of its quantified variables.
// An evaluation error (for example an out-of-range index reached through a
// true premise) counts as falsification: the VC does not hold there.
inline bool vc_holds(const Vc &vc, const Env &binding, const Registry &reg) {
  try {
    return as_bool(eval(vc.body, binding, reg));
  } catch (const Error &) {
    return false;
  }
}

inline std::string render_vc(const Vc &vc) {
  std::ostringstream os;
  os << "(" << vc_label_name(vc.label) << " (forall (";
  for (size_t i = 0; i < vc.quantified.size(); ++i)
    os << (i ? " " : "") << "(" << vc.quantified[i].first << " "
       << type_name(vc.quantified[i].second) << ")";
  os << ") " << to_sexpr(vc.body) << "))";
  return os.str();
}

inline std::string render_vcs(const VCSet &vcs) {
  std::ostringstream os;
  os << "(vcs\n  " << render_vc(vcs.initial) << "\n  "
     << render_vc(vcs.preservation) << "\n  " << render_vc(vcs.termination)
     << ")\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Candidate files:  (candidate (ps EXPR) (inv EXPR))

inline Candidate candidate_from_sexpr(const sexpr::Node &n) {
  if (n.is_atom || n.items.size() != 3 || !n.items[0].is_atom ||
      n.items[0].atom != "candidate")
    fail(ErrKind::SyntaxError, "expected (candidate (ps ...) (inv ...))");
  Candidate c;
  for (size_t i = 1; i <= 2; ++i) {
    const auto &part = n.items[i];
    if (part.is_atom || part.items.size() != 2 || !part.items[0].is_atom)
      fail(ErrKind::SyntaxError, "expected (ps ...) or (inv ...)");
    if (part.items[0].atom == "ps") c.ps = ir_from_sexpr(part.items[1]);
    else if (part.items[0].atom == "inv") c.inv = ir_from_sexpr(part.items[1]);
    else fail(ErrKind::SyntaxError, "unknown candidate part " + part.items[0].atom);
  }
  if (!c.ps || !c.inv)
    fail(ErrKind::SyntaxError, "candidate needs both ps and inv");
  return c;
}

inline Candidate parse_candidate(const std::string &text) {
  sexpr::Reader r(text);
  return candidate_from_sexpr(r.read());
}

inline std::string render_candidate(const Candidate &c) {
  std::ostringstream os;
  os << "(candidate\n  (ps " << to_sexpr(c.ps) << ")\n  (inv "
     << to_sexpr(c.inv) << "))\n";
  return os.str();
}

// Checks the constants inside a candidate's operator calls against the
// operator hole declarations: hole arguments must be grid-style literals and
// positive parameters (strides) must be positive. Keeps hand-written
// candidate files from smuggling in non-terminating recursions.
inline void validate_candidate_constants(const Ir &e, const Registry &reg) {
  if (e->tag == IrTag::Call) {
    const OperatorSpec &op = reg.get(e->name);
    if (op.params.size() != e->args.size())
      fail(ErrKind::ArityMismatch, e->name);
    for (size_t i = 0; i < e->args.size(); ++i) {
      const std::string &pname = op.params[i].first;
      bool isHole = false;
      for (const auto &[h, k] : op.holes) isHole = isHole || h == pname;
      if (!isHole) continue;
      const Ir &a = e->args[i];
      if (a->tag == IrTag::IntLit) {
        bool mustBePositive =
            std::find(op.positive_params.begin(), op.positive_params.end(),
                      pname) != op.positive_params.end();
        if (mustBePositive && a->ival <= 0)
          fail(ErrKind::NonPositiveStride, e->name + " parameter " + pname);
      } else if (a->tag != IrTag::SeqLit && a->tag != IrTag::EmptySeq) {
        fail(ErrKind::TypeError,
             e->name + " hole parameter " + pname + " must be a constant");
      }
    }
  }
  for (const auto &a : e->args) validate_candidate_constants(a, reg);
}

}  // namespace liftc
