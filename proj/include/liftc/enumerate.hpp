#pragma once

// Candidate enumeration. Program summaries have the shape
//
//   out == T(inputs..., constants...)
//
// where T is a depth-bounded composition of registry operators whose leaves
// are kernel parameters of matching type or constants drawn from the hole
// grids. The paired invariant applies the same skeleton to prefix slices
// slice(p, 0, counter + c), optionally strengthened with bound conjuncts.
//
// The stream is deterministic and size-lexicographic: skeleton size, then
// skeleton structure, then the hole tuple in grid order, then the slice
// offset, then the conjunct set. Simplest explanations come first.

#include "liftc/config.hpp"
#include "liftc/vcgen.hpp"

namespace liftc {

namespace detail {

struct Skel {
  enum Kind { Param, ConstLeaf, Op } kind = Param;
  std::string param;            // Param
  HoleKind grid = HoleKind::KernelLit;  // ConstLeaf and op holes
  const OperatorSpec *op = nullptr;
  // One entry per operator parameter; hole parameters use ConstLeaf nodes.
  std::vector<Skel> children;

  int size() const {
    if (kind != Op) return 0;
    int s = 1;
    for (const auto &c : children) s += c.size();
    return s;
  }

  // Constant leaves standing in for tensor arguments (not operator holes).
  int const_leaves() const {
    if (kind == ConstLeaf) return 1;
    if (kind != Op) return 0;
    int n = 0;
    for (size_t i = 0; i < children.size(); ++i) {
      const auto &pname = op->params[i].first;
      bool isHole = false;
      for (const auto &[h, k] : op->holes) isHole = isHole || h == pname;
      if (!isHole) n += children[i].const_leaves();
    }
    return n;
  }
};

// Collects hole slots (grid kinds) left to right.
inline void collect_holes(const Skel &s, std::vector<HoleKind> &out) {
  if (s.kind == Skel::ConstLeaf) {
    out.push_back(s.grid);
    return;
  }
  for (const auto &c : s.children) collect_holes(c, out);
}

class SkeletonGen {
public:
  SkeletonGen(const LoopNest &loop, const GrammarConfig &cfg,
              const Registry &reg)
      : loop_(loop), cfg_(cfg), reg_(reg) {}

  // Size-lexicographic order, simplest first: fewer operator nodes, then
  // fewer constant tensor leaves, then generation order.
  std::vector<Skel> roots(IrType type) {
    std::vector<Skel> all = ops_of(type, cfg_.max_op_depth);
    std::stable_sort(all.begin(), all.end(), [](const Skel &a, const Skel &b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.const_leaves() < b.const_leaves();
    });
    return all;
  }

private:
  // Leaf choices for an operator argument position.
  std::vector<Skel> leaves(IrType type) {
    std::vector<Skel> out;
    for (const auto &[n, t] : loop_.params)
      if (t == type) {
        Skel s;
        s.kind = Skel::Param;
        s.param = n;
        out.push_back(s);
      }
    if (type == IrType::SeqInt) {
      Skel c;
      c.kind = Skel::ConstLeaf;
      c.grid = HoleKind::KernelLit;
      out.push_back(c);
    }
    return out;
  }

  std::vector<Skel> args_of(IrType type, int depth) {
    std::vector<Skel> out = leaves(type);
    if (depth >= 1) {
      for (Skel &s : ops_of(type, depth)) out.push_back(std::move(s));
    }
    return out;
  }

  // All operator-rooted skeletons of the given type with depth <= depth.
  std::vector<Skel> ops_of(IrType type, int depth) {
    std::vector<Skel> out;
    if (depth < 1) return out;
    for (const auto &op : reg_.ops()) {
      if (op.return_type != type) continue;
      // Child choice lists per parameter.
      std::vector<std::vector<Skel>> choices;
      bool feasible = true;
      for (const auto &[pname, ptype] : op.params) {
        bool isHole = false;
        HoleKind kind = HoleKind::KernelLit;
        for (const auto &[h, k] : op.holes)
          if (h == pname) {
            isHole = true;
            kind = k;
          }
        if (isHole) {
          Skel c;
          c.kind = Skel::ConstLeaf;
          c.grid = kind;
          choices.push_back({c});
        } else {
          auto ch = args_of(ptype, depth - 1);
          if (ch.empty()) {
            feasible = false;
            break;
          }
          choices.push_back(std::move(ch));
        }
      }
      if (!feasible) continue;
      // Odometer over child choices, leftmost most significant.
      std::vector<size_t> pick(choices.size(), 0);
      for (;;) {
        Skel s;
        s.kind = Skel::Op;
        s.op = &op;
        for (size_t i = 0; i < choices.size(); ++i)
          s.children.push_back(choices[i][pick[i]]);
        out.push_back(std::move(s));
        size_t pos = choices.size();
        while (pos > 0) {
          --pos;
          if (++pick[pos] < choices[pos].size()) break;
          pick[pos] = 0;
          if (pos == 0) {
            pos = SIZE_MAX;
            break;
          }
        }
        if (pos == SIZE_MAX || choices.empty()) break;
      }
    }
    return out;
  }

  const LoopNest &loop_;
  const GrammarConfig &cfg_;
  const Registry &reg_;
};

// Instantiates a skeleton. Hole values are consumed left to right; when
// `prefix` is set, sequence parameter leaves become slice(p, 0, counter+c).
struct Instantiator {
  const std::vector<Value> &holes;
  size_t next = 0;
  bool prefix = false;
  std::string counter;
  Int offset = 0;

  Ir build(const Skel &s) {
    switch (s.kind) {
    case Skel::Param: {
      Ir v = ir::var(s.param);
      if (prefix) {
        Ir hi = offset == 0
                    ? ir::var(counter)
                    : ir::add(ir::var(counter), ir::int_lit(offset));
        return ir::slice(v, ir::int_lit(0), hi);
      }
      return v;
    }
    case Skel::ConstLeaf: {
      const Value &v = holes[next++];
      if (auto *i = std::get_if<Int>(&v)) return ir::int_lit(*i);
      return ir::seq_lit_ints(as_seq(v));
    }
    case Skel::Op: {
      std::vector<Ir> args;
      for (const auto &c : s.children) args.push_back(build(c));
      return ir::call(s.op->name, std::move(args));
    }
    }
    fail(ErrKind::UnsupportedConstruct, "bad skeleton");
  }
};

// Wraps only sequence-parameter leaves; constants and scalar params stay.
inline Ir instantiate(const Skel &s, const std::vector<Value> &holes,
                      bool prefix = false, const std::string &counter = "",
                      Int offset = 0) {
  Instantiator in{holes, 0, prefix, counter, offset};
  return in.build(s);
}

// Extracts the constant step of a counter update of the form i + k
// (possibly nested, as produced by in-body increments). Returns nullopt for
// anything else.
inline std::optional<Int> counter_step(const Ir &update,
                                       const std::string &counter) {
  if (update->tag == IrTag::Var)
    return update->name == counter ? std::optional<Int>(0) : std::nullopt;
  if (update->tag == IrTag::IntLit) return std::nullopt;
  if (update->tag == IrTag::Add) {
    const Ir &a = update->args[0], &b = update->args[1];
    if (b->tag == IrTag::IntLit) {
      auto inner = counter_step(a, counter);
      if (inner) return *inner + b->ival;
    }
    if (a->tag == IrTag::IntLit) {
      auto inner = counter_step(b, counter);
      if (inner) return *inner + a->ival;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// The ordered bound-conjunct sets for a loop. Each set is a list of boolean
// IR conjuncts; the empty set comes first so the weakest invariant is tried
// before any strengthening.
inline std::vector<std::vector<Ir>> conjunct_sets(const LoopNest &loop,
                                                  const GrammarConfig &cfg) {
  std::vector<std::vector<Ir>> sets;
  sets.push_back({});
  if (!cfg.bound_conjuncts) return sets;

  const std::string ctr = loop.counter();
  Ir lo = loop.init.at(ctr);
  Ir geLo = ir::le(lo, ir::var(ctr));
  sets.push_back({geLo});

  // Counter-progress link: counter == step * len(out) + lo. Needed when the
  // counter advances by more than one per iteration, where plain bound
  // conjuncts cannot exclude the in-between states.
  std::optional<Ir> link;
  if (loop.output_type == IrType::SeqInt) {
    auto step = detail::counter_step(loop.update.at(ctr), ctr);
    if (step && *step >= 1) {
      Ir rhs = ir::len(ir::var(loop.output_var));
      if (*step != 1) rhs = ir::mul(ir::int_lit(*step), rhs);
      if (!(lo->tag == IrTag::IntLit && lo->ival == 0)) rhs = ir::add(rhs, lo);
      link = ir::eq(ir::var(ctr), rhs);
    }
  }
  if (link) {
    sets.push_back({*link});
    sets.push_back({geLo, *link});
  }

  // Upper bounds drawn from the analyzed guard.
  std::vector<Ir> bounds;
  if (auto hi = guard_upper_bound(loop)) {
    bounds.push_back(*hi);
    // len(...) subterms of the bound are natural weaker bounds.
    std::function<void(const Ir &)> walk = [&](const Ir &e) {
      if (e->tag == IrTag::Len) {
        bool seen = false;
        for (const auto &b : bounds) seen = seen || ir_equal(b, e);
        if (!seen) bounds.push_back(e);
      }
      for (const auto &a : e->args) walk(a);
    };
    walk(*hi);
  }
  for (const auto &b : bounds) sets.push_back({geLo, ir::lt(ir::var(ctr), b)});
  for (const auto &b : bounds) sets.push_back({geLo, ir::le(ir::var(ctr), b)});
  return sets;
}

// Deterministic candidate stream.
class CandidateStream {
public:
  CandidateStream(const LoopNest &loop, const GrammarConfig &cfg,
                  const Registry &reg)
      : loop_(loop), cfg_(cfg), reg_(reg) {
    detail::SkeletonGen gen(loop, cfg, reg);
    skels_ = gen.roots(loop.output_type);
    conjuncts_ = conjunct_sets(loop, cfg);
    rewind();
  }

  void rewind() {
    skelIdx_ = 0;
    holePick_.clear();
    offsetIdx_ = 0;
    conjIdx_ = 0;
    index_ = 0;
    enter_skeleton();
  }

  std::optional<Candidate> next() {
    while (skelIdx_ < skels_.size()) {
      if (!holesValid_) {
        ++skelIdx_;
        enter_skeleton();
        continue;
      }
      Candidate c = build();
      step();
      return c;
    }
    return std::nullopt;
  }

  size_t skeleton_count() const { return skels_.size(); }

private:
  const std::vector<Value> &grid_of(HoleKind k) const {
    switch (k) {
    case HoleKind::KernelLit: return kernelValues_;
    case HoleKind::Stride: return strideValues_;
    case HoleKind::Scalar: return scalarValues_;
    }
    return strideValues_;
  }

  void enter_skeleton() {
    offsetIdx_ = 0;
    conjIdx_ = 0;
    holePick_.clear();
    holeKinds_.clear();
    holesValid_ = false;
    if (skelIdx_ >= skels_.size()) return;
    if (kernelValues_.empty()) {
      for (const auto &k : cfg_.kernel_grid) kernelValues_.push_back(k);
      for (Int s : cfg_.stride_grid) strideValues_.push_back(s);
      for (Int s : cfg_.scalar_grid) scalarValues_.push_back(s);
    }
    detail::collect_holes(skels_[skelIdx_], holeKinds_);
    holePick_.assign(holeKinds_.size(), 0);
    holesValid_ = true;
    for (HoleKind k : holeKinds_)
      holesValid_ = holesValid_ && !grid_of(k).empty();
  }

  std::vector<Value> hole_values() const {
    std::vector<Value> vals;
    for (size_t i = 0; i < holeKinds_.size(); ++i)
      vals.push_back(grid_of(holeKinds_[i])[holePick_[i]]);
    return vals;
  }

  Candidate build() {
    const detail::Skel &sk = skels_[skelIdx_];
    std::vector<Value> holes = hole_values();
    Ir psT = detail::instantiate(sk, holes);
    Ir invT = detail::instantiate(sk, holes, true, loop_.counter(),
                                  cfg_.slice_offsets[offsetIdx_]);
    Ir out = ir::var(loop_.output_var);
    Ir invBody = ir::eq(out, invT);
    const auto &conj = conjuncts_[conjIdx_];
    for (size_t i = conj.size(); i > 0; --i)
      invBody = ir::land(conj[i - 1], invBody);
    Candidate c;
    c.ps = ir::eq(out, psT);
    c.inv = invBody;
    c.meta.candidate_index = index_;
    for (size_t i = 0; i < holes.size(); ++i)
      c.meta.values.emplace_back("hole" + std::to_string(i), holes[i]);
    return c;
  }

  void step() {
    ++index_;
    if (++conjIdx_ < conjuncts_.size()) return;
    conjIdx_ = 0;
    if (++offsetIdx_ < cfg_.slice_offsets.size()) return;
    offsetIdx_ = 0;
    // Advance the hole odometer, rightmost fastest.
    size_t pos = holePick_.size();
    while (pos > 0) {
      --pos;
      if (++holePick_[pos] < grid_of(holeKinds_[pos]).size()) return;
      holePick_[pos] = 0;
    }
    ++skelIdx_;
    enter_skeleton();
  }

  const LoopNest &loop_;
  const GrammarConfig &cfg_;
  const Registry &reg_;
  std::vector<detail::Skel> skels_;
  std::vector<std::vector<Ir>> conjuncts_;
  std::vector<Value> kernelValues_, strideValues_, scalarValues_;
  size_t skelIdx_ = 0;
  std::vector<HoleKind> holeKinds_;
  std::vector<size_t> holePick_;
  bool holesValid_ = false;
  size_t offsetIdx_ = 0;
  size_t conjIdx_ = 0;
  long long index_ = 0;
};

}  // namespace liftc
