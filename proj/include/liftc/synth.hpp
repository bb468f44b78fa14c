#pragma once

// The synthesis loop: enumerate candidates, screen them against concrete
// executions of the source loop, verify the survivors through the SMT
// backend, and return the first verified candidate. Solver counterexamples
// feed back into the test suite, so later candidates that fail on a learned
// input never reach the solver again.

#include "liftc/enumerate.hpp"
#include "liftc/smt.hpp"

namespace liftc {

struct OracleResult {
  bool pass = false;
  Env witness;  // failing input environment when !pass
};

namespace detail {

// Loop traces are a property of the input alone, so they are computed once
// per input and shared across all candidates.
struct TraceCache {
  const LoopNest &loop;
  const Registry &reg;
  struct Entry {
    bool failed = false;  // the source itself errors on this input
    LoopRun run;
  };
  std::vector<Entry> entries;

  const Entry &get(const std::vector<Env> &tests, size_t i) {
    while (entries.size() < tests.size()) {
      Entry e;
      try {
        e.run = run_loop(loop, tests[entries.size()], reg);
      } catch (const Error &) {
        e.failed = true;
      }
      entries.push_back(std::move(e));
    }
    return entries[i];
  }
};

}  // namespace detail

// Executes the loop on each test input, checking the invariant on every
// loop-head state and the program summary on the final state. Interpreter
// errors count as failures with the offending input as witness.
inline OracleResult oracle_prefilter(const LoopNest &loop,
                                     const Candidate &cand,
                                     const std::vector<Env> &tests,
                                     const Registry &reg,
                                     detail::TraceCache *cache = nullptr) {
  detail::TraceCache local{loop, reg, {}};
  detail::TraceCache &tc = cache ? *cache : local;
  for (size_t i = 0; i < tests.size(); ++i) {
    const auto &entry = tc.get(tests, i);
    if (entry.failed) return {false, tests[i]};
    Env env = tests[i];
    try {
      for (const Env &state : entry.run.trace) {
        for (const auto &[n, v] : state) env[n] = v;
        if (!as_bool(eval(cand.inv, env, reg))) return {false, tests[i]};
      }
      // env now holds the final state.
      if (!as_bool(eval(cand.ps, env, reg))) return {false, tests[i]};
    } catch (const Error &) {
      return {false, tests[i]};
    }
  }
  return {true, {}};
}

enum class SynthStatus { Found, NoCandidateFound, Timeout };

inline const char *synth_status_name(SynthStatus s) {
  switch (s) {
  case SynthStatus::Found: return "found";
  case SynthStatus::NoCandidateFound: return "no_candidate";
  case SynthStatus::Timeout: return "timeout";
  }
  return "?";
}

struct SynthStats {
  long long enumerated = 0;
  long long oracle_pruned = 0;
  long long smt_queries = 0;  // candidates submitted to the solver backend
  long long counterexamples = 0;
  long long unknowns = 0;
  long long solver_timeouts = 0;
  long long wall_ms = 0;
};

struct SynthesisResult {
  SynthStatus status = SynthStatus::NoCandidateFound;
  std::optional<Candidate> candidate;
  bool bounded = false;  // verification mode of the winning candidate
  int bound = 0;
  SynthStats stats;
  LoopNest loop;
};

struct SynthOptions {
  std::string solver_cmd;
  std::string dump_smt_dir;  // forwarded to the backend when set
};

inline SynthesisResult synthesize(const LoopNest &loop,
                                  const GrammarConfig &cfg_in,
                                  const Registry &reg,
                                  const SynthOptions &opts) {
  GrammarConfig cfg = cfg_in;
  finalize_config(cfg);

  SynthesisResult result;
  result.loop = loop;
  result.bounded = cfg.bounded > 0;
  result.bound = cfg.bounded;

  auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  std::vector<Env> tests = make_test_suite(loop, cfg);
  detail::TraceCache traces{loop, reg, {}};
  CandidateStream stream(loop, cfg, reg);

  while (result.stats.enumerated < cfg.max_candidates) {
    if (elapsed_ms() > (long long)(cfg.total_timeout_s * 1000.0)) {
      result.status = SynthStatus::Timeout;
      result.stats.wall_ms = elapsed_ms();
      return result;
    }
    std::optional<Candidate> cand = stream.next();
    if (!cand) break;
    ++result.stats.enumerated;

    OracleResult oracle = oracle_prefilter(loop, *cand, tests, reg, &traces);
    if (!oracle.pass) {
      ++result.stats.oracle_pruned;
      continue;
    }

    VCSet vcs = make_vcs(loop, *cand, reg);
    VerifyOptions vopts;
    vopts.solver_cmd = opts.solver_cmd;
    vopts.per_query_timeout_s = cfg.per_query_timeout_s;
    vopts.bounded = cfg.bounded;
    vopts.kernel_name = loop.kernel_name;
    vopts.candidate_index = cand->meta.candidate_index;
    vopts.dump_dir = opts.dump_smt_dir;
    ++result.stats.smt_queries;
    VerificationOutcome outcome = verify_candidate(vcs, reg, vopts);

    switch (outcome.kind) {
    case VerificationOutcome::Verified:
    case VerificationOutcome::BoundedVerified:
      result.status = SynthStatus::Found;
      result.candidate = std::move(cand);
      result.stats.wall_ms = elapsed_ms();
      return result;
    case VerificationOutcome::Counterexample: {
      ++result.stats.counterexamples;
      // Learn the input part of the witness, but only when the source
      // program actually runs on it; otherwise it cannot discriminate.
      Env learned;
      for (const auto &[n, t] : loop.params) {
        auto it = outcome.witness.find(n);
        if (it != outcome.witness.end()) learned[n] = it->second;
      }
      if (learned.size() == loop.params.size()) {
        bool fresh = true;
        for (const auto &t : tests) fresh = fresh && !(t == learned);
        if (fresh) {
          try {
            run_loop(loop, learned, reg);
            tests.push_back(std::move(learned));
          } catch (const Error &) {
          }
        }
      }
      break;
    }
    case VerificationOutcome::Unknown:
      ++result.stats.unknowns;
      break;
    case VerificationOutcome::SolverTimeout:
      ++result.stats.solver_timeouts;
      break;
    }
  }

  result.status = SynthStatus::NoCandidateFound;
  result.stats.wall_ms = elapsed_ms();
  return result;
}

}  // namespace liftc
