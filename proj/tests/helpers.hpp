#pragma once

// Shared test fixtures: corpus access, deterministic input generation, and
// subprocess helpers for driving the CLI binary end to end.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "liftc/liftc.hpp"

#ifndef LIFTC_CORPUS_DIR
#define LIFTC_CORPUS_DIR "corpus"
#endif
#ifndef LIFTC_MINISMT_BIN
#define LIFTC_MINISMT_BIN "liftc-minismt"
#endif
#ifndef LIFTC_BIN
#define LIFTC_BIN "liftc"
#endif
#ifndef LIFTC_GOLDEN_DIR
#define LIFTC_GOLDEN_DIR "tests/golden"
#endif
#ifndef LIFTC_SPECS_DIR
#define LIFTC_SPECS_DIR "specs"
#endif
#ifndef LIFTC_INCLUDE_DIR
#define LIFTC_INCLUDE_DIR "include"
#endif

namespace testutil {

inline std::string read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

inline std::string corpus_path(const std::string &name) {
  return std::string(LIFTC_CORPUS_DIR) + "/" + name;
}

inline std::string corpus_text(const std::string &name) {
  return read_file(corpus_path(name));
}

inline liftc::LoopNest corpus_loop(const std::string &name) {
  return liftc::analyze_text(corpus_text(name));
}

// Runs a shell command, capturing stdout and the exit code.
struct RunResult {
  int exit_code = -1;
  std::string out;
};

inline RunResult run_command(const std::string &cmd) {
  RunResult r;
  FILE *p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) throw std::runtime_error("popen failed: " + cmd);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

inline std::string shell_quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

// Deterministic environment generation used across suites, mirroring the
// library's generator but with an independent length policy for the
// randomized soundness checks: one shared length per environment.
inline std::vector<liftc::Env> random_envs(const liftc::LoopNest &loop,
                                           size_t count, liftc::Int max_len,
                                           liftc::Int vmin, liftc::Int vmax,
                                           std::uint64_t seed) {
  liftc::Rng rng(seed);
  std::vector<liftc::Env> envs;
  for (size_t k = 0; k < count; ++k) {
    liftc::Int len = rng.range(0, max_len);
    liftc::Env env;
    for (const auto &[n, t] : loop.params) {
      if (t == liftc::IrType::Int) {
        env[n] = rng.range(vmin, vmax);
      } else if (t == liftc::IrType::SeqInt) {
        liftc::SeqI s;
        for (liftc::Int i = 0; i < len; ++i) s.push_back(rng.range(vmin, vmax));
        env[n] = std::move(s);
      } else {
        liftc::MatI m;
        for (liftc::Int i = 0; i < len; ++i) {
          liftc::SeqI row;
          for (liftc::Int j = 0; j < len; ++j) row.push_back(rng.range(vmin, vmax));
          m.push_back(std::move(row));
        }
        env[n] = std::move(m);
      }
    }
    envs.push_back(std::move(env));
  }
  return envs;
}

inline std::string minismt_bin() { return LIFTC_MINISMT_BIN; }
inline std::string liftc_bin() { return LIFTC_BIN; }
inline std::string golden_dir() { return LIFTC_GOLDEN_DIR; }

// Evaluates the right-hand side of a found candidate's program summary on a
// parameter environment: the "run the lifted program" operation.
inline liftc::Value eval_lifted(const liftc::SynthesisResult &result,
                                const liftc::Env &params,
                                const liftc::Registry &reg) {
  const liftc::Ir &ps = result.candidate->ps;
  return liftc::eval(ps->args[1], params, reg);
}

}  // namespace testutil
