#pragma once

// Search configuration: hole grids, invariant grammar knobs, the seeded
// concrete test suite, and budgets. Defaults are deliberately small; every
// field can be overridden from a key=value config file.

#include <cstdint>

#include "liftc/analyze.hpp"

namespace liftc {

struct GrammarConfig {
  int max_op_depth = 2;

  // Hole grids. The kernel grid is generated from the length/entry ranges
  // below unless a config file overrides those.
  std::vector<SeqI> kernel_grid;
  std::vector<Int> stride_grid{1, 2};
  std::vector<Int> scalar_grid{-3, -2, -1, 1, 2, 3};

  int kernel_len_min = 1, kernel_len_max = 3;
  Int kernel_entry_min = -2, kernel_entry_max = 2;

  std::vector<Int> slice_offsets{0, 1, 2};
  bool bound_conjuncts = true;

  // Seeded concrete test inputs: one environment per listed length, all
  // sequence parameters sharing that length.
  std::vector<Int> test_lengths{0, 1, 2, 3, 5, 8};
  Int test_value_min = -10, test_value_max = 10;
  std::uint64_t test_seed = 42;

  long long max_candidates = 30000;
  double per_query_timeout_s = 10.0;
  double total_timeout_s = 120.0;

  // 0 = full verification; N > 0 = bounded mode, sequence lengths <= N.
  int bounded = 0;
};

// Deterministic splitmix64; used instead of std::uniform_int_distribution so
// generated suites are identical across standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97f4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  Int range(Int lo, Int hi) {  // inclusive
    return lo + (Int)(next() % (std::uint64_t)(hi - lo + 1));
  }
};

inline std::vector<SeqI> default_kernel_grid(const GrammarConfig &cfg) {
  std::vector<SeqI> grid;
  for (int len = cfg.kernel_len_min; len <= cfg.kernel_len_max; ++len) {
    SeqI k(len, cfg.kernel_entry_min);
    for (;;) {
      bool allZero = true;
      for (Int v : k) allZero = allZero && v == 0;
      if (!allZero) grid.push_back(k);
      int pos = len - 1;
      while (pos >= 0 && k[pos] == cfg.kernel_entry_max) {
        k[pos] = cfg.kernel_entry_min;
        --pos;
      }
      if (pos < 0) break;
      ++k[pos];
    }
  }
  return grid;
}

inline void finalize_config(GrammarConfig &cfg) {
  if (cfg.kernel_grid.empty()) cfg.kernel_grid = default_kernel_grid(cfg);
  if (cfg.kernel_grid.empty() || cfg.stride_grid.empty() ||
      cfg.scalar_grid.empty() || cfg.slice_offsets.empty())
    fail(ErrKind::ConfigError, "hole grids must be nonempty");
  for (Int s : cfg.stride_grid)
    if (s <= 0) fail(ErrKind::ConfigError, "strides must be >= 1");
  if (cfg.test_lengths.empty())
    fail(ErrKind::ConfigError, "test suite must be nonempty");
  if (cfg.max_op_depth < 1)
    fail(ErrKind::ConfigError, "max depth must be >= 1");
}

// One shared length per environment keeps kernels over paired arrays total
// on every generated input.
inline std::vector<Env> make_test_suite(const LoopNest &loop,
                                        const GrammarConfig &cfg) {
  Rng rng(cfg.test_seed);
  std::vector<Env> suite;
  for (Int len : cfg.test_lengths) {
    Env env;
    for (const auto &[n, t] : loop.params) {
      if (t == IrType::Int) {
        env[n] = rng.range(cfg.test_value_min, cfg.test_value_max);
      } else if (t == IrType::SeqInt) {
        SeqI s;
        for (Int i = 0; i < len; ++i)
          s.push_back(rng.range(cfg.test_value_min, cfg.test_value_max));
        env[n] = std::move(s);
      } else {
        MatI m;
        for (Int i = 0; i < len; ++i) {
          SeqI row;
          for (Int j = 0; j < len; ++j)
            row.push_back(rng.range(cfg.test_value_min, cfg.test_value_max));
          m.push_back(std::move(row));
        }
        env[n] = std::move(m);
      }
    }
    suite.push_back(std::move(env));
  }
  return suite;
}

// ---------------------------------------------------------------------------
// Config files: one `key = value` per line, '#' comments. Lists are
// comma separated.

namespace detail {

inline std::vector<Int> parse_int_list(const std::string &v,
                                       const std::string &key) {
  std::vector<Int> out;
  std::string cur;
  std::istringstream is(v);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (cur.empty()) continue;
    try {
      out.push_back(std::stoll(cur));
    } catch (...) {
      fail(ErrKind::ConfigError, "bad integer in " + key + ": " + cur);
    }
  }
  return out;
}

}  // namespace detail

inline void apply_config_text(GrammarConfig &cfg, const std::string &text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrKind::ConfigError,
           "line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    auto asInt = [&]() {
      try {
        return std::stoll(val);
      } catch (...) {
        fail(ErrKind::ConfigError, "bad value for " + key + ": " + val);
      }
    };
    auto asDouble = [&]() {
      try {
        return std::stod(val);
      } catch (...) {
        fail(ErrKind::ConfigError, "bad value for " + key + ": " + val);
      }
    };
    if (key == "max_depth") cfg.max_op_depth = (int)asInt();
    else if (key == "stride_grid") cfg.stride_grid = detail::parse_int_list(val, key);
    else if (key == "scalar_grid") cfg.scalar_grid = detail::parse_int_list(val, key);
    else if (key == "slice_offsets") cfg.slice_offsets = detail::parse_int_list(val, key);
    else if (key == "kernel_len_min") cfg.kernel_len_min = (int)asInt();
    else if (key == "kernel_len_max") cfg.kernel_len_max = (int)asInt();
    else if (key == "kernel_entry_min") cfg.kernel_entry_min = asInt();
    else if (key == "kernel_entry_max") cfg.kernel_entry_max = asInt();
    else if (key == "bound_conjuncts") cfg.bound_conjuncts = asInt() != 0;
    else if (key == "test_lengths") cfg.test_lengths = detail::parse_int_list(val, key);
    else if (key == "test_value_min") cfg.test_value_min = asInt();
    else if (key == "test_value_max") cfg.test_value_max = asInt();
    else if (key == "seed") cfg.test_seed = (std::uint64_t)asInt();
    else if (key == "max_candidates") cfg.max_candidates = asInt();
    else if (key == "per_query_timeout_s") cfg.per_query_timeout_s = asDouble();
    else if (key == "total_timeout_s") cfg.total_timeout_s = asDouble();
    else if (key == "bounded") cfg.bounded = (int)asInt();
    else fail(ErrKind::ConfigError, "unknown config key " + key);
  }
}

}  // namespace liftc
