// liftc: lift loop-based array kernels to accelerator operators and prove
// the translation, then emit a JSON report and a C stub against the
// accelerator API header.
//
// Exit codes: 0 found/verified, 2 no candidate (or counterexample in
// --verify-only), 3 timeout/unknown, 1 usage or internal errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "liftc/liftc.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) liftc::fail(liftc::ErrKind::ConfigError, "cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) liftc::fail(liftc::ErrKind::ConfigError, "cannot write " + path);
  f << content;
}

// Solver resolution: explicit flag, then LIFTC_SOLVER, then the bundled
// liftc-minismt sitting next to this binary.
std::string resolve_solver(const std::string &flag, const char *argv0) {
  if (!flag.empty()) return flag;
  if (const char *env = std::getenv("LIFTC_SOLVER"))
    if (*env) return env;
  std::error_code ec;
  fs::path self(argv0);
  fs::path sibling = self.parent_path() / "liftc-minismt";
  if (fs::exists(sibling, ec)) return sibling.string();
  return "";
}

liftc::Json witness_json(const liftc::Env &witness) {
  liftc::Json w = liftc::Json::object();
  for (const auto &[name, value] : witness) {
    if (auto *i = std::get_if<liftc::Int>(&value)) w[name] = *i;
    else if (auto *b = std::get_if<bool>(&value)) w[name] = *b;
    else if (auto *s = std::get_if<liftc::SeqI>(&value)) w[name] = *s;
    else w[name] = liftc::value_str(value);
  }
  return w;
}

int run_verify_only(const liftc::LoopNest &loop, const std::string &candPath,
                    const liftc::Registry &reg, const liftc::GrammarConfig &cfg,
                    const liftc::VerifyOptions &voptsIn,
                    const std::string &outDir, bool dumpVcs) {
  liftc::Candidate cand = liftc::parse_candidate(read_file(candPath));
  liftc::validate_candidate_constants(cand.ps, reg);
  liftc::validate_candidate_constants(cand.inv, reg);
  liftc::VCSet vcs = liftc::make_vcs(loop, cand, reg);
  if (dumpVcs)
    write_file(outDir + "/" + loop.kernel_name + ".vcs.sexp",
               liftc::render_vcs(vcs));
  liftc::VerifyOptions vopts = voptsIn;
  vopts.kernel_name = loop.kernel_name;
  vopts.candidate_index = 0;
  vopts.per_query_timeout_s = cfg.per_query_timeout_s;
  vopts.bounded = cfg.bounded;
  liftc::VerificationOutcome outcome = liftc::verify_candidate(vcs, reg, vopts);

  liftc::Json j = liftc::Json::object();
  j["kernel"] = loop.kernel_name;
  j["mode"] = "verify-only";
  j["outcome"] = liftc::outcome_name(outcome.kind);
  if (outcome.kind == liftc::VerificationOutcome::Counterexample) {
    j["vc"] = liftc::vc_label_name(outcome.vc_label);
    j["witness"] = witness_json(outcome.witness);
  } else {
    j["vc"] = nullptr;
    j["witness"] = nullptr;
  }
  std::string text = j.dump(2) + "\n";
  write_file(outDir + "/" + loop.kernel_name + ".verify.json", text);
  std::cout << text;
  switch (outcome.kind) {
  case liftc::VerificationOutcome::Verified:
  case liftc::VerificationOutcome::BoundedVerified:
    return 0;
  case liftc::VerificationOutcome::Counterexample:
    return 2;
  default:
    return 3;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"liftc: verified lifting of array kernels to accelerator "
               "operators"};
  std::string kernelPath, solverCmd, configPath, dumpSmtDir, emitWhat = "both",
              outDir = ".", verifyOnlyPath;
  int maxDepth = -1, bounded = -1;
  long long seed = -1;
  double timeoutS = -1;
  bool dumpVcs = false;

  app.add_option("kernel", kernelPath, "kernel source file (.mc)")
      ->required();
  app.add_option("--solver-cmd", solverCmd,
                 "SMT solver command (reads SMT-LIB on stdin)");
  app.add_option("--config", configPath, "key=value config file");
  app.add_option("--max-depth", maxDepth, "operator composition depth");
  app.add_option("--timeout", timeoutS, "total synthesis timeout, seconds");
  app.add_option("--seed", seed, "test-suite seed");
  app.add_option("--bounded", bounded,
                 "bounded verification: cap sequence lengths at N");
  app.add_option("--dump-smt", dumpSmtDir, "write emitted SMT scripts here");
  app.add_flag("--dump-vcs", dumpVcs, "write verification conditions");
  app.add_option("--emit", emitWhat, "json|c|both")
      ->check(CLI::IsMember({"json", "c", "both"}));
  app.add_option("--out", outDir, "output directory");
  app.add_option("--verify-only", verifyOnlyPath,
                 "verify a candidate file instead of searching");
  std::string operatorsPath;
  app.add_option("--operators", operatorsPath,
                 "load the operator registry from a declarative spec file");

  CLI11_PARSE(app, argc, argv);

  try {
    liftc::GrammarConfig cfg;
    if (!configPath.empty()) liftc::apply_config_text(cfg, read_file(configPath));
    if (maxDepth >= 0) cfg.max_op_depth = maxDepth;
    if (timeoutS >= 0) cfg.total_timeout_s = timeoutS;
    if (seed >= 0) cfg.test_seed = (std::uint64_t)seed;
    if (bounded >= 0) cfg.bounded = bounded;
    liftc::finalize_config(cfg);

    liftc::Registry reg = operatorsPath.empty()
                              ? liftc::builtin_registry()
                              : liftc::load_operator_specs(read_file(operatorsPath));
    std::string solver = resolve_solver(solverCmd, argv[0]);

    std::error_code ec;
    fs::create_directories(outDir, ec);
    if (!dumpSmtDir.empty()) fs::create_directories(dumpSmtDir, ec);

    liftc::SourceAST ast = liftc::parse_source(read_file(kernelPath));
    liftc::LoopNest loop = liftc::analyze(ast);

    if (!verifyOnlyPath.empty()) {
      liftc::VerifyOptions vopts;
      vopts.solver_cmd = solver;
      vopts.dump_dir = dumpSmtDir;
      return run_verify_only(loop, verifyOnlyPath, reg, cfg, vopts, outDir,
                             dumpVcs);
    }

    liftc::SynthOptions sopts;
    sopts.solver_cmd = solver;
    sopts.dump_smt_dir = dumpSmtDir;
    liftc::SynthesisResult result = liftc::synthesize(loop, cfg, reg, sopts);

    std::string report = liftc::report_json(result, reg);
    if (emitWhat == "json" || emitWhat == "both")
      write_file(outDir + "/" + loop.kernel_name + ".report.json", report);
    std::cout << report;

    if (result.status == liftc::SynthStatus::Found) {
      if (emitWhat == "c" || emitWhat == "both")
        write_file(outDir + "/" + loop.kernel_name + ".stub.c",
                   liftc::emit_c_stub(result, reg));
      if (dumpVcs) {
        liftc::VCSet vcs = liftc::make_vcs(loop, *result.candidate, reg);
        write_file(outDir + "/" + loop.kernel_name + ".vcs.sexp",
                   liftc::render_vcs(vcs));
      }
      return 0;
    }
    return result.status == liftc::SynthStatus::NoCandidateFound ? 2 : 3;
  } catch (const liftc::Error &e) {
    std::cerr << "liftc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "liftc: internal error: " << e.what() << "\n";
    return 1;
  }
}
