// Command-line front end: batch validation, algebra decomposition,
// correctability checks and recovery construction over JSON channel and
// decomposition files.
//
// Exit codes: 0 ok, 1 I/O or usage errors, 2 failed check or invalid
// channel, 3 decomposition failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "oqec/algebra.hpp"
#include "oqec/channel.hpp"
#include "oqec/code_zoo.hpp"
#include "oqec/correction.hpp"
#include "oqec/io.hpp"
#include "oqec/subsystems.hpp"

namespace {

using oqec::Index;
using oqec::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;
constexpr int kExitDecomposition = 3;

struct Options {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool json_only = false;
};

std::string fnv1a_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw oqec::Error("io: cannot open '" + path + "'");
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

Json input_entry(const std::string& path) {
  return Json{{"path", path}, {"digest", fnv1a_digest(path)}};
}

class Report {
public:
  Report(std::string command, const Options& opt) : opt_(opt) {
    json_["command"] = std::move(command);
    json_["inputs"] = Json::object();
    json_["tol"] = opt.tol;
    json_["seed"] = opt.seed;
    start_ = std::chrono::steady_clock::now();
  }

  void add_input(const std::string& key, const std::string& path) {
    json_["inputs"][key] = input_entry(path);
  }

  Json& result() { return json_["result"]; }

  void summary(const std::string& line) { summary_ = line; }

  int emit(int exit_code) {
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start_);
    json_["timing_ms"] = elapsed.count();
    std::cout << json_.dump(2) << "\n";
    if (!opt_.json_only && !summary_.empty())
      std::cerr << summary_ << "\n";
    return exit_code;
  }

private:
  Options opt_;
  Json json_;
  std::string summary_;
  std::chrono::steady_clock::time_point start_;
};

oqec::Tolerance tolerance(const Options& opt) { return {opt.tol}; }

int cmd_validate(const std::string& channel_path, const Options& opt) {
  Report report("validate", opt);
  report.add_input("channel", channel_path);
  const Json j = oqec::read_json_file(channel_path);
  try {
    const oqec::QuantumChannel ch =
        oqec::channel_from_json(j, tolerance(opt));
    report.result() = {{"ok", true},
                       {"dim", ch.dim()},
                       {"n_kraus", ch.n_kraus()},
                       {"tp_residual", 0.0}};
    // report the exact residual rather than just "below tolerance"
    oqec::ComplexMatrix sum =
        oqec::ComplexMatrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
    report.result()["tp_residual"] =
        (sum - oqec::ComplexMatrix::Identity(ch.dim(), ch.dim())).norm();
    report.summary("valid CPTP channel, dim " + std::to_string(ch.dim()) +
                   ", " + std::to_string(ch.n_kraus()) + " Kraus operators");
    return report.emit(kExitOk);
  } catch (const oqec::NotTracePreserving& e) {
    report.result() = {{"ok", false},
                       {"tp_residual", e.residual()},
                       {"error", e.what()}};
    report.summary(std::string("not trace preserving: ") + e.what());
    return report.emit(kExitFailed);
  }
}

int cmd_decompose(const std::string& channel_path, const Options& opt) {
  Report report("decompose", opt);
  report.add_input("channel", channel_path);
  const oqec::QuantumChannel ch =
      oqec::channel_from_json(oqec::read_json_file(channel_path),
                              tolerance(opt));
  try {
    const oqec::OperatorAlgebra alg =
        oqec::generate_interaction_algebra(ch, tolerance(opt));
    const oqec::AlgebraStructure interaction =
        oqec::decompose_structure(alg, tolerance(opt), opt.seed);
    const oqec::AlgebraStructure comm =
        oqec::noise_commutant_blocks(ch, tolerance(opt), opt.seed);
    report.result() = {
        {"interaction_algebra", oqec::structure_to_json(interaction)},
        {"noise_commutant", oqec::structure_to_json(comm)},
        {"algebra_dimension", alg.dimension()}};
    std::ostringstream line;
    line << "interaction algebra dim " << alg.dimension() << ", commutant blocks";
    for (const auto& b : comm.blocks)
      line << " (" << b.m << "," << b.n << ")";
    report.summary(line.str());
    return report.emit(kExitOk);
  } catch (const oqec::DecompositionFailed& e) {
    report.result() = {{"error", e.what()}, {"residual", e.residual()}};
    report.summary(std::string("decomposition failed: ") + e.what());
    return report.emit(kExitDecomposition);
  }
}

int cmd_check(const std::string& channel_path, const std::string& code_path,
              const std::string& condition, const std::string& recovery_path,
              int variant, const Options& opt) {
  Report report("check", opt);
  report.add_input("channel", channel_path);
  report.add_input("code", code_path);
  const oqec::QuantumChannel ch =
      oqec::channel_from_json(oqec::read_json_file(channel_path),
                              tolerance(opt));
  auto [decomp, units] = oqec::decomposition_from_json(
      oqec::read_json_file(code_path), tolerance(opt));

  bool ok = false;
  if (condition == "eq2") {
    const oqec::ComplexMatrix p =
        decomp.embedding * decomp.embedding.adjoint();
    const oqec::ConditionCheck chk =
        oqec::check_standard_condition(ch, p, tolerance(opt));
    report.result() = oqec::condition_to_json("eq2", chk);
    ok = chk.ok;
  } else if (condition == "eq8") {
    const oqec::ConditionCheck chk =
        oqec::check_unified_condition(ch, units, tolerance(opt));
    report.result() = oqec::condition_to_json("eq8", chk);
    ok = chk.ok;
  } else if (condition == "eq6") {
    oqec::QuantumChannel recovery =
        recovery_path.empty()
            ? oqec::identity_channel(ch.dim())
            : oqec::channel_from_json(oqec::read_json_file(recovery_path),
                                      tolerance(opt));
    if (!recovery_path.empty()) report.add_input("recovery", recovery_path);
    const oqec::CorrectableTriple triple = oqec::check_correctable_triple(
        recovery, ch, decomp, units, tolerance(opt));
    report.result() = {{"condition", "eq6"},
                       {"ok", triple.verified},
                       {"max_residual", triple.residual}};
    ok = triple.verified;
  } else if (condition == "ns") {
    const oqec::NsVerdict verdict =
        oqec::check_ns(ch, decomp, units, variant, tolerance(opt));
    report.result() = oqec::ns_verdict_to_json(verdict);
    report.result()["condition"] = "ns";
    report.result()["variant"] = variant;
    ok = verdict.ok;
  } else {
    throw CLI::ValidationError("condition must be eq2, eq6, eq8 or ns");
  }
  report.summary(condition + (ok ? " holds" : " fails"));
  return report.emit(ok ? kExitOk : kExitFailed);
}

int cmd_recover(const std::string& channel_path, const std::string& code_path,
                int convert_k, const std::string& recovery_path,
                const std::string& out_prefix, Index n_states,
                const Options& opt) {
  Report report("recover", opt);
  report.add_input("channel", channel_path);
  report.add_input("code", code_path);
  const oqec::QuantumChannel ch =
      oqec::channel_from_json(oqec::read_json_file(channel_path),
                              tolerance(opt));
  auto [decomp, units] = oqec::decomposition_from_json(
      oqec::read_json_file(code_path), tolerance(opt));

  if (convert_k < 0) {
    // Standard-model path: the code file's embedding spans the code space.
    const oqec::ComplexMatrix p =
        decomp.embedding * decomp.embedding.adjoint();
    std::optional<oqec::QuantumChannel> recovery;
    try {
      recovery.emplace(oqec::build_standard_recovery(ch, p, tolerance(opt)));
    } catch (const oqec::NotCorrectable& e) {
      report.result() = {{"ok", false}, {"error", e.what()}};
      report.summary(std::string("not correctable: ") + e.what());
      return report.emit(kExitFailed);
    }
    const std::string out_path = out_prefix + ".recovery.json";
    oqec::write_json_file(out_path, oqec::channel_to_json(*recovery));
    const oqec::RecoveryStats stats = oqec::recovery_state_stats(
        ch, *recovery, decomp.embedding, n_states, opt.seed);
    report.result() = {{"ok", true},
                       {"recovery_file", out_path},
                       {"n_states", n_states},
                       {"min_fidelity", stats.min_fidelity},
                       {"max_frobenius_error", stats.max_frobenius_error}};
    report.summary("recovery written to " + out_path + ", worst fidelity " +
                   std::to_string(stats.min_fidelity));
    return report.emit(kExitOk);
  }

  // Theorem-3 path: verify the triple and convert to a standard scheme.
  oqec::QuantumChannel recovery =
      recovery_path.empty()
          ? oqec::identity_channel(ch.dim())
          : oqec::channel_from_json(oqec::read_json_file(recovery_path),
                                    tolerance(opt));
  if (!recovery_path.empty()) report.add_input("recovery", recovery_path);
  const oqec::CorrectableTriple triple = oqec::check_correctable_triple(
      recovery, ch, decomp, units, tolerance(opt));
  if (!triple.verified) {
    report.result() = {{"ok", false},
                       {"error", "triple is not correctable"},
                       {"eq6_residual", triple.residual}};
    report.summary("triple is not correctable, residual " +
                   std::to_string(triple.residual));
    return report.emit(kExitFailed);
  }
  const oqec::StandardScheme scheme =
      oqec::convert_to_standard(triple, convert_k, tolerance(opt));

  const std::string rec_path = out_prefix + ".recovery.json";
  const std::string code_out = out_prefix + ".code.json";
  oqec::write_json_file(rec_path, oqec::channel_to_json(scheme.recovery));
  // The converted code P_k as a decomposition file with m = 1.
  const oqec::ComplexMatrix code_isometry =
      decomp.embedding.middleCols(convert_k * decomp.n, decomp.n);
  auto [std_decomp, std_units] =
      oqec::build_decomposition(code_isometry, 1, decomp.n, tolerance(opt));
  oqec::write_json_file(code_out, oqec::decomposition_to_json(std_decomp));

  const oqec::ConditionCheck eq2 = oqec::check_standard_condition(
      ch, scheme.code_projector, tolerance(opt));
  const oqec::RecoveryStats stats = oqec::recovery_state_stats(
      ch, scheme.recovery, code_isometry, n_states, opt.seed);
  report.result() = {{"ok", true},
                     {"recovery_file", rec_path},
                     {"code_file", code_out},
                     {"k", convert_k},
                     {"eq2", oqec::condition_to_json("eq2", eq2)},
                     {"n_states", n_states},
                     {"min_fidelity", stats.min_fidelity},
                     {"max_frobenius_error", stats.max_frobenius_error}};
  report.summary("standard scheme written to " + rec_path + " / " + code_out);
  return report.emit(kExitOk);
}

int cmd_fixture(const std::string& name,
                const std::vector<std::string>& param_kv,
                const std::string& base, const std::string& out_prefix,
                const Options& opt) {
  Report report("fixture", opt);
  oqec::FixtureParams params;
  params.base = base;
  for (const auto& kv : param_kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--param expects key=value, got '" + kv + "'");
    params.num[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  const oqec::Fixture fix = oqec::fixture(name, params);

  const std::string channel_path = out_prefix + ".channel.json";
  oqec::write_json_file(channel_path, oqec::channel_to_json(fix.channel));
  report.result() = {{"name", fix.name}, {"channel_file", channel_path}};
  if (fix.decomp) {
    const std::string code_path = out_prefix + ".code.json";
    oqec::write_json_file(code_path, oqec::decomposition_to_json(*fix.decomp));
    report.result()["code_file"] = code_path;
  }
  Json expected = Json::object();
  for (const auto& [check, verdict] : fix.expected) expected[check] = verdict;
  report.result()["expected"] = std::move(expected);
  report.summary("fixture '" + fix.name + "' written to " + channel_path);
  return report.emit(kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator quantum error correction toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--tol", opt.tol, "absolute Frobenius tolerance")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized sub-procedures")
      ->capture_default_str();
  app.add_flag("--json-only", opt.json_only,
               "suppress the human-readable summary on stderr");

  std::string channel_path, code_path, recovery_path;
  std::string condition = "eq2";
  int variant = 1;
  int convert_k = -1;
  Index n_states = 100;
  std::string out_prefix = "recovered";
  std::string fixture_name, fixture_base;
  std::vector<std::string> fixture_params;

  auto* validate =
      app.add_subcommand("validate", "validate a channel file as CPTP");
  validate->add_option("channel", channel_path, "channel JSON file")
      ->required();

  auto* decompose = app.add_subcommand(
      "decompose", "interaction algebra and noise commutant block structure");
  decompose->add_option("channel", channel_path, "channel JSON file")
      ->required();

  auto* check =
      app.add_subcommand("check", "check a correctability condition");
  check->add_option("channel", channel_path, "channel JSON file")->required();
  check->add_option("code", code_path, "code decomposition JSON file")
      ->required();
  check
      ->add_option("--condition", condition,
                   "eq2 (standard), eq6 (triple), eq8 (unified), ns (Lemma 2)")
      ->required();
  check->add_option("--recovery", recovery_path,
                    "recovery channel for eq6 (default: identity)");
  check->add_option("--variant", variant, "Lemma 2 variant for ns (1, 2, 3)")
      ->capture_default_str();

  auto* recover = app.add_subcommand(
      "recover", "build a recovery channel (or convert a triple, Theorem 3)");
  recover->add_option("channel", channel_path, "channel JSON file")
      ->required();
  recover->add_option("code", code_path, "code decomposition JSON file")
      ->required();
  recover->add_option(
      "--convert-from-triple", convert_k,
      "convert the verified triple for the 0-based projector index k");
  recover->add_option("--recovery", recovery_path,
                      "triple recovery channel (default: identity)");
  recover->add_option("--out", out_prefix, "output file prefix")
      ->capture_default_str();
  recover->add_option("--n-states", n_states,
                      "number of random code states in the fidelity report")
      ->capture_default_str();

  auto* fixture_cmd =
      app.add_subcommand("fixture", "export a named fixture to JSON files");
  fixture_cmd->add_option("name", fixture_name, "fixture name")->required();
  fixture_cmd->add_option("--param", fixture_params,
                          "fixture parameter key=value (repeatable)");
  fixture_cmd->add_option("--base", fixture_base,
                          "base fixture for random_unitary_conjugate");
  fixture_cmd->add_option("--out", out_prefix, "output file prefix")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(channel_path, opt);
    if (decompose->parsed()) return cmd_decompose(channel_path, opt);
    if (check->parsed())
      return cmd_check(channel_path, code_path, condition, recovery_path,
                       variant, opt);
    if (recover->parsed())
      return cmd_recover(channel_path, code_path, convert_k, recovery_path,
                         out_prefix, n_states, opt);
    if (fixture_cmd->parsed())
      return cmd_fixture(fixture_name, fixture_params, fixture_base,
                         out_prefix, opt);
  } catch (const oqec::NotCorrectable&) {
    return kExitFailed;
  } catch (const oqec::NotVerified& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const oqec::DecompositionFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDecomposition;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
