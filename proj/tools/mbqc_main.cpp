// mbqc -- command-line driver for gate-fidelity sweeps over variable-range
// weighted graph states: full grids (sweep), threshold extraction
// (thresholds), the four-gate reference table (table1), unsharp-measurement
// deviations (unsharp), disorder averages (disorder), and the runtime
// invariant suite (validate).
//
// Exit code 0 iff every requested computation completed (for validate: every
// check passed); failed grid points are listed on standard error.

#include "CLI11.hpp"
#include "json.hpp"

#include "mbqc/mbqc.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

// Relative output paths land in MBQC_OUT_DIR when it is set; absolute paths
// and stdout (empty path) are untouched.
std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("MBQC_OUT_DIR");
  if (!dir || !*dir) return path;
  std::string d = dir;
  if (d.back() != '/') d += '/';
  return d + path;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    mbqc::write_text_file(resolve_out_path(out_path), content);
}

// Config files are JSON objects whose keys mirror the sweep flags; values
// given on the command line take precedence because the file is applied
// before CLI11 parses.
void apply_config_file(mbqc::SweepConfig& cfg, std::string& out_path,
                       std::vector<std::string>& keys, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j = nlohmann::json::parse(f);
  for (const auto& item : j.items()) keys.push_back(item.key());
  if (j.contains("gates")) cfg.gates = j.at("gates").get<std::vector<std::string>>();
  if (j.contains("alpha_start")) cfg.alpha_start = j.at("alpha_start").get<double>();
  if (j.contains("alpha_stop")) cfg.alpha_stop = j.at("alpha_stop").get<double>();
  if (j.contains("alpha_step")) cfg.alpha_step = j.at("alpha_step").get<double>();
  if (j.contains("lambdas")) cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
  if (j.contains("ns")) cfg.ns = j.at("ns").get<std::vector<int>>();
  if (j.contains("sigmas")) cfg.sigmas = j.at("sigmas").get<std::vector<double>>();
  if (j.contains("realizations")) cfg.realizations = j.at("realizations").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (j.contains("output_path")) out_path = j.at("output_path").get<std::string>();
  if (j.contains("disorder_mode"))
    cfg.disorder_mode =
        mbqc::disorder_mode_from_string(j.at("disorder_mode").get<std::string>());
  if (j.contains("distance_mode")) {
    if (j.at("distance_mode").is_null())
      cfg.distance_mode.reset();
    else
      cfg.distance_mode =
          mbqc::distance_mode_from_string(j.at("distance_mode").get<std::string>());
  }
}

int report_failures(const mbqc::SweepResult& result) {
  for (const auto& line : result.failures)
    std::cerr << "failed: " << line << "\n";
  return result.failures.empty() ? 0 : 1;
}

void emit_records(const mbqc::SweepResult& result, const std::string& format,
                  const std::string& out_path) {
  emit(format == "json" ? mbqc::to_json(result).dump() : mbqc::to_csv(result),
       out_path);
}

// Fidelity deviation delta_sigma in percent, recomputed from record fields.
std::optional<double> record_delta_sigma(const mbqc::SweepRecord& r) {
  if (!r.fid_opt || !r.fid_quenched) return std::nullopt;
  const double top = std::max(*r.fid_opt, r.f_classical) -
                     std::max(*r.fid_quenched, r.f_classical);
  return top / *r.fid_opt * 100.0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact gate-fidelity toolkit for measurement-based computation on "
      "variable-range weighted graph states"};
  app.require_subcommand(1);

  mbqc::SweepConfig cfg;
  std::string out_path;
  std::vector<std::string> config_keys;

  // The config file (if any) seeds defaults before CLI11 binds them, so it
  // must be found by a pre-scan rather than by an ordinary option callback.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        apply_config_file(cfg, out_path, config_keys, argv[i + 1]);
      else if (arg.rfind("--config=", 0) == 0)
        apply_config_file(cfg, out_path, config_keys, arg.substr(9));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto configured = [&](const std::string& key) {
    return std::find(config_keys.begin(), config_keys.end(), key) !=
           config_keys.end();
  };

  std::string distance_mode_str =
      cfg.distance_mode ? mbqc::to_string(*cfg.distance_mode) : "";
  std::string disorder_mode_str = mbqc::to_string(cfg.disorder_mode);
  std::string config_path_unused;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path_unused,
                    "JSON config file applied as defaults (keys mirror flags)");
    sub->add_option("-o,--out", out_path,
                    "Output file (default stdout; relative paths land in "
                    "$MBQC_OUT_DIR)");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--threads", cfg.threads,
                    "Worker threads (0: $MBQC_THREADS, else hardware)")
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Base seed for disorder sampling")
        ->capture_default_str();
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--gate", cfg.gates,
                    "Gates (H, Rz(pi/2), T, CNOT; aliases Rz, phase, CX)")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--alpha-start", cfg.alpha_start, "Grid start")
        ->capture_default_str();
    sub->add_option("--alpha-stop", cfg.alpha_stop, "Grid stop (inclusive)")
        ->capture_default_str();
    sub->add_option("--alpha-step", cfg.alpha_step, "Grid step")
        ->capture_default_str();
    sub->add_option("--distance-mode", distance_mode_str,
                    "Override the preset distance convention")
        ->check(CLI::IsMember({"euclidean", "graph", "label-chain"}));
  };

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Fidelity records over gate x alpha x lambda x n x sigma");
  add_common(sweep);
  add_grid(sweep);
  sweep->add_option("--lambda", cfg.lambdas, "Sharpness values in [0,1]")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--n", cfg.ns, "Unsharp measurement counts (0 = sharp)")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--sigma", cfg.sigmas, "Disorder strengths (0 = ordered)")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--realizations", cfg.realizations,
                    "Disorder realizations per point")
      ->capture_default_str();
  sweep->add_option("--disorder-mode", disorder_mode_str, "Disorder sampling")
      ->check(CLI::IsMember({"per-bond", "per-site"}))
      ->capture_default_str();

  double saturation_accuracy = mbqc::kDefaultSaturationAccuracy;
  bool strict_saturation = false;
  double scan_step = 0.02, scan_stop = 12.0;

  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Extract (f_max, alpha_max, alpha_s, alpha_th) per gate");
  add_common(thresholds);
  thresholds
      ->add_option("--gate", cfg.gates, "Gates to analyze")
      ->delimiter(',')
      ->capture_default_str();
  thresholds
      ->add_option("--distance-mode", distance_mode_str,
                   "Override the preset distance convention")
      ->check(CLI::IsMember({"euclidean", "graph", "label-chain"}));
  thresholds
      ->add_option("--saturation-accuracy", saturation_accuracy,
                   "Epsilon defining alpha_s via F >= 1 - epsilon")
      ->capture_default_str();
  thresholds->add_flag("--strict-saturation", strict_saturation,
                       "Use the literal 1e-3 saturation accuracy");
  thresholds->add_option("--scan-step", scan_step, "Scan grid step")
      ->capture_default_str();
  thresholds->add_option("--scan-stop", scan_stop, "Scan grid stop")
      ->capture_default_str();

  CLI::App* table1 = app.add_subcommand(
      "table1", "Four-gate threshold table vs bundled reference values");
  add_common(table1);
  table1
      ->add_option("--distance-mode", distance_mode_str,
                   "Force the CNOT distance convention (mismatch vs the "
                   "calibrated winner is flagged)")
      ->check(CLI::IsMember({"euclidean", "graph", "label-chain"}));
  table1
      ->add_option("--saturation-accuracy", saturation_accuracy,
                   "Epsilon defining alpha_s")
      ->capture_default_str();
  table1->add_flag("--strict-saturation", strict_saturation,
                   "Use the literal 1e-3 saturation accuracy");

  CLI::App* unsharp = app.add_subcommand(
      "unsharp", "Fidelity deviation Delta^n under unsharp measurements");
  add_common(unsharp);
  add_grid(unsharp);
  std::vector<double> unsharp_lambdas = {0.85};
  std::vector<int> unsharp_ns;
  unsharp->add_option("--lambda", unsharp_lambdas, "Sharpness values")
      ->delimiter(',')
      ->capture_default_str();
  unsharp->add_option("--n", unsharp_ns,
                      "Unsharp counts (default: 1..measured per gate)")
      ->delimiter(',');

  CLI::App* disorder = app.add_subcommand(
      "disorder", "Disorder-averaged fidelity over sigma grids");
  add_common(disorder);
  add_grid(disorder);
  std::vector<double> disorder_sigmas = {0.01, 0.05, 0.1};
  disorder->add_option("--sigma", disorder_sigmas, "Disorder strengths")
      ->delimiter(',')
      ->capture_default_str();
  disorder
      ->add_option("--realizations", cfg.realizations, "Realizations per point")
      ->capture_default_str();
  disorder->add_option("--disorder-mode", disorder_mode_str, "Disorder sampling")
      ->check(CLI::IsMember({"per-bond", "per-site"}))
      ->capture_default_str();

  CLI::App* validate =
      app.add_subcommand("validate", "Run the runtime invariant suite");
  add_common(validate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!distance_mode_str.empty())
      cfg.distance_mode = mbqc::distance_mode_from_string(distance_mode_str);
    cfg.disorder_mode = mbqc::disorder_mode_from_string(disorder_mode_str);
    if (strict_saturation) saturation_accuracy = 1e-3;

    if (sweep->parsed()) {
      const mbqc::SweepResult result = mbqc::run_sweep(cfg);
      emit_records(result, cfg.format, out_path);
      return report_failures(result);
    }

    if (thresholds->parsed()) {
      mbqc::ThresholdOptions opt;
      opt.saturation_accuracy = saturation_accuracy;
      opt.scan_step = scan_step;
      opt.scan_stop = scan_stop;
      opt.distance_mode = cfg.distance_mode;
      mbqc::JsonValue reports = mbqc::JsonValue::array();
      std::string csv = mbqc::csv_row({"gate", "f_max", "alpha_max", "alpha_s",
                                       "alpha_th", "f_classical",
                                       "saturation_accuracy", "distance_mode"});
      for (const auto& gate : cfg.gates) {
        const mbqc::ThresholdReport rep = mbqc::compute_thresholds(gate, opt);
        reports.push_back(mbqc::to_json(rep));
        csv += mbqc::csv_row(
            {rep.gate, mbqc::format_double(rep.f_max),
             mbqc::format_double(rep.alpha_max),
             rep.alpha_s ? mbqc::format_double(*rep.alpha_s) : "",
             rep.alpha_th ? mbqc::format_double(*rep.alpha_th) : "",
             mbqc::format_double(rep.f_classical),
             mbqc::format_double(rep.saturation_accuracy),
             mbqc::to_string(rep.distance_mode)});
      }
      if (cfg.format == "json") {
        mbqc::JsonValue j = mbqc::JsonValue::object();
        j.set("schema", "mbqc-thresholds/1").set("reports", std::move(reports));
        emit(j.dump(), out_path);
      } else {
        emit(csv, out_path);
      }
      return 0;
    }

    if (table1->parsed()) {
      mbqc::ThresholdOptions opt;
      opt.saturation_accuracy = saturation_accuracy;
      const mbqc::Table1Report rep =
          mbqc::compute_table1(opt, cfg.distance_mode);
      if (cfg.format == "json")
        emit(mbqc::to_json(rep).dump(), out_path);
      else
        emit(mbqc::table1_text(rep), out_path);
      return 0;
    }

    if (unsharp->parsed()) {
      // Per-gate n ranges: run one sweep per gate and concatenate records.
      cfg.lambdas = unsharp_lambdas;
      cfg.sigmas = {0.0};
      mbqc::SweepResult merged;
      merged.config = cfg;
      if (!unsharp_ns.empty()) merged.config.ns = unsharp_ns;
      for (const auto& gate : cfg.gates) {
        mbqc::SweepConfig per_gate = cfg;
        per_gate.gates = {gate};
        per_gate.ns = unsharp_ns;
        if (per_gate.ns.empty()) {
          const int measured =
              static_cast<int>(mbqc::gate_spec(gate, cfg.distance_mode).plan.size());
          for (int n = 1; n <= measured; ++n) per_gate.ns.push_back(n);
        }
        mbqc::SweepResult part = mbqc::run_sweep(per_gate);
        merged.records.insert(merged.records.end(),
                              std::make_move_iterator(part.records.begin()),
                              std::make_move_iterator(part.records.end()));
        merged.failures.insert(merged.failures.end(), part.failures.begin(),
                               part.failures.end());
      }
      emit_records(merged, cfg.format, out_path);
      return report_failures(merged);
    }

    if (disorder->parsed()) {
      // Monte Carlo points are ~1000x the cost of ordered ones; default to a
      // coarse grid unless the user asked for something specific.
      if (disorder->count("--alpha-step") == 0 && !configured("alpha_step"))
        cfg.alpha_step = 0.5;
      cfg.sigmas = disorder_sigmas;
      cfg.lambdas = {1.0};
      cfg.ns = {0};
      const mbqc::SweepResult result = mbqc::run_sweep(cfg);
      emit_records(result, cfg.format, out_path);
      for (const auto& r : result.records)
        if (const auto delta = record_delta_sigma(r))
          std::cerr << "delta_sigma " << r.gate << " alpha=" << r.alpha
                    << " sigma=" << r.sigma << ": "
                    << mbqc::format_double(*delta) << "% (stderr "
                    << (r.std_error ? mbqc::format_double(*r.std_error) : "-")
                    << ")\n";
      return report_failures(result);
    }

    if (validate->parsed()) {
      const std::vector<mbqc::ValidationCheck> checks = mbqc::run_validation();
      bool all = true;
      std::string text;
      for (const auto& c : checks) {
        all = all && c.pass;
        text += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name + "  (" +
                c.detail + ")\n";
      }
      emit(text, out_path);
      return all ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
