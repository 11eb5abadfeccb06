#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "vuix/dc_model.hpp"
#include "vuix/errors.hpp"
#include "vuix/gaussian.hpp"
#include "vuix/grid_case.hpp"
#include "vuix/info_metrics.hpp"
#include "vuix/linalg.hpp"
#include "vuix/report.hpp"
#include "vuix/vuix_engine.hpp"

namespace {

struct Options {
  std::string case_path;
  int k = 2;
  double lambda = 2.0;
  double v = 1.0;
  double rho = 0.1;
  double snr_db = 30.0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  bool drop_reference_angle = false;
  std::string format = "csv";
  std::string out_dir;
  std::string attack_type = "single";
};

struct LoadedCase {
  vuix::GridCase grid;
  vuix::DcModel model;
  std::string name;
};

void validate(const Options& opt) {
  if (!(opt.lambda > 0.0))
    vuix::raise(vuix::ErrorCode::LambdaOutOfRange, "--lambda must be strictly positive");
  if (!(opt.rho >= 0.0 && opt.rho < 1.0))
    vuix::raise(vuix::ErrorCode::RhoOutOfRange, "--rho must lie in [0, 1)");
  if (!(opt.v >= 0.0)) vuix::raise(vuix::ErrorCode::InvalidConfig, "--v must be nonnegative");
  if (opt.trials < 1) vuix::raise(vuix::ErrorCode::InvalidConfig, "--trials must be at least 1");
  if (opt.k < 0) vuix::raise(vuix::ErrorCode::KTooLarge, "--k must be nonnegative");
}

LoadedCase load(const Options& opt) {
  LoadedCase out{vuix::load_case(opt.case_path), {}, {}};
  vuix::DcBuildConfig build;
  build.drop_reference_angle = opt.drop_reference_angle;
  out.model = vuix::build_dc_model(out.grid, build);
  out.name = std::filesystem::path(opt.case_path).stem().string();
  return out;
}

vuix::ReportConfig report_config(const Options& opt, const std::string& case_name) {
  vuix::ReportConfig cfg;
  cfg.case_name = case_name;
  cfg.k = opt.k;
  cfg.lambda = opt.lambda;
  cfg.v = opt.v;
  cfg.rho = opt.rho;
  cfg.snr_db = opt.snr_db;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  cfg.drop_reference_angle = opt.drop_reference_angle;
  return cfg;
}

void emit(const Options& opt, const std::string& filename, const std::string& content) {
  if (opt.out_dir.empty()) {
    std::cout << content;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec)
    vuix::raise(vuix::ErrorCode::FileNotFound, "cannot create output directory '" + opt.out_dir + "'");
  const std::string path = (std::filesystem::path(opt.out_dir) / filename).string();
  vuix::write_file_atomic(path, content);
  std::cout << "wrote " << path << "\n";
}

int run_case_info(const Options& opt) {
  const LoadedCase lc = load(opt);
  std::cout << "m=" << lc.model.measurement_count() << ", n=" << lc.model.state_count() << ", "
            << lc.model.injection_count() << " injections + " << lc.model.flow_count() << " flows\n";
  for (std::size_t i = 0; i < lc.model.measurements.size(); ++i) {
    const auto& meas = lc.model.measurements[i];
    std::cout << i << " " << meas.label << " " << vuix::kind_name(meas.kind) << "\n";
  }
  return 0;
}

int run_rank_k0(const Options& opt) {
  validate(opt);
  const LoadedCase lc = load(opt);
  const vuix::GaussianEnsemble ens = vuix::build_ensemble(lc.model.H, {opt.rho, opt.snr_db});
  const auto ranking = vuix::vulnerability_ranking_k0(ens);
  const Eigen::VectorXd inv_diag =
      vuix::spd_factorize(ens.Sigma_yy, "measurement covariance")
          .solve(Eigen::MatrixXd::Identity(ens.measurement_count(), ens.measurement_count()))
          .diagonal();
  const auto rows = vuix::make_rank_rows(ranking, lc.model, inv_diag);
  const auto cfg = report_config(opt, lc.name);
  if (opt.format == "json")
    emit(opt, "vuix_rank_k0.json", vuix::ranking_to_json(rows, cfg));
  else
    emit(opt, "vuix_rank_k0.csv", vuix::ranking_to_csv(rows, cfg));
  return 0;
}

int run_vuix(const Options& opt) {
  validate(opt);
  const LoadedCase lc = load(opt);
  if (opt.k >= lc.model.measurement_count())
    vuix::raise(vuix::ErrorCode::KTooLarge, "--k must be smaller than the measurement count " +
                                                std::to_string(lc.model.measurement_count()));
  const vuix::GaussianEnsemble ens = vuix::build_ensemble(lc.model.H, {opt.rho, opt.snr_db});

  vuix::MonteCarloConfig mc;
  mc.k = opt.k;
  mc.lambda = opt.lambda;
  mc.v = opt.v;
  mc.trials = opt.trials;
  mc.seed = opt.seed;
  const vuix::VuIxReport report = vuix::monte_carlo_vuix(lc.model, ens, mc);

  const auto k0_ranking = vuix::vulnerability_ranking_k0(ens);
  const auto sensor_rows = vuix::make_sensor_rows(report, lc.model, k0_ranking);
  const auto position_rows = vuix::make_position_rows(report);
  const auto cfg = report_config(opt, lc.name);

  if (opt.format == "json") {
    emit(opt, "vuix_report.json", vuix::report_to_json(sensor_rows, position_rows, cfg));
  } else {
    emit(opt, "vuix_sensors.csv", vuix::sensors_to_csv(sensor_rows, cfg));
    emit(opt, "vuix_positions.csv", vuix::positions_to_csv(position_rows, cfg));
  }
  return 0;
}

int run_attack(const Options& opt) {
  validate(opt);
  const LoadedCase lc = load(opt);
  const vuix::GaussianEnsemble ens = vuix::build_ensemble(lc.model.H, {opt.rho, opt.snr_db});
  const auto cfg = report_config(opt, lc.name);

  nlohmann::json doc;
  doc["format"] = vuix::kReportFormatVersion;
  std::string text;
  std::string filename;
  if (opt.attack_type == "unconstrained") {
    const vuix::AttackDistribution attack = vuix::optimal_unconstrained_attack(ens, opt.lambda);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(attack.sigma_aa);
    text = "attack=unconstrained lambda=" + vuix::format_double(opt.lambda) +
           " trace=" + vuix::format_double(attack.sigma_aa.trace()) +
           " rank=" + std::to_string(lu.rank()) + " m=" + std::to_string(ens.measurement_count()) + "\n";
    doc["attack"] = {{"type", "unconstrained"},
                     {"lambda", opt.lambda},
                     {"trace", attack.sigma_aa.trace()},
                     {"rank", lu.rank()},
                     {"m", ens.measurement_count()}};
    filename = "vuix_attack";
  } else {
    const vuix::SingleSensorAttack attack = vuix::optimal_single_sensor_attack(ens, opt.lambda);
    const auto& meas = lc.model.measurements[static_cast<std::size_t>(attack.sensor)];
    text = "attack=single lambda=" + vuix::format_double(opt.lambda) + " sensor=" +
           std::to_string(attack.sensor) + " label=" + meas.label + " kind=" + vuix::kind_name(meas.kind) +
           " variance=" + vuix::format_double(attack.variance) + "\n";
    doc["attack"] = {{"type", "single"},
                     {"lambda", opt.lambda},
                     {"sensor", attack.sensor},
                     {"label", meas.label},
                     {"kind", vuix::kind_name(meas.kind)},
                     {"variance", attack.variance}};
    filename = "vuix_attack";
  }

  if (opt.format == "json")
    emit(opt, filename + ".json", doc.dump(2) + "\n");
  else
    emit(opt, filename + ".txt", text);
  return 0;
}

void add_ensemble_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--case", opt.case_path, "MATPOWER-style case file")->required();
  cmd->add_option("--rho", opt.rho, "state correlation coefficient in [0, 1)")->capture_default_str();
  cmd->add_option("--snr-db", opt.snr_db, "signal-to-noise ratio in dB")->capture_default_str();
  cmd->add_flag("--drop-reference-angle", opt.drop_reference_angle,
                "remove the reference bus angle column from the model");
}

void add_output_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opt.out_dir, "directory to write report files (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Vulnerability-index toolkit for DC state-estimation measurements"};
  app.require_subcommand(1);

  CLI::App* info = app.add_subcommand("case-info", "Parse a case and list its measurements");
  info->add_option("--case", opt.case_path, "MATPOWER-style case file")->required();
  info->add_flag("--drop-reference-angle", opt.drop_reference_angle,
                 "remove the reference bus angle column from the model");

  CLI::App* rank = app.add_subcommand("rank-k0", "Closed-form vulnerability ranking with no existing attack");
  add_ensemble_options(rank, opt);
  add_output_options(rank, opt);

  CLI::App* mc = app.add_subcommand("vuix", "Monte-Carlo vulnerability-index statistics");
  add_ensemble_options(mc, opt);
  add_output_options(mc, opt);
  mc->add_option("--k", opt.k, "number of attacked sensors per trial")->capture_default_str();
  mc->add_option("--lambda", opt.lambda, "detection weight in the cost")->capture_default_str();
  mc->add_option("--v", opt.v, "probe variance for the vulnerability increment")->capture_default_str();
  mc->add_option("--trials", opt.trials, "Monte-Carlo trial count")->capture_default_str();
  mc->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();

  CLI::App* attack = app.add_subcommand("attack", "Closed-form optimal attack constructions");
  add_ensemble_options(attack, opt);
  add_output_options(attack, opt);
  attack->add_option("--lambda", opt.lambda, "detection weight in the cost")->capture_default_str();
  attack->add_option("--type", opt.attack_type, "attack construction")
      ->check(CLI::IsMember({"single", "unconstrained"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (info->parsed()) return run_case_info(opt);
    if (rank->parsed()) return run_rank_k0(opt);
    if (mc->parsed()) return run_vuix(opt);
    if (attack->parsed()) return run_attack(opt);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const vuix::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == vuix::ErrorCode::FileNotFound ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
