#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vuix/dc_model.hpp"
#include "vuix/vuix_engine.hpp"

namespace vuix {

inline constexpr const char* kReportFormatVersion = "vuix-report/1";

// Shortest fixed-width form that round-trips a double exactly (17 significant
// digits).
std::string format_double(double value);

// Configuration echoed into every artifact so a report is self-describing.
struct ReportConfig {
  std::string case_name;
  int k = 2;
  double lambda = 2.0;
  double v = 1.0;
  double rho = 0.1;
  double snr_db = 30.0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  bool drop_reference_angle = false;
};

struct SensorRow {
  int index = 0;
  std::string label;
  std::string kind;  // "injection" or "flow"
  double mean_vuix = 0.0;
  double var_vuix = 0.0;
  std::int64_t n_observed = 0;
  int k0_position = 0;  // 1-based position in the closed-form no-attack ranking
};

struct PositionRow {
  int position = 0;  // 1-based
  double p_injection = 0.0;
  double p_flow = 0.0;
};

struct RankRow {
  int position = 0;  // 1-based
  int index = 0;
  std::string label;
  std::string kind;
  double inv_diag = 0.0;  // diag(Sigma_yy^{-1}) entry driving the ranking
};

const char* kind_name(MeasurementKind kind);

std::vector<SensorRow> make_sensor_rows(const VuIxReport& report, const DcModel& model,
                                        const std::vector<int>& k0_ranking);
std::vector<PositionRow> make_position_rows(const VuIxReport& report);
std::vector<RankRow> make_rank_rows(const std::vector<int>& k0_ranking, const DcModel& model,
                                    const Eigen::VectorXd& inv_diag);

std::string sensors_to_csv(const std::vector<SensorRow>& rows, const ReportConfig& config);
std::string positions_to_csv(const std::vector<PositionRow>& rows, const ReportConfig& config);
std::string ranking_to_csv(const std::vector<RankRow>& rows, const ReportConfig& config);

std::string report_to_json(const std::vector<SensorRow>& sensors, const std::vector<PositionRow>& positions,
                           const ReportConfig& config);
std::string ranking_to_json(const std::vector<RankRow>& rows, const ReportConfig& config);

// Writes via a temporary file in the same directory plus an atomic rename, so
// readers never observe a half-written report.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace vuix
