#include "vuix/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "vuix/errors.hpp"

namespace vuix {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

const char* kind_name(MeasurementKind kind) {
  return kind == MeasurementKind::Injection ? "injection" : "flow";
}

namespace {

std::string config_line(const ReportConfig& c) {
  std::ostringstream out;
  out << "# case=" << c.case_name << " k=" << c.k << " lambda=" << format_double(c.lambda) << " v="
      << format_double(c.v) << " rho=" << format_double(c.rho) << " snr_db=" << format_double(c.snr_db)
      << " trials=" << c.trials << " seed=" << c.seed << " drop_reference_angle="
      << (c.drop_reference_angle ? 1 : 0) << "\n";
  return out.str();
}

std::string csv_header(const ReportConfig& config) {
  return std::string("# ") + kReportFormatVersion + "\n" + config_line(config);
}

nlohmann::json config_json(const ReportConfig& c) {
  return {{"case", c.case_name},
          {"k", c.k},
          {"lambda", c.lambda},
          {"v", c.v},
          {"rho", c.rho},
          {"snr_db", c.snr_db},
          {"trials", c.trials},
          {"seed", c.seed},
          {"drop_reference_angle", c.drop_reference_angle}};
}

}  // namespace

std::vector<SensorRow> make_sensor_rows(const VuIxReport& report, const DcModel& model,
                                        const std::vector<int>& k0_ranking) {
  if (static_cast<int>(report.per_sensor.size()) != model.measurement_count() ||
      k0_ranking.size() != report.per_sensor.size())
    raise(ErrorCode::DimensionMismatch, "report, model, and ranking disagree on the sensor count");
  std::vector<int> k0_position(k0_ranking.size(), 0);
  for (std::size_t j = 0; j < k0_ranking.size(); ++j)
    k0_position[static_cast<std::size_t>(k0_ranking[j])] = static_cast<int>(j) + 1;

  std::vector<SensorRow> rows(report.per_sensor.size());
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const auto& info = model.measurements[s];
    rows[s].index = static_cast<int>(s);
    rows[s].label = info.label;
    rows[s].kind = kind_name(info.kind);
    rows[s].mean_vuix = report.per_sensor[s].mean_vuix;
    rows[s].var_vuix = report.per_sensor[s].var_vuix;
    rows[s].n_observed = report.per_sensor[s].n_observed;
    rows[s].k0_position = k0_position[s];
  }
  return rows;
}

std::vector<PositionRow> make_position_rows(const VuIxReport& report) {
  std::vector<PositionRow> rows(report.positions.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    rows[j].position = static_cast<int>(j) + 1;
    rows[j].p_injection = report.positions[j].p_injection;
    rows[j].p_flow = report.positions[j].p_flow;
  }
  return rows;
}

std::vector<RankRow> make_rank_rows(const std::vector<int>& k0_ranking, const DcModel& model,
                                    const Eigen::VectorXd& inv_diag) {
  if (static_cast<int>(k0_ranking.size()) != model.measurement_count() ||
      inv_diag.size() != model.measurement_count())
    raise(ErrorCode::DimensionMismatch, "ranking, model, and diagonal disagree on the sensor count");
  std::vector<RankRow> rows(k0_ranking.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const int s = k0_ranking[j];
    rows[j].position = static_cast<int>(j) + 1;
    rows[j].index = s;
    rows[j].label = model.measurements[static_cast<std::size_t>(s)].label;
    rows[j].kind = kind_name(model.measurements[static_cast<std::size_t>(s)].kind);
    rows[j].inv_diag = inv_diag(s);
  }
  return rows;
}

std::string sensors_to_csv(const std::vector<SensorRow>& rows, const ReportConfig& config) {
  std::ostringstream out;
  out << csv_header(config);
  out << "index,label,kind,mean_vuix,var_vuix,n_observed,k0_position\n";
  for (const auto& r : rows)
    out << r.index << "," << r.label << "," << r.kind << "," << format_double(r.mean_vuix) << ","
        << format_double(r.var_vuix) << "," << r.n_observed << "," << r.k0_position << "\n";
  return out.str();
}

std::string positions_to_csv(const std::vector<PositionRow>& rows, const ReportConfig& config) {
  std::ostringstream out;
  out << csv_header(config);
  out << "position,p_injection,p_flow\n";
  for (const auto& r : rows)
    out << r.position << "," << format_double(r.p_injection) << "," << format_double(r.p_flow) << "\n";
  return out.str();
}

std::string ranking_to_csv(const std::vector<RankRow>& rows, const ReportConfig& config) {
  std::ostringstream out;
  out << csv_header(config);
  out << "position,index,label,kind,inv_diag\n";
  for (const auto& r : rows)
    out << r.position << "," << r.index << "," << r.label << "," << r.kind << ","
        << format_double(r.inv_diag) << "\n";
  return out.str();
}

std::string report_to_json(const std::vector<SensorRow>& sensors, const std::vector<PositionRow>& positions,
                           const ReportConfig& config) {
  nlohmann::json doc;
  doc["format"] = kReportFormatVersion;
  doc["config"] = config_json(config);
  doc["sensors"] = nlohmann::json::array();
  for (const auto& r : sensors)
    doc["sensors"].push_back({{"index", r.index},
                              {"label", r.label},
                              {"kind", r.kind},
                              {"mean_vuix", r.mean_vuix},
                              {"var_vuix", r.var_vuix},
                              {"n_observed", r.n_observed},
                              {"k0_position", r.k0_position}});
  doc["positions"] = nlohmann::json::array();
  for (const auto& r : positions)
    doc["positions"].push_back(
        {{"position", r.position}, {"p_injection", r.p_injection}, {"p_flow", r.p_flow}});
  return doc.dump(2) + "\n";
}

std::string ranking_to_json(const std::vector<RankRow>& rows, const ReportConfig& config) {
  nlohmann::json doc;
  doc["format"] = kReportFormatVersion;
  doc["config"] = config_json(config);
  doc["ranking"] = nlohmann::json::array();
  for (const auto& r : rows)
    doc["ranking"].push_back({{"position", r.position},
                              {"index", r.index},
                              {"label", r.label},
                              {"kind", r.kind},
                              {"inv_diag", r.inv_diag}});
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) raise(ErrorCode::FileNotFound, "cannot write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    raise(ErrorCode::FileNotFound, "cannot move report into place at '" + path + "'");
  }
}

}  // namespace vuix
