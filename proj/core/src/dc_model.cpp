#include "vuix/dc_model.hpp"

#include <algorithm>

#include "vuix/errors.hpp"

namespace vuix {

int DcModel::injection_count() const noexcept {
  return static_cast<int>(std::count_if(measurements.begin(), measurements.end(),
                                        [](const MeasurementInfo& m) { return m.kind == MeasurementKind::Injection; }));
}

int DcModel::flow_count() const noexcept {
  return measurement_count() - injection_count();
}

DcModel build_dc_model(const GridCase& grid, const DcBuildConfig& config) {
  const int n_bus = grid.bus_count();
  const int n_flow = grid.in_service_branch_count();
  if (n_flow == 0) raise(ErrorCode::NoInServiceBranch, "case has no in-service branch");

  const int m = n_bus + n_flow;
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m, n_bus);

  DcModel model;
  model.measurements.reserve(static_cast<std::size_t>(m));
  for (int b = 0; b < n_bus; ++b) {
    MeasurementInfo info;
    info.kind = MeasurementKind::Injection;
    info.bus_index = b;
    info.label = "inj:" + std::to_string(grid.bus_id_at(b));
    model.measurements.push_back(std::move(info));
  }

  // Fill the flow rows first, then form each injection row as the signed sum
  // of the flow rows incident to that bus. Summing rows instead of assembling
  // a separate susceptance matrix keeps "injection = sum of outgoing flows"
  // exact in floating point.
  int flow_row = n_bus;
  const auto& branches = grid.branches();
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const auto& br = branches[k];
    if (!br.in_service) continue;
    const int f = grid.bus_index(br.from_bus);
    const int t = grid.bus_index(br.to_bus);
    double tap = 1.0;
    if (config.apply_tap_ratio && br.tap_ratio != 0.0) tap = br.tap_ratio;
    const double b_series = 1.0 / (br.reactance_x * tap);
    full(flow_row, f) = b_series;
    full(flow_row, t) = -b_series;
    full.row(f) += full.row(flow_row);
    full.row(t) -= full.row(flow_row);

    MeasurementInfo info;
    info.kind = MeasurementKind::Flow;
    info.bus_index = f;
    info.branch_index = static_cast<int>(k);
    info.label = "flow:" + std::to_string(br.from_bus) + "-" + std::to_string(br.to_bus);
    model.measurements.push_back(std::move(info));
    ++flow_row;
  }

  model.state_bus_index.reserve(static_cast<std::size_t>(n_bus));
  for (int b = 0; b < n_bus; ++b) {
    if (config.drop_reference_angle && b == grid.reference_index()) continue;
    model.state_bus_index.push_back(b);
  }
  if (config.drop_reference_angle) {
    model.H.resize(m, n_bus - 1);
    for (std::size_t c = 0; c < model.state_bus_index.size(); ++c)
      model.H.col(static_cast<Eigen::Index>(c)) = full.col(model.state_bus_index[c]);
  } else {
    model.H = std::move(full);
  }
  return model;
}

}  // namespace vuix
