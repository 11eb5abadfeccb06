#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vuix/grid_case.hpp"

namespace vuix {

enum class MeasurementKind { Injection, Flow };

// One row of the measurement matrix: either the net power injection at a bus
// or the active flow on an in-service branch.
struct MeasurementInfo {
  MeasurementKind kind;
  int bus_index = -1;     // injections: observed bus; flows: from-bus index
  int branch_index = -1;  // flows: position in the case branch list, else -1
  std::string label;      // "inj:<bus id>" or "flow:<from id>-<to id>"
};

struct DcBuildConfig {
  // Remove the reference bus angle column so the matrix has full column rank.
  bool drop_reference_angle = false;
  // Divide branch susceptance by the off-nominal tap ratio when one is set.
  bool apply_tap_ratio = true;
};

// Linearized measurement model z = H * theta. Rows are all bus injections
// (case bus order) followed by all in-service branch flows (case branch
// order); columns are bus voltage angles in case bus order.
struct DcModel {
  Eigen::MatrixXd H;
  std::vector<MeasurementInfo> measurements;
  std::vector<int> state_bus_index;  // column -> bus index in the case

  int measurement_count() const noexcept { return static_cast<int>(H.rows()); }
  int state_count() const noexcept { return static_cast<int>(H.cols()); }
  int injection_count() const noexcept;
  int flow_count() const noexcept;
};

DcModel build_dc_model(const GridCase& grid, const DcBuildConfig& config = {});

}  // namespace vuix
