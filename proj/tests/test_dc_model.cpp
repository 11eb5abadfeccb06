#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include "common/oracles.hpp"
#include "common/testutil.hpp"
#include "vuix/dc_model.hpp"
#include "vuix/errors.hpp"
#include "vuix/grid_case.hpp"

using testutil::data_path;
using testutil::error_code_of;
using namespace vuix;

namespace {

GridCase two_bus(double x = 0.5) {
  return GridCase(100.0, {{1, BusType::Ref}, {2, BusType::PQ}},
                  {{1, 2, x, 0.0, true}});
}

}  // namespace

TEST_CASE("two-bus model is exact") {
  const DcModel model = build_dc_model(two_bus());
  REQUIRE(model.measurement_count() == 3);
  REQUIRE(model.state_count() == 2);
  CHECK(model.injection_count() == 2);
  CHECK(model.flow_count() == 1);

  Eigen::MatrixXd expected(3, 2);
  expected << 2.0, -2.0, -2.0, 2.0, 2.0, -2.0;
  CHECK(model.H == expected);

  CHECK(model.measurements[0].kind == MeasurementKind::Injection);
  CHECK(model.measurements[0].label == "inj:1");
  CHECK(model.measurements[2].kind == MeasurementKind::Flow);
  CHECK(model.measurements[2].label == "flow:1-2");
  CHECK(model.measurements[2].branch_index == 0);
}

TEST_CASE("measurements are ordered injections-by-bus then flows-by-branch") {
  const GridCase grid = load_case(data_path("case9.m"));
  const DcModel model = build_dc_model(grid);
  REQUIRE(model.measurement_count() == 18);
  REQUIRE(model.state_count() == 9);
  for (int i = 0; i < 9; ++i) {
    CHECK(model.measurements[static_cast<std::size_t>(i)].kind == MeasurementKind::Injection);
    CHECK(model.measurements[static_cast<std::size_t>(i)].bus_index == i);
  }
  int last_branch = -1;
  for (int i = 9; i < 18; ++i) {
    const auto& meas = model.measurements[static_cast<std::size_t>(i)];
    CHECK(meas.kind == MeasurementKind::Flow);
    CHECK(meas.branch_index > last_branch);
    last_branch = meas.branch_index;
  }
}

TEST_CASE("every injection row is the signed sum of its incident flow rows") {
  for (const char* name : {"case9.m", "case14.m", "case30.m"}) {
    const GridCase grid = load_case(data_path(name));
    const DcModel model = build_dc_model(grid);
    const int n = grid.bus_count();
    Eigen::MatrixXd recomputed = Eigen::MatrixXd::Zero(n, model.state_count());
    for (int r = n; r < model.measurement_count(); ++r) {
      const auto& meas = model.measurements[static_cast<std::size_t>(r)];
      const auto& br = grid.branches()[static_cast<std::size_t>(meas.branch_index)];
      recomputed.row(grid.bus_index(br.from_bus)) += model.H.row(r);
      recomputed.row(grid.bus_index(br.to_bus)) -= model.H.row(r);
    }
    CAPTURE(name);
    CHECK((model.H.topRows(n) - recomputed).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("H matches an independent nodal-accumulation construction") {
  for (const char* name : {"case9.m", "case14.m", "case30.m"}) {
    const GridCase grid = load_case(data_path(name));
    for (const bool drop : {false, true}) {
      DcBuildConfig config;
      config.drop_reference_angle = drop;
      const DcModel model = build_dc_model(grid, config);
      const Eigen::MatrixXd expected = oracles::rebuild_measurement_matrix(grid, drop, true);
      CAPTURE(name);
      CAPTURE(drop);
      REQUIRE(model.H.rows() == expected.rows());
      REQUIRE(model.H.cols() == expected.cols());
      CHECK((model.H - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("rows sum to zero and injection columns sum to zero") {
  for (const char* name : {"case9.m", "case14.m", "case30.m"}) {
    const GridCase grid = load_case(data_path(name));
    const DcModel model = build_dc_model(grid);
    CAPTURE(name);
    CHECK(model.H.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(model.H.topRows(grid.bus_count()).colwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("dropping the reference angle removes exactly that column") {
  const GridCase grid = load_case(data_path("case9.m"));
  const DcModel full = build_dc_model(grid);
  DcBuildConfig config;
  config.drop_reference_angle = true;
  const DcModel reduced = build_dc_model(grid, config);

  REQUIRE(reduced.state_count() == 8);
  REQUIRE(static_cast<int>(reduced.state_bus_index.size()) == 8);
  int col = 0;
  for (int b = 0; b < grid.bus_count(); ++b) {
    if (b == grid.reference_index()) continue;
    CHECK(reduced.state_bus_index[static_cast<std::size_t>(col)] == b);
    CHECK(reduced.H.col(col) == full.H.col(b));
    ++col;
  }

  // The full matrix loses one rank to the angle gauge; the reduced one is full rank.
  CHECK(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(full.H).rank() == 8);
  CHECK(Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(reduced.H).rank() == 8);
}

TEST_CASE("tap ratios scale susceptance unless disabled") {
  const GridCase grid = load_case(data_path("case14.m"));
  DcBuildConfig no_tap;
  no_tap.apply_tap_ratio = false;
  const DcModel with_tap = build_dc_model(grid);
  const DcModel without_tap = build_dc_model(grid, no_tap);

  int flow_row = grid.bus_count();
  for (const auto& br : grid.branches()) {
    if (!br.in_service) continue;
    const int f = grid.bus_index(br.from_bus);
    const double plain = 1.0 / br.reactance_x;
    CHECK(without_tap.H(flow_row, f) == plain);
    if (br.tap_ratio != 0.0)
      CHECK(with_tap.H(flow_row, f) == 1.0 / (br.reactance_x * br.tap_ratio));
    else
      CHECK(with_tap.H(flow_row, f) == plain);
    ++flow_row;
  }
  CHECK((with_tap.H - without_tap.H).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("out-of-service branches contribute nothing") {
  GridCase grid(100.0, {{1, BusType::Ref}, {2, BusType::PQ}, {3, BusType::PQ}},
                {{1, 2, 0.5, 0.0, true}, {2, 3, 0.25, 0.0, false}, {3, 1, 0.2, 0.0, true}});
  const DcModel model = build_dc_model(grid);
  CHECK(model.flow_count() == 2);
  CHECK(model.measurements[3].label == "flow:1-2");
  CHECK(model.measurements[4].label == "flow:3-1");
  CHECK(model.measurements[4].branch_index == 2);
}

TEST_CASE("a case with no in-service branch cannot be modeled") {
  const GridCase grid(100.0, {{1, BusType::Ref}, {2, BusType::PQ}}, {{1, 2, 0.5, 0.0, false}});
  CHECK(error_code_of([&] { build_dc_model(grid); }) == ErrorCode::NoInServiceBranch);
}

TEST_CASE("case30 has 30 injections and 41 flows") {
  const DcModel model = build_dc_model(load_case(data_path("case30.m")));
  CHECK(model.measurement_count() == 71);
  CHECK(model.state_count() == 30);
  CHECK(model.injection_count() == 30);
  CHECK(model.flow_count() == 41);
}
