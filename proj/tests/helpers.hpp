#pragma once

#include "sheetgrasp/io.hpp"

namespace sheetgrasp::testing {

// 80 g printing paper with the library's friction/density calibration.
inline Material library_paper(double gsm = 80.0) {
  return Material::from_gsm("paper", gsm, 0.6, 0.42, 0.105, 2e9, 500.0);
}

// The standard desk scene used throughout: an A4-ish sheet in front of a
// wall, next to the table edge at x = 0.
inline Scene example_scene(double gsm = 80.0) {
  Scene scene;
  scene.sheet = SheetInstance::from_pose(library_paper(gsm), 0.297, 0.105,
                                         Pose2D{0.300, 0.300, 0.0});
  Constraint wall;
  wall.kind = ConstraintKind::wall;
  wall.a = {0.500, 0.150};
  wall.b = {0.500, 0.450};
  wall.height = 0.080;
  Constraint edge;
  edge.kind = ConstraintKind::table_edge;
  edge.a = {0.0, 0.0};
  edge.b = {0.0, 0.600};
  scene.constraints = {wall, edge};
  return scene;
}

inline GraspRequest request(Strategy s) {
  GraspRequest req;
  req.strategy = s;
  return req;
}

}  // namespace sheetgrasp::testing
