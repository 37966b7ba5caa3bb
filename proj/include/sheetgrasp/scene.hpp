#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sheetgrasp/material.hpp"

namespace sheetgrasp {

// Planar pose on the table plane plus an optional height above it.
// yaw is normalized to (-pi, pi].
struct Pose2D {
  double x = 0.0;    // m
  double y = 0.0;    // m
  double yaw = 0.0;  // rad
  double z = 0.0;    // m, height above the table plane

  Pose2D() = default;
  Pose2D(double x, double y, double yaw, double z = 0.0);

  Eigen::Vector2d position() const { return {x, y}; }
};

// Fold into (-pi, pi].
double normalize_angle(double yaw);
// Fold into (-pi/2, pi/2] (rectangle orientations are pi-periodic).
double normalize_half_angle(double yaw);

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Planar rigid transform (rotation + translation) with a height offset.
// apply() maps poses expressed in the world frame.
class RigidTransform2D {
 public:
  RigidTransform2D() = default;
  RigidTransform2D(double angle, const Eigen::Vector2d& translation, double dz = 0.0);

  static RigidTransform2D identity() { return {}; }

  double angle() const { return angle_; }
  const Eigen::Vector2d& translation() const { return t_; }
  double dz() const { return dz_; }
  Eigen::Matrix2d rotation() const;

  Eigen::Vector2d apply(const Eigen::Vector2d& p) const;
  Pose2D apply(const Pose2D& pose) const;
  RigidTransform2D inverse() const;

  // this * other: apply other first, then this.
  RigidTransform2D operator*(const RigidTransform2D& other) const;

 private:
  double angle_ = 0.0;
  Eigen::Vector2d t_ = Eigen::Vector2d::Zero();
  double dz_ = 0.0;
};

// T with T.apply(from) == to.
RigidTransform2D transform_between(const Pose2D& from, const Pose2D& to);

// Rectangle recovered from four observed corners.
struct RectangleFit {
  Pose2D pose;           // centroid + long-axis yaw in (-pi/2, pi/2]
  double length = 0.0;   // m, long side
  double width = 0.0;    // m, short side
  bool near_square = false;  // aspect < 1.05: yaw is unreliable
};

// Corners must trace a convex quadrilateral in order (either winding).
// Throws GeometryError for degenerate or self-intersecting input.
RectangleFit fit_rectangle(const std::array<Eigen::Vector2d, 4>& corners);
Pose2D pose_from_corners(const std::array<Eigen::Vector2d, 4>& corners);

// A sheet lying on the table.  length is the long dimension; corners and
// pose are kept consistent with each other.
struct SheetInstance {
  Material material;
  double length = 0.0;  // m
  double width = 0.0;   // m
  Pose2D pose;
  std::array<Eigen::Vector2d, 4> corners{};

  static SheetInstance from_pose(Material material, double length, double width,
                                 const Pose2D& pose);
  static SheetInstance from_corners(Material material,
                                    const std::array<Eigen::Vector2d, 4>& corners);

  // Midpoint of the short side whose outward direction is closest to dir.
  Eigen::Vector2d edge_midpoint_toward(const Eigen::Vector2d& dir) const;
};

enum class ConstraintKind { wall, table_edge };

// Environmental feature the strategies exploit: a wall standing on the table
// or the boundary edge of the tabletop, both given as a segment on the plane.
struct Constraint {
  ConstraintKind kind = ConstraintKind::wall;
  Eigen::Vector2d a = Eigen::Vector2d::Zero();  // m
  Eigen::Vector2d b = Eigen::Vector2d::Zero();  // m
  double height = 0.0;  // m, wall height above the table (walls only)

  void validate() const;
  // Unit normal of the segment line pointing toward the query point.
  Eigen::Vector2d normal_toward(const Eigen::Vector2d& p) const;
  // Signed distance is dropped; distance from p to the segment line.
  double distance_to_line(const Eigen::Vector2d& p) const;
  // Foot of the perpendicular from p on the segment line.
  Eigen::Vector2d project_to_line(const Eigen::Vector2d& p) const;
};

struct Scene {
  SheetInstance sheet;
  std::vector<Constraint> constraints;
  std::optional<double> table_mu1;  // overrides the sheet material's mu1

  const Constraint* find(ConstraintKind kind) const;
  // Sheet material with the table override applied.
  Material effective_material() const;
};

}  // namespace sheetgrasp
