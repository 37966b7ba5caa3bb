#include "sheetgrasp/scene.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>

namespace sheetgrasp {

namespace {
constexpr double kPi = std::numbers::pi;

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}
}  // namespace

double normalize_angle(double yaw) {
  double r = std::fmod(yaw + kPi, 2.0 * kPi);
  if (r <= 0.0) r += 2.0 * kPi;
  return r - kPi;
}

double normalize_half_angle(double yaw) {
  double r = std::fmod(yaw + kPi / 2.0, kPi);
  if (r <= 0.0) r += kPi;
  return r - kPi / 2.0;
}

Pose2D::Pose2D(double x, double y, double yaw, double z)
    : x(x), y(y), yaw(normalize_angle(yaw)), z(z) {}

RigidTransform2D::RigidTransform2D(double angle, const Eigen::Vector2d& translation, double dz)
    : angle_(normalize_angle(angle)), t_(translation), dz_(dz) {}

Eigen::Matrix2d RigidTransform2D::rotation() const {
  return Eigen::Rotation2Dd(angle_).toRotationMatrix();
}

Eigen::Vector2d RigidTransform2D::apply(const Eigen::Vector2d& p) const {
  return Eigen::Rotation2Dd(angle_) * p + t_;
}

Pose2D RigidTransform2D::apply(const Pose2D& pose) const {
  const Eigen::Vector2d p = apply(pose.position());
  return {p.x(), p.y(), normalize_angle(pose.yaw + angle_), pose.z + dz_};
}

RigidTransform2D RigidTransform2D::inverse() const {
  const Eigen::Vector2d ti = -(Eigen::Rotation2Dd(-angle_) * t_);
  return {-angle_, ti, -dz_};
}

RigidTransform2D RigidTransform2D::operator*(const RigidTransform2D& other) const {
  return {normalize_angle(angle_ + other.angle_),
          Eigen::Vector2d(Eigen::Rotation2Dd(angle_) * other.translation() + t_),
          dz_ + other.dz()};
}

RigidTransform2D transform_between(const Pose2D& from, const Pose2D& to) {
  const double dyaw = normalize_angle(to.yaw - from.yaw);
  const Eigen::Vector2d t = to.position() - Eigen::Rotation2Dd(dyaw) * from.position();
  return {dyaw, t, to.z - from.z};
}

RectangleFit fit_rectangle(const std::array<Eigen::Vector2d, 4>& corners) {
  std::array<Eigen::Vector2d, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = corners[(i + 1) % 4] - corners[i];

  // Convexity with consistent winding also rejects self-intersecting orders.
  double winding = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double c = cross2(e[i], e[(i + 1) % 4]);
    if (std::abs(c) < 1e-12) throw GeometryError("fit_rectangle: degenerate corner");
    if (winding == 0.0) {
      winding = c;
    } else if (c * winding < 0.0) {
      throw GeometryError("fit_rectangle: corners are self-intersecting or non-convex");
    }
  }

  const double len02 = (e[0].norm() + e[2].norm()) / 2.0;
  const double len13 = (e[1].norm() + e[3].norm()) / 2.0;

  // Long-side direction, averaging the two opposite edges (they run in
  // opposite senses around the loop, so subtract).
  const bool pair02_long = len02 >= len13;
  const Eigen::Vector2d dir =
      pair02_long ? Eigen::Vector2d(e[0] - e[2]) : Eigen::Vector2d(e[1] - e[3]);

  RectangleFit fit;
  const Eigen::Vector2d centroid =
      (corners[0] + corners[1] + corners[2] + corners[3]) / 4.0;
  fit.length = pair02_long ? len02 : len13;
  fit.width = pair02_long ? len13 : len02;
  fit.pose = {centroid.x(), centroid.y(),
              normalize_half_angle(std::atan2(dir.y(), dir.x()))};
  fit.near_square = fit.length < 1.05 * fit.width;
  return fit;
}

Pose2D pose_from_corners(const std::array<Eigen::Vector2d, 4>& corners) {
  return fit_rectangle(corners).pose;
}

SheetInstance SheetInstance::from_pose(Material material, double length, double width,
                                       const Pose2D& pose) {
  if (!(length > 0.0) || !(width > 0.0)) throw std::invalid_argument("sheet: non-positive size");
  if (length < width) throw std::invalid_argument("sheet: length must be the long dimension");
  SheetInstance s;
  s.material = std::move(material);
  s.length = length;
  s.width = width;
  s.pose = pose;
  const Eigen::Rotation2Dd R(pose.yaw);
  const double l = length / 2.0;
  const double w = width / 2.0;
  const std::array<Eigen::Vector2d, 4> local = {
      Eigen::Vector2d{l, w}, {-l, w}, {-l, -w}, {l, -w}};
  for (int i = 0; i < 4; ++i) s.corners[i] = R * local[i] + pose.position();
  return s;
}

SheetInstance SheetInstance::from_corners(Material material,
                                          const std::array<Eigen::Vector2d, 4>& corners) {
  const RectangleFit fit = fit_rectangle(corners);
  SheetInstance s = from_pose(std::move(material), fit.length, fit.width, fit.pose);
  s.corners = corners;
  return s;
}

Eigen::Vector2d SheetInstance::edge_midpoint_toward(const Eigen::Vector2d& dir) const {
  const Eigen::Vector2d axis = Eigen::Rotation2Dd(pose.yaw) * Eigen::Vector2d::UnitX();
  const double sign = axis.dot(dir) >= 0.0 ? 1.0 : -1.0;
  return pose.position() + sign * (length / 2.0) * axis;
}

void Constraint::validate() const {
  if ((b - a).norm() < 1e-9) throw std::invalid_argument("constraint: zero-length segment");
  if (kind == ConstraintKind::wall && !(height > 0.0)) {
    throw std::invalid_argument("constraint: wall height must be positive");
  }
}

Eigen::Vector2d Constraint::normal_toward(const Eigen::Vector2d& p) const {
  validate();
  const Eigen::Vector2d d = (b - a).normalized();
  Eigen::Vector2d n{-d.y(), d.x()};
  if (n.dot(p - a) < 0.0) n = -n;
  return n;
}

double Constraint::distance_to_line(const Eigen::Vector2d& p) const {
  validate();
  const Eigen::Vector2d d = (b - a).normalized();
  const Eigen::Vector2d r = p - a;
  return std::abs(cross2(d, r));
}

Eigen::Vector2d Constraint::project_to_line(const Eigen::Vector2d& p) const {
  validate();
  const Eigen::Vector2d d = (b - a).normalized();
  return a + d.dot(p - a) * d;
}

const Constraint* Scene::find(ConstraintKind kind) const {
  for (const auto& c : constraints) {
    if (c.kind == kind) return &c;
  }
  return nullptr;
}

Material Scene::effective_material() const {
  Material m = sheet.material;
  if (table_mu1) m.mu1 = *table_mu1;
  return m;
}

}  // namespace sheetgrasp
