#include <doctest.h>

#include <cmath>

#include "sheetgrasp/mechanics.hpp"
#include "sheetgrasp/rng.hpp"
#include "sheetgrasp/units.hpp"
#include "helpers.hpp"

using namespace sheetgrasp;

namespace {
const Material kPaper = Material::from_gsm("p80", 80.0, 0.5, 0.42);
}

TEST_CASE("pinch stage partition is exhaustive and ordered") {
  // rest up to mu1*F_N, deforming up to mu0*F_N, slipping beyond.
  const double F_N = 10.0;
  CHECK(pinch_stage({F_N, 0.0}, kPaper) == PinchStage::rest);
  CHECK(pinch_stage({F_N, 4.2}, kPaper) == PinchStage::rest);          // == mu1*F_N
  CHECK(pinch_stage({F_N, 4.2000001}, kPaper) == PinchStage::deforming);
  CHECK(pinch_stage({F_N, 5.0}, kPaper) == PinchStage::deforming);     // == mu0*F_N
  CHECK(pinch_stage({F_N, 5.0000001}, kPaper) == PinchStage::slipping);

  // Exactly one stage for any state, and the stage is monotone in F_tau.
  SplitMix64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double fn = 30.0 * rng.next_double();
    const double ftau = 20.0 * rng.next_double();
    const PinchStage s = pinch_stage({fn, ftau}, kPaper);
    if (ftau <= kPaper.mu1 * fn) {
      CHECK(s == PinchStage::rest);
    } else if (ftau <= kPaper.mu0 * fn) {
      CHECK(s == PinchStage::deforming);
    } else {
      CHECK(s == PinchStage::slipping);
    }
    CHECK(slide_condition({fn, ftau}, kPaper) == (s == PinchStage::deforming));
  }
}

TEST_CASE("grasping needs the finger to grip harder than the table") {
  CHECK(friction_condition(kPaper));
  Material slick = kPaper;
  slick.mu1 = slick.mu0;  // equal friction: cannot drag the sheet
  CHECK_FALSE(friction_condition(slick));
  slick.mu1 = slick.mu0 + 0.1;
  CHECK_FALSE(friction_condition(slick));
}

TEST_CASE("critical load of the pinched span") {
  // pi^2 * EI / (mu*L)^2 with EI = 1.75e-5, L = 90 mm.
  const double edge = critical_load({0.09, kLengthFactorEdge, 1.75e-5});
  const double held = critical_load({0.09, kLengthFactorNonEdge, 1.75e-5});
  CHECK(edge == doctest::Approx(0.0435168).epsilon(1e-5));
  CHECK(held == doctest::Approx(0.0852929).epsilon(1e-5));
  // The edge effect: a span near the free edge buckles at (0.5/0.7)^2 of the
  // held-span load.
  CHECK(held / edge == doctest::Approx(1.96).epsilon(1e-12));

  CHECK_THROWS_AS(BucklingContext(0.0, kLengthFactorEdge, 1.75e-5), std::invalid_argument);
  CHECK_THROWS_AS(BucklingContext(0.09, 0.6, 1.75e-5), std::invalid_argument);
  CHECK_THROWS_AS(BucklingContext(0.09, kLengthFactorEdge, 0.0), std::invalid_argument);
}

TEST_CASE("critical load falls with span length and rises with stiffness") {
  SplitMix64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const double L = 0.03 + 0.2 * rng.next_double();
    const double EI = 1e-6 + 1e-3 * rng.next_double();
    CHECK(critical_load(BucklingContext::edge(L, EI)) >
          critical_load(BucklingContext::edge(L * 1.1, EI)));
    CHECK(critical_load(BucklingContext::edge(L, EI)) <
          critical_load(BucklingContext::edge(L, EI * 1.1)));
  }
}

TEST_CASE("buckling feasibility is strict at the boundary") {
  const BucklingContext ctx(0.09, kLengthFactorEdge, 1.75e-5);
  const double crit = critical_load(ctx);

  // Dyadic coefficients make the tie exact: band = 0.75 - 0.25 = 0.5 and
  // F_N = 2*crit give F_N*band == crit with no rounding anywhere.
  const Material tie = Material::from_gsm("tie", 80.0, 0.75, 0.25);
  const auto [ok_at, margin_at] = buckling_feasible(2.0 * crit, tie, ctx);
  CHECK_FALSE(ok_at);  // F_N*(mu0-mu1) == crit is not enough
  CHECK(margin_at == 0.0);
  const auto [ok_up, margin_up] =
      buckling_feasible(std::nextafter(2.0 * crit, INFINITY), tie, ctx);
  CHECK(ok_up);
  CHECK(margin_up > 0.0);

  const double band = kPaper.mu0 - kPaper.mu1;
  const auto [ok_above, margin_above] = buckling_feasible(crit / band * 1.01, kPaper, ctx);
  CHECK(ok_above);
  CHECK(margin_above > 0.0);
  CHECK(margin_above == doctest::Approx(crit * 1.01 - crit).epsilon(1e-6));

  const auto [ok_below, margin_below] = buckling_feasible(crit / band * 0.99, kPaper, ctx);
  CHECK_FALSE(ok_below);
  CHECK(margin_below < 0.0);
}

TEST_CASE("cantilever deflection of a protruding strip") {
  // lambda*g*L^4 / (8*EI) at L = 60 mm, EI = 1.75e-5, lambda = 8.4e-3.
  CHECK(cantilever_deflection(0.06, {1.75e-5, 8.4e-3}) ==
        doctest::Approx(7.628256e-3).epsilon(1e-6));
  // Quartic growth in the overhang length.
  CHECK(cantilever_deflection(0.12, {1.75e-5, 8.4e-3}) ==
        doctest::Approx(16.0 * 7.628256e-3).epsilon(1e-9));
  CHECK_THROWS_AS(cantilever_deflection(-0.01, {1.75e-5, 8.4e-3}), std::domain_error);
  CHECK_THROWS_AS(cantilever_deflection(0.06, {0.0, 8.4e-3}), std::invalid_argument);
}

TEST_CASE("wrist-to-finger force map") {
  // Zero inclination: the map is the identity, exactly.
  const auto [n0, t0] = wrench_to_contact({5.0, 2.0, 0.3}, 0.0);
  CHECK(n0 == 5.0);
  CHECK(t0 == 2.0);

  // Vertical fingers: the components swap roles.
  const auto [n90, t90] = wrench_to_contact({5.0, 2.0, 0.0}, deg_to_rad(90.0));
  CHECK(n90 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t90 == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("force map is a rotation: norms kept, exactly invertible") {
  SplitMix64 rng(11);
  for (int i = 0; i < 100000; ++i) {
    const double fz = rng.symmetric(50.0);
    const double fy = rng.symmetric(50.0);
    const double tilt = rng.symmetric(3.14);
    const auto [fn, ft] = wrench_to_contact({fz, fy, 0.0}, tilt);
    CHECK(std::abs(std::hypot(fn, ft) - std::hypot(fz, fy)) < 1e-12);
    const SensorWrench back = contact_to_wrench(fn, ft, tilt);
    CHECK(std::abs(back.F_Z - fz) < 1e-12);
    CHECK(std::abs(back.F_Y - fy) < 1e-12);
  }
}
