#include "doctest.h"

#include <cmath>

#include "aerocalc/error.hpp"
#include "aerocalc/holding.hpp"
#include "oracles.hpp"

using namespace aerocalc;
using namespace aerocalc::holding;

namespace {

// Sector diagram in exact integer degrees. `rel` is the arrival heading
// measured clockwise from the inbound course. For a right-hand hold the direct
// sector spans 290..110 through 0, the teardrop sector 111..180 and the
// parallel sector 181..289. A left-hand hold is the mirror image.
Entry diagram(int inbound, int heading, Turn turn) {
  int rel = ((heading - inbound) % 360 + 360) % 360;
  if (turn == Turn::left) rel = (360 - rel) % 360;
  if (rel <= 110 || rel >= 290) return Entry::direct;
  if (rel <= 180) return Entry::teardrop;
  return Entry::parallel;
}

Entry swapped(Entry e) {
  if (e == Entry::teardrop) return Entry::parallel;
  if (e == Entry::parallel) return Entry::teardrop;
  return e;
}

Turn other(Turn t) { return t == Turn::right ? Turn::left : Turn::right; }

HoldSpec fig4_spec(double wind_from, double wind_speed) {
  HoldSpec s;
  s.inbound_course_deg = 303.0;
  s.turn = Turn::right;
  s.leg_time_s = 60.0;
  s.tas_kt = 100.0;
  s.wind = windnav::make_wind(wind_from, wind_speed);
  return s;
}

}  // namespace

TEST_CASE("inbound 303, right turns, arriving on 110 is a teardrop") {
  CHECK(classify_entry(303.0, 110.0, Turn::right) == Entry::teardrop);
}

TEST_CASE("arriving on the inbound course is direct") {
  for (int c = 0; c < 360; c += 7) {
    CHECK(classify_entry(c, c, Turn::right) == Entry::direct);
    CHECK(classify_entry(c, c, Turn::left) == Entry::direct);
  }
}

TEST_CASE("every integer heading and course matches the sector diagram") {
  for (Turn t : {Turn::right, Turn::left})
    for (int c = 0; c < 360; ++c)
      for (int h = 0; h < 360; ++h) {
        INFO("course ", c, " heading ", h, " turn ", to_string(t));
        REQUIRE(classify_entry(c, h, t) == diagram(c, h, t));
      }
}

TEST_CASE("sector lines take the simpler entry") {
  // 70 degrees left of the inbound course and 110 right of it are both direct.
  CHECK(classify_entry(0.0, 290.0, Turn::right) == Entry::direct);
  CHECK(classify_entry(0.0, 110.0, Turn::right) == Entry::direct);
  CHECK(classify_entry(0.0, 180.0, Turn::right) == Entry::teardrop);
  CHECK(classify_entry(0.0, 70.0, Turn::left) == Entry::direct);
  CHECK(classify_entry(0.0, 250.0, Turn::left) == Entry::direct);
  CHECK(classify_entry(0.0, 180.0, Turn::left) == Entry::teardrop);
  CHECK(classify_entry(0.0, 110.5, Turn::right) == Entry::teardrop);
  CHECK(classify_entry(0.0, 289.5, Turn::right) == Entry::parallel);
}

TEST_CASE("adding 360 to any angle leaves the entry unchanged") {
  oracle::Gen g(360);
  for (int i = 0; i < 5000; ++i) {
    const double c = g.uniform(0.0, 360.0), h = g.uniform(0.0, 360.0);
    const Turn t = g.integer(0, 1) ? Turn::right : Turn::left;
    const Entry e = classify_entry(c, h, t);
    CHECK(classify_entry(c + 360.0, h, t) == e);
    CHECK(classify_entry(c, h + 360.0, t) == e);
    CHECK(classify_entry(c - 360.0, h + 720.0, t) == e);
  }
}

TEST_CASE("mirror symmetry") {
  for (int c = 0; c < 360; c += 3)
    for (int h = 0; h < 360; ++h)
      for (Turn t : {Turn::right, Turn::left}) {
        const Entry e = classify_entry(c, h, t);
        // Reflecting the whole picture, turn direction included, maps each
        // sector onto itself.
        CHECK(classify_entry(-c, -h, other(t)) == e);
        // Flipping only the turn direction swaps the teardrop and parallel
        // sectors; direct is preserved away from the 70..110 bands, where the
        // two hands' sectors do not coincide.
        const int d = std::abs(static_cast<int>(oracle::angle_diff(h, c)));
        if (d <= 70 || (d > 110 && d < 180)) {
          CHECK(classify_entry(c, h, other(t)) == swapped(e));
        }
      }
}

TEST_CASE("zero wind plan is the still-air geometry") {
  for (int c = 0; c < 360; c += 15) {
    HoldSpec s;
    s.inbound_course_deg = c;
    s.tas_kt = 95.0;
    s.leg_time_s = 60.0;
    s.wind = windnav::make_wind(0.0, 0.0);
    const auto p = plan_hold(s, c + 40.0);
    CHECK(p.outbound_heading_deg == oracle::wrap360(c + 180.0));
    CHECK(p.inbound_heading_deg == static_cast<double>(c));
    CHECK(p.outbound_time_s == 60.0);
    CHECK(p.wind_correction_angle_inbound_deg == 0.0);
    bool still_air_step = false;
    for (const auto& step : p.procedural_steps)
      if (step.find("no wind correction") != std::string::npos) still_air_step = true;
    CHECK(still_air_step);
  }
}

TEST_CASE("wind 020 at 10 on the inbound 303 hold") {
  const auto p = plan_hold(fig4_spec(20.0, 10.0), 110.0);
  CHECK(p.entry == Entry::teardrop);
  const auto in = oracle::wind_triangle(303.0, 100.0, 20.0, 10.0);
  const auto out = oracle::wind_triangle(123.0, 100.0, 20.0, 10.0);
  const double wca = oracle::angle_diff(in.heading, 303.0);
  CHECK(p.wind_correction_angle_inbound_deg == doctest::Approx(wca).epsilon(1e-9));
  CHECK(p.wind_correction_angle_inbound_deg > 0.0);  // wind from the right of 303
  CHECK(p.outbound_heading_deg == doctest::Approx(oracle::wrap360(123.0 - 3.0 * wca)).epsilon(1e-9));
  CHECK(p.outbound_time_s == doctest::Approx(60.0 * in.ground_speed / out.ground_speed).epsilon(1e-9));
  CHECK(p.procedural_steps.size() >= 4);
  CHECK(p.procedural_steps.front().rfind("Teardrop", 0) == 0);
}

TEST_CASE("tailwind on the inbound leg lengthens the outbound leg") {
  const auto p = plan_hold(fig4_spec(123.0, 15.0), 303.0);
  CHECK(p.entry == Entry::direct);
  CHECK(p.outbound_time_s > 60.0);
  const auto q = plan_hold(fig4_spec(303.0, 15.0), 303.0);
  CHECK(q.outbound_time_s < 60.0);
}

TEST_CASE("drift multiplier is configurable") {
  auto s = fig4_spec(20.0, 10.0);
  s.outbound_drift_multiplier = 1.0;
  const auto p = plan_hold(s, 110.0);
  CHECK(p.outbound_heading_deg ==
        doctest::Approx(oracle::wrap360(123.0 - p.wind_correction_angle_inbound_deg)).epsilon(1e-9));
}

TEST_CASE("invalid hold specs are rejected") {
  auto s = fig4_spec(20.0, 10.0);
  s.leg_time_s = 0.0;
  CHECK_THROWS_AS(plan_hold(s, 0.0), ValidationError);
  s = fig4_spec(20.0, 10.0);
  s.tas_kt = 0.0;
  CHECK_THROWS_AS(plan_hold(s, 0.0), ValidationError);
  s = fig4_spec(20.0, 150.0);
  CHECK_THROWS_AS(plan_hold(s, 0.0), ValidationError);
  CHECK_THROWS_AS(parse_turn("up"), ValidationError);
}
