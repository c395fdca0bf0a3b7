#include <doctest.h>

#include "helpers.hpp"
#include "resdd/resdd.hpp"

using namespace resdd;

TEST_CASE("validate_geometry accepts atoms in the half-space") {
  const PairGeometry g{{0, 0, 0.02}, {0, 0, 0.03}};
  CHECK_NOTHROW(validate_geometry(g));
}

TEST_CASE("validate_geometry rejects atoms on or behind the mirror") {
  CHECK_THROWS_AS(validate_geometry({{0, 0, 0.0}, {0, 0, 1.0}}), AtomOnOrBehindMirror);
  CHECK_THROWS_AS(validate_geometry({{0, 0, 1.0}, {0, 0, -0.5}}), AtomOnOrBehindMirror);
}

TEST_CASE("validate_geometry rejects coincident atoms") {
  CHECK_THROWS_AS(validate_geometry({{0, 0, 1.0}, {0, 0, 1.0}}), CoincidentAtoms);
}

TEST_CASE("validate_geometry rejects nonfinite positions") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_geometry({{0, 0, inf}, {0, 0, 1.0}}), InvalidParameter);
}

TEST_CASE("classify_configuration identifies the axis-aligned cases") {
  const double z = 0.7, l = 0.4, d = 1.3;
  const Configuration perp = classify_configuration({{0, 0, z}, {0, 0, z + l}});
  CHECK(perp.kind == ConfigKind::Perpendicular);
  CHECK(perp.separation == doctest::Approx(l).epsilon(1e-15));
  CHECK(perp.height == z);

  const Configuration par = classify_configuration({{0, 0, z}, {0, d, z}});
  CHECK(par.kind == ConfigKind::Parallel);
  CHECK(par.separation == doctest::Approx(d).epsilon(1e-15));
  CHECK(par.height == z);

  const Configuration gen = classify_configuration({{0, 0, 1}, {0, 1, 2}});
  CHECK(gen.kind == ConfigKind::General);
}

TEST_CASE("classification survives rigid in-plane translations") {
  auto rng = helpers::make_rng(11);
  for (int it = 0; it < 50; ++it) {
    const double z = helpers::log_uniform(rng, 1e-2, 10.0);
    const double sep = helpers::log_uniform(rng, 1e-2, 10.0);
    const Vec3 shift{helpers::uniform(rng, -5, 5), helpers::uniform(rng, -5, 5), 0.0};
    const PairGeometry perp{{0, 0, z}, {0, 0, z + sep}};
    const PairGeometry perp_shifted{perp.pos_a + shift, perp.pos_b + shift};
    CHECK(classify_configuration(perp_shifted).kind == ConfigKind::Perpendicular);
    const PairGeometry par{{0, 0, z}, {0, sep, z}};
    const PairGeometry par_shifted{par.pos_a + shift, par.pos_b + shift};
    CHECK(classify_configuration(par_shifted).kind == ConfigKind::Parallel);
  }
}

TEST_CASE("parity signs") {
  CHECK(parity_sign(BellParity::Symmetric) == 1.0);
  CHECK(parity_sign(BellParity::Antisymmetric) == -1.0);
  CHECK(parity_sign(BellParity::Symmetric) * parity_sign(BellParity::Antisymmetric) == -1.0);
}

TEST_CASE("TransitionFrequency requires a positive frequency") {
  CHECK_NOTHROW(TransitionFrequency(4.17));
  CHECK_THROWS_AS(TransitionFrequency(0.0), InvalidParameter);
  CHECK_THROWS_AS(TransitionFrequency(-1.0), InvalidParameter);
}

TEST_CASE("unit conversion constant") {
  CHECK(ev_inverse_in_meters == doctest::Approx(1.97e-7).epsilon(2e-3));
}
