#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "resdd/resdd.hpp"

using namespace resdd;
using std::numbers::pi;

namespace {
constexpr double mu = 1.024e-3;
const DipoleVector mu_x{mu, 0, 0};
const DipoleVector mu_y{0, mu, 0};
const DipoleVector mu_z{0, 0, mu};
} // namespace

TEST_CASE("resonance tensor static limit") {
  const double l = 0.37;
  const InteractionTensor t = resonance_tensor(0.0, {0, 0, l});
  CHECK(t.v(0, 0) == doctest::Approx(1.0 / (4 * pi * l * l * l)).epsilon(1e-15));
  CHECK(t.v(1, 1) == t.v(0, 0));
  CHECK(t.v(2, 2) == doctest::Approx(-1.0 / (2 * pi * l * l * l)).epsilon(1e-15));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        CHECK(t.v(i, j) == 0.0);
}

TEST_CASE("resonance tensor at k0 L = 1 matches the collected bracket") {
  const double k0 = 4.17, l = 1.0 / 4.17;
  const InteractionTensor t = resonance_tensor(k0, {0, 0, l});
  // transverse bracket cos(1) + sin(1) - cos(1) = sin(1)
  CHECK(t.v(0, 0) ==
        doctest::Approx(std::sin(1.0) / (4 * pi * l * l * l)).epsilon(1e-13));
}

TEST_CASE("resonance tensor rejects zero separation") {
  CHECK_THROWS_AS(resonance_tensor(1.0, {0, 0, 0}), ZeroSeparation);
}

TEST_CASE("free-space energy static examples") {
  const double l = 0.2;
  const double exp_x = mu * mu / (4 * pi * l * l * l);
  CHECK(free_space_energy(mu_x, mu_x, 0.0, {0, 0, l}, BellParity::Symmetric) ==
        doctest::Approx(exp_x).epsilon(1e-14));
  CHECK(free_space_energy(mu_x, mu_x, 0.0, {0, 0, l}, BellParity::Antisymmetric) ==
        doctest::Approx(-exp_x).epsilon(1e-14));
  // crossed components never couple along an axis
  CHECK(free_space_energy(mu_x, mu_z, 3.3, {0, 0, l}, BellParity::Symmetric) == 0.0);
  CHECK(free_space_energy(mu_z, mu_z, 0.0, {0, 0, l}, BellParity::Symmetric) ==
        doctest::Approx(-mu * mu / (2 * pi * l * l * l)).epsilon(1e-14));
}

TEST_CASE("perpendicular closed form at pinned phases") {
  const double l = 0.7;
  SUBCASE("x dipoles, k0 L = 2 pi") {
    const double k0 = 2 * pi / l;
    const double expected = mu * mu * (1.0 - 4 * pi * pi) / (4 * pi * l * l * l);
    CHECK(perpendicular_free_space(mu_x, mu_x, k0, l, BellParity::Symmetric) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("z dipoles, k0 L = pi/2") {
    const double k0 = 0.5 * pi / l;
    const double expected = -mu * mu / (4 * l * l * l);
    CHECK(perpendicular_free_space(mu_z, mu_z, k0, l, BellParity::Symmetric) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("y dipoles equal x dipoles") {
    auto rng = helpers::make_rng(3);
    for (int it = 0; it < 20; ++it) {
      const double k0 = helpers::log_uniform(rng, 0.1, 10.0);
      const double sep = helpers::log_uniform(rng, 1e-3, 10.0);
      CHECK(perpendicular_free_space(mu_x, mu_x, k0, sep, BellParity::Symmetric) ==
            perpendicular_free_space(mu_y, mu_y, k0, sep, BellParity::Symmetric));
    }
  }
}

TEST_CASE("parallel closed form static examples") {
  const double d = 0.15;
  CHECK(parallel_free_space(mu_y, mu_y, 0.0, d, BellParity::Symmetric) ==
        doctest::Approx(-mu * mu / (2 * pi * d * d * d)).epsilon(1e-14));
  CHECK(parallel_free_space(mu_x, mu_x, 0.0, d, BellParity::Symmetric) ==
        doctest::Approx(mu * mu / (4 * pi * d * d * d)).epsilon(1e-14));
  CHECK(parallel_free_space(mu_y, mu_z, 2.7, d, BellParity::Symmetric) == 0.0);
}

TEST_CASE("reciprocity: swapping dipoles and flipping the separation") {
  auto rng = helpers::make_rng(17);
  for (int it = 0; it < 200; ++it) {
    const double k0 = helpers::log_uniform(rng, 0.1, 10.0);
    const Vec3 s{helpers::uniform(rng, -2, 2), helpers::uniform(rng, -2, 2),
                 helpers::uniform(rng, -2, 2)};
    if (s.norm() == 0.0)
      continue;
    const DipoleVector a = helpers::unit_dipole(rng), b = helpers::unit_dipole(rng);
    const double e1 = free_space_energy(a, b, k0, s, BellParity::Symmetric);
    const double e2 = free_space_energy(b, a, k0, -s, BellParity::Symmetric);
    CHECK(helpers::rel_diff(e1, e2, helpers::bracket_scale(a, b, k0, s.norm())) < 1e-14);
  }
}

TEST_CASE("bilinearity in both dipoles") {
  auto rng = helpers::make_rng(19);
  for (int it = 0; it < 100; ++it) {
    const double k0 = helpers::log_uniform(rng, 0.1, 10.0);
    const Vec3 s{0.3, -0.2, helpers::uniform(rng, 0.1, 2.0)};
    const DipoleVector a = helpers::unit_dipole(rng), b = helpers::unit_dipole(rng);
    const double fa = helpers::uniform(rng, -3, 3), fb = helpers::uniform(rng, -3, 3);
    const DipoleVector sa{fa * a.mx, fa * a.my, fa * a.mz};
    const DipoleVector sb{fb * b.mx, fb * b.my, fb * b.mz};
    const double scaled = free_space_energy(sa, sb, k0, s, BellParity::Symmetric);
    const double ref = fa * fb * free_space_energy(a, b, k0, s, BellParity::Symmetric);
    CHECK(helpers::rel_diff(scaled, ref,
                            std::abs(fa * fb) * helpers::bracket_scale(a, b, k0, s.norm())) <
          1e-14);
  }
}

TEST_CASE("rotation covariance of the free-space energy") {
  auto rng = helpers::make_rng(23);
  for (int it = 0; it < 200; ++it) {
    const double k0 = helpers::log_uniform(rng, 0.1, 10.0);
    const Vec3 s{helpers::uniform(rng, -1, 1), helpers::uniform(rng, -1, 1),
                 helpers::uniform(rng, 0.2, 2.0)};
    const DipoleVector a = helpers::unit_dipole(rng), b = helpers::unit_dipole(rng);
    const Mat3 r = helpers::random_rotation(rng);
    const double e1 = free_space_energy(a, b, k0, s, BellParity::Symmetric);
    const double e2 = free_space_energy(helpers::apply(r, a), helpers::apply(r, b), k0,
                                        helpers::apply(r, s), BellParity::Symmetric);
    CHECK(helpers::rel_diff(e1, e2, helpers::bracket_scale(a, b, k0, s.norm())) < 1e-12);
  }
}

TEST_CASE("axis specializations agree with the tensor contraction") {
  auto rng = helpers::make_rng(29);
  for (int it = 0; it < 500; ++it) {
    const double k0 = helpers::log_uniform(rng, 0.1, 10.0);
    const double sep = helpers::log_uniform(rng, 1e-3, 10.0);
    const DipoleVector a = helpers::unit_dipole(rng), b = helpers::unit_dipole(rng);
    const BellParity par = helpers::random_parity(rng);
    const double scale = helpers::bracket_scale(a, b, k0, sep);
    CHECK(helpers::rel_diff(perpendicular_free_space(a, b, k0, sep, par),
                            free_space_energy(a, b, k0, {0, 0, sep}, par), scale) < 1e-14);
    CHECK(helpers::rel_diff(parallel_free_space(a, b, k0, sep, par),
                            free_space_energy(a, b, k0, {0, sep, 0}, par), scale) < 1e-14);
  }
}

TEST_CASE("parity flip negates the energy exactly") {
  auto rng = helpers::make_rng(31);
  for (int it = 0; it < 100; ++it) {
    const double k0 = helpers::log_uniform(rng, 0.1, 10.0);
    const Vec3 s{0.1, 0.4, helpers::uniform(rng, 0.1, 3.0)};
    const DipoleVector a = helpers::unit_dipole(rng), b = helpers::unit_dipole(rng);
    CHECK(free_space_energy(a, b, k0, s, BellParity::Symmetric) ==
          -free_space_energy(a, b, k0, s, BellParity::Antisymmetric));
  }
}
