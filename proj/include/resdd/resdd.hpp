#pragma once

// Resonance dipole-dipole interaction between two Bell-correlated two-level
// atoms near a perfectly reflecting mirror at z = 0. Natural units
// (hbar = c = 1): energies in eV, lengths in eV^-1.
//
// Three mutually checking evaluation routes:
//   - explicit closed forms for the perpendicular and parallel configurations
//     (free_space.hpp, mirror.hpp),
//   - the image-dipole construction, valid for arbitrary geometry
//     (mirror.hpp),
//   - a regularized spectral integral over field susceptibilities
//     (spectral.hpp).
//
// All functions are pure and thread-safe.

#include "resdd/asymptotics.hpp"
#include "resdd/core.hpp"
#include "resdd/errors.hpp"
#include "resdd/free_space.hpp"
#include "resdd/linalg.hpp"
#include "resdd/mirror.hpp"
#include "resdd/quadrature.hpp"
#include "resdd/spectral.hpp"
#include "resdd/sweep.hpp"
#include "resdd/version.hpp"
