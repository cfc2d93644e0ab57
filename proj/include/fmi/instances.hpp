#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fmi/hamburger_fmi.hpp"
#include "fmi/measures.hpp"
#include "fmi/np_fmi.hpp"

namespace fmi {

using Rng = std::mt19937_64;

/// A disk problem together with the measure that solves it.
struct NpInstance {
  NpData data;
  DiskHerglotz solution;
};

/// A moment problem together with a representing measure.
struct HamburgerInstance {
  MomentData data;
  LineMeasure measure;
  double surplus = 0.0;  // added to s_2n on top of the measure's moment
};

/// Random circle measure with 1..4 atoms, weights in [0.1, 2], c in [-1, 1];
/// n nodes with |z_k| <= max_radius and values w_{sigma,c}(z_k).
NpInstance RandomNpInstance(Rng& rng, int n, double max_radius = 0.8);

/// Random line measure with n..n+3 distinct atoms in [-atom_bound, atom_bound]
/// and weights in [0.1, 1]; s_2n is raised by `surplus`.
HamburgerInstance RandomHamburgerInstance(Rng& rng, int n, double atom_bound = 5.0,
                                          double surplus = 0.0);

/// Uniform points of the open disk of radius 0.95 that are nonsingular for
/// the nodes, plus four points at distance 1e-3 around every node.
std::vector<Complex> NpGrid(Rng& rng, const NpData& data, int count);

/// Uniform points of the box Re in [-5, 5], Im in (0, 5], kept at least 1e-3
/// away from the real axis.
std::vector<Complex> HamburgerGrid(Rng& rng, int count);

}  // namespace fmi
