#include "fmi/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fmi {

namespace {

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Complex DiskPoint(Rng& rng, double radius) {
  const double rr = radius * std::sqrt(Uniform(rng, 0.0, 1.0));
  return std::polar(rr, Uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

}  // namespace

NpInstance RandomNpInstance(Rng& rng, int n, double max_radius) {
  const int atoms_count = UniformInt(rng, 1, 4);
  std::vector<Complex> atoms;
  std::vector<double> weights;
  while (static_cast<int>(atoms.size()) < atoms_count) {
    const Complex t = std::polar(1.0, Uniform(rng, 0.0, 2.0 * std::numbers::pi));
    if (std::none_of(atoms.begin(), atoms.end(),
                     [&](Complex a) { return std::abs(a - t) < 1e-3; })) {
      atoms.push_back(t);
      weights.push_back(Uniform(rng, 0.1, 2.0));
    }
  }
  NpInstance out;
  out.solution = DiskHerglotz{CircleMeasure(std::move(atoms), std::move(weights)),
                              Uniform(rng, -1.0, 1.0)};
  while (static_cast<int>(out.data.nodes.size()) < n) {
    const Complex z = DiskPoint(rng, max_radius);
    if (std::none_of(out.data.nodes.begin(), out.data.nodes.end(),
                     [&](Complex a) { return std::abs(a - z) < 1e-2; })) {
      out.data.nodes.push_back(z);
    }
  }
  for (Complex z : out.data.nodes) out.data.values.push_back(EvalDisk(out.solution, z));
  return out;
}

HamburgerInstance RandomHamburgerInstance(Rng& rng, int n, double atom_bound, double surplus) {
  const int atoms_count = UniformInt(rng, n, n + 3);
  std::vector<double> atoms;
  std::vector<double> weights;
  while (static_cast<int>(atoms.size()) < atoms_count) {
    const double t = Uniform(rng, -atom_bound, atom_bound);
    if (std::none_of(atoms.begin(), atoms.end(), [&](double a) { return std::abs(a - t) < 1e-2; })) {
      atoms.push_back(t);
      weights.push_back(Uniform(rng, 0.1, 1.0));
    }
  }
  HamburgerInstance out;
  out.measure = LineMeasure(std::move(atoms), std::move(weights));
  out.data.s = Moments(out.measure, 2 * n + 1);
  out.data.s.back() += surplus;
  out.surplus = surplus;
  return out;
}

std::vector<Complex> NpGrid(Rng& rng, const NpData& data, int count) {
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(count) + 4 * data.size());
  while (static_cast<int>(grid.size()) < count) {
    const Complex z = DiskPoint(rng, 0.95);
    if (NpNonsingular(z, data)) grid.push_back(z);
  }
  for (Complex zk : data.nodes) {
    for (int j = 0; j < 4; ++j) {
      const Complex z = zk + std::polar(1e-3, (j + 0.5) * std::numbers::pi / 2.0);
      if (NpNonsingular(z, data) && std::abs(z) < 1.0) grid.push_back(z);
    }
  }
  return grid;
}

std::vector<Complex> HamburgerGrid(Rng& rng, int count) {
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(grid.size()) < count) {
    const Complex z(Uniform(rng, -5.0, 5.0), Uniform(rng, 0.0, 5.0));
    if (z.imag() >= 1e-3) grid.push_back(z);
  }
  return grid;
}

}  // namespace fmi
