#pragma once

#include "qpc/confocal.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qpc {

// Portable uniform double in [0, 1) from the top 53 bits.
inline double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Halton sequence with a Cranley-Patterson rotation drawn from `seed`.
class Halton {
 public:
  Halton(int dims, std::uint64_t seed);
  void next(double* out);
  int dims() const { return dims_; }

 private:
  int dims_;
  std::uint64_t index_ = 0;
  std::vector<double> shift_;
};

// Quasi-random interior chart coordinates; unbounded slots are sampled over a
// span of 10 scale^2 above their lower end. Orthants are drawn at random.
std::vector<ChartCoords> sample_chart(const QuadricSpec& spec, int n, std::uint64_t seed, double margin = 1e-3);

// Quasi-random surface points inside the box |coord| <= box * scale (radial projection).
std::vector<Vec> sample_surface_box(const QuadricSpec& spec, int n, std::uint64_t seed, double box = 5.0);

// Seeds for a leaf census: chart interior with a relative margin, random orthant.
std::vector<Vec> census_seeds(const QuadricSpec& spec, int n, std::uint64_t seed, double margin = 0.1);

}  // namespace qpc
