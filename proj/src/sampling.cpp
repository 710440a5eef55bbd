#include "qpc/sampling.hpp"

#include "qpc/errors.hpp"

#include <cmath>

namespace qpc {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

double slot_value(const QuadricSpec& spec, const Interval& iv, double h, double margin) {
  const double span = iv.bounded() ? iv.width() : 10.0 * spec.scale() * spec.scale();
  return iv.lo + span * (margin + (1.0 - 2.0 * margin) * h);
}

}  // namespace

Halton::Halton(int dims, std::uint64_t seed) : dims_(dims) {
  if (dims < 1 || dims > 8) throw SpecError("Halton: 1..8 dimensions");
  std::mt19937_64 rng(seed);
  shift_.resize(dims);
  for (auto& s : shift_) s = u01(rng);
}

void Halton::next(double* out) {
  ++index_;
  for (int d = 0; d < dims_; ++d) {
    double v = radical_inverse(index_, kPrimes[d]) + shift_[d];
    out[d] = v - std::floor(v);
  }
}

std::vector<ChartCoords> sample_chart(const QuadricSpec& spec, int n, std::uint64_t seed, double margin) {
  const ChartLayout lay = chart_layout(spec);
  Halton h(lay.slots, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<ChartCoords> out(n);
  double x[kMaxSlots];
  for (auto& c : out) {
    h.next(x);
    c.values.resize(lay.slots);
    for (int k = 0; k < lay.slots; ++k) c.values[k] = slot_value(spec, lay.iv[k], x[k], margin);
    const std::uint64_t bits = rng();
    for (int i = 0; i < kMaxDim; ++i) c.orthant[i] = (bits >> i) & 1 ? -1 : 1;
  }
  return out;
}

std::vector<Vec> sample_surface_box(const QuadricSpec& spec, int n, std::uint64_t seed, double box) {
  const int d = spec.dim();
  Halton h(d, seed);
  const double lim = box * spec.scale();
  std::vector<Vec> out;
  out.reserve(n);
  double x[kMaxDim];
  std::uint64_t guard = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++guard > 1000ULL * static_cast<std::uint64_t>(n) + 1000) throw NumericalError("box sampling stalled");
    h.next(x);
    Vec p(d);
    for (int i = 0; i < d; ++i) p[i] = lim * (2.0 * x[i] - 1.0);
    const double q = evaluate(spec, p) + 1.0;
    if (!(q > 1e-12)) continue;
    p /= std::sqrt(q);
    if (p.cwiseAbs().maxCoeff() > lim) continue;
    out.push_back(p);
  }
  return out;
}

std::vector<Vec> census_seeds(const QuadricSpec& spec, int n, std::uint64_t seed, double margin) {
  const ChartLayout lay = chart_layout(spec);
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    ChartCoords c;
    c.values.resize(lay.slots);
    for (int k = 0; k < lay.slots; ++k) c.values[k] = slot_value(spec, lay.iv[k], u01(rng), margin);
    const std::uint64_t bits = rng();
    for (int i = 0; i < kMaxDim; ++i) c.orthant[i] = (bits >> i) & 1 ? -1 : 1;
    out.push_back(point_from_chart(spec, c).coords);
  }
  return out;
}

}  // namespace qpc
