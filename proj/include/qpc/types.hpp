#pragma once

#include <Eigen/Dense>

#include <array>

namespace qpc {

inline constexpr int kMaxDim = 4;
inline constexpr int kMaxSlots = 3;

// Ambient vectors and small matrices with inline storage (no heap traffic in
// the inner loops); the runtime size is the ambient dimension 3 or 4.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

// Confocal chart values, one per slot (u, v, w) or (u, v).
using SlotVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxSlots, 1>;

// Sign (+1/-1) of every ambient coordinate.
using Orthant = std::array<int, kMaxDim>;

}  // namespace qpc
