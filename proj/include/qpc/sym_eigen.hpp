#pragma once

#include "qpc/types.hpp"

namespace qpc {

struct SymEigen {
  Vec values;   // ascending
  Mat vectors;  // orthonormal columns matching values
};

// Closed form for n = 1, 2, 3 (trigonometric method, isolated-root deflation);
// cyclic Jacobi for nearly scalar input and for n = 4.
SymEigen sym_eigen(const Mat& a);

// Plain cyclic Jacobi; also used as an independent reference.
SymEigen sym_eigen_jacobi(const Mat& a, int max_sweeps = 64);

}  // namespace qpc
