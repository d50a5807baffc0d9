#pragma once

#include <Eigen/Core>

namespace ckn {

// Largest ambient dimension a point may have. Radial fields accept any n up
// to this bound; angular quadrature exists only for n = 2, 3.
inline constexpr int kMaxDim = 16;

// Heap-free dynamic vector: inner quadrature loops allocate nothing.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

}  // namespace ckn
