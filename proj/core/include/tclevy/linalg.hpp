#pragma once

#include <Eigen/Core>

namespace tclevy {

// States and noise vectors live on the stack: dynamic size with a fixed
// upper bound, so path stepping never touches the heap.
inline constexpr int kMaxDim = 8;

using State = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                             kMaxDim, kMaxDim>;

}  // namespace tclevy
