#pragma once

#include <cstddef>

namespace mlcbp {

// Kernels taking an Execution run their outer loop with OpenMP when
// kParallel is requested and OpenMP is available. The serial path is the
// reference; both produce identical results.
enum class Execution { kSerial, kParallel };

int max_threads();

}  // namespace mlcbp
