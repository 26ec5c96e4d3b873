#include "mzv/asymptotic.hpp"

#include <cmath>

namespace mzv::asymptotic {

int order_for(long cutoff, double scale, int digits) {
  const double ratio = static_cast<double>(cutoff) / std::max(scale, 1.0);
  if (ratio < 4.0) throw ConvergenceError("asymptotic expansion needs a cutoff well beyond the parameter scale");
  const int order = static_cast<int>(std::ceil((digits + 10) / std::log10(ratio))) + 4;
  return std::clamp(order, 8, 240);
}

}  // namespace mzv::asymptotic
