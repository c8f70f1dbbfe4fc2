#include "kirimech/units.hpp"

#include <cmath>

namespace kirimech::units {

double snap_to_mm_grid(double m) {
  double x = m;
  for (int i = 0; i < 8; ++i) {
    const double back = from_mm(to_mm(x));
    if (back == x) return x;
    x = back;
  }
  return x;
}

}  // namespace kirimech::units
