#include "kirimech/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kirimech/boundary.hpp"
#include "kirimech/errors.hpp"

namespace kirimech {

namespace {

constexpr double kMaxCatenaryArg = 50.0;
constexpr int kMaxBisections = 400;

// sinh(u)/u - 1 without cancellation near u = 0.
double sinhc_minus_one(double u) {
  if (u < 0.1) {
    const double u2 = u * u;
    // Taylor series up to u^10; the next term is below 1e-19 relative.
    return u2 * (1.0 / 6.0 +
                 u2 * (1.0 / 120.0 +
                       u2 * (1.0 / 5040.0 + u2 * (1.0 / 362880.0 + u2 * (1.0 / 39916800.0)))));
  }
  return std::sinh(u) / u - 1.0;
}

}  // namespace

double ribbon_station(int index, int n_discrete) {
  return static_cast<double>(index) / static_cast<double>(n_discrete / 2 + 1);
}

CatenaryShape solve_catenary(double rest_length, double endpoint_gap) {
  if (!(endpoint_gap > 0.0) || !(rest_length > 0.0)) {
    throw InvalidArgument("catenary: rest length and endpoint gap must be positive");
  }
  if (endpoint_gap > rest_length) {
    std::ostringstream msg;
    msg << "catenary: endpoint gap " << endpoint_gap << " m exceeds rest length " << rest_length
        << " m";
    throw InvalidArgument(msg.str());
  }
  if (endpoint_gap == rest_length) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }

  // With u = d_y / (2 alpha) the length condition reads sinh(u)/u = l / d_y,
  // strictly increasing in u.
  const double target = (rest_length - endpoint_gap) / endpoint_gap;
  double lo = 0.0;
  double hi = kMaxCatenaryArg;
  if (sinhc_minus_one(hi) < target) {
    throw NumericalFailure("catenary: arch too deep to bracket (u > 50)",
                           target - sinhc_minus_one(hi));
  }
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sinhc_minus_one(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double u = std::abs(sinhc_minus_one(lo) - target) <= std::abs(sinhc_minus_one(hi) - target)
                       ? lo
                       : hi;
  if (!(u > 0.0)) {
    throw NumericalFailure("catenary: shape parameter diverged", target);
  }
  const double alpha = endpoint_gap / (2.0 * u);
  const double half = 0.5 * rest_length;
  // Positive root of d^2 + 2 alpha d - half^2, written to avoid cancellation.
  const double depth = half * half / (alpha + std::sqrt(alpha * alpha + half * half));
  return {alpha, depth};
}

std::vector<RibbonArch> ribbon_layout(const SheetSpec& sheet, double delta_x) {
  const double b = solve_semi_minor(sheet.radius, delta_x);
  const double b_eff = std::max(b, sheet.attachment_half_width);
  const int count = (sheet.n_discrete + 1) / 2;

  std::vector<RibbonArch> arches;
  arches.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    RibbonArch arch;
    arch.index = i;
    arch.station = ribbon_station(i, sheet.n_discrete);
    arch.rest_length = 2.0 * sheet.radius * arch.station;
    arch.endpoint_gap = std::min(2.0 * b_eff * arch.station, arch.rest_length);
    const CatenaryShape shape = solve_catenary(arch.rest_length, arch.endpoint_gap);
    arch.shape_param = shape.shape_param;
    arch.depth = shape.depth;
    arch.force_angle = std::atan2(arch.depth, 0.5 * arch.endpoint_gap);
    arches.push_back(arch);
  }
  return arches;
}

double ribbon_compression(const SheetSpec& sheet, RibbonArch& arch) {
  if (arch.depth == 0.0) {
    arch.force_angle = 0.0;
    return 0.0;
  }
  arch.force_angle = std::atan(arch.depth / (0.5 * arch.endpoint_gap));
  const double half = 0.5 * arch.rest_length;
  return 3.0 * sheet.bending_rigidity_ribbon() * arch.depth /
         (half * half * half * std::sin(arch.force_angle));
}

double ribbon_compression(const SheetSpec& sheet, const RibbonArch& arch) {
  RibbonArch copy = arch;
  return ribbon_compression(sheet, copy);
}

LinkageState linkage_state(const SheetSpec& sheet, double delta_x) {
  const double a = semi_major(sheet.radius, delta_x);
  const double b = solve_semi_minor(sheet.radius, delta_x);
  const double b_eff = std::max(b, sheet.attachment_half_width);
  LinkageState state;
  state.link_length = std::hypot(a, b_eff);
  state.link_angle = std::atan2(b_eff, a);
  state.clamped = b < sheet.attachment_half_width;
  return state;
}

FourBarBalance four_bar_balance(const std::vector<RibbonArch>& arches, int n_discrete,
                                const LinkageState& linkage) {
  FourBarBalance out;
  const double cos_t = std::cos(linkage.link_angle);
  const double sin_t = std::sin(linkage.link_angle);
  // Each ribbon acts on link 2 at distance l_link * t_i from joint c.
  for (const RibbonArch& arch : arches) {
    const double arm = linkage.link_length * ribbon_station(arch.index, n_discrete);
    out.ribbon_moments.push_back(arch.compression * arm * cos_t);
  }
  for (double m : out.ribbon_moments) out.link_moment += m;
  // No vertical reaction at b; the horizontal pair balances the ribbon moment.
  out.reaction_by = 0.0;
  out.reaction_bx = out.link_moment / (linkage.link_length * sin_t);
  out.reaction_cx2 = out.reaction_bx;
  // Links 2 and 3 are mirror images.
  out.reaction_cx3 = out.reaction_cx2;
  out.force = out.reaction_cx2 + out.reaction_cx3;
  return out;
}

DiscreteResponse discrete_response(const SheetSpec& sheet, double delta_x) {
  DiscreteResponse out;
  out.arches = ribbon_layout(sheet, delta_x);
  out.linkage = linkage_state(sheet, delta_x);
  const double tan_t = std::tan(out.linkage.link_angle);
  double sum = 0.0;
  for (RibbonArch& arch : out.arches) {
    arch.compression = ribbon_compression(sheet, arch);
    sum += arch.compression / tan_t * arch.station;
  }
  out.force = 2.0 * sum;
  return out;
}

double discrete_force(const SheetSpec& sheet, double delta_x) {
  return discrete_response(sheet, delta_x).force;
}

}  // namespace kirimech
