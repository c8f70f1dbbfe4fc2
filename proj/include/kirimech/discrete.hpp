#pragma once

#include <vector>

#include "kirimech/core.hpp"

namespace kirimech {

/// Buckled discrete ribbon modelled as a catenary arch.
struct RibbonArch {
  int index = 0;             // 1 = nearest the major-axis joint
  double station = 0.0;      // i / (floor(n_d/2) + 1)
  double rest_length = 0.0;  // m
  double endpoint_gap = 0.0; // m
  double shape_param = 0.0;  // m; +inf for a flat ribbon
  double depth = 0.0;        // m
  double force_angle = 0.0;  // rad
  double compression = 0.0;  // N, magnitude of the axial load from the boundary
};

struct CatenaryShape {
  double shape_param = 0.0;  // m; +inf when the ribbon is flat
  double depth = 0.0;        // m
};

/// Rigid-link abstraction of the boundary: joints at the ends of the major and
/// minor axes, links joining neighbouring joints.
struct LinkageState {
  double link_length = 0.0;  // m
  double link_angle = 0.0;   // rad, measured from the pull direction
  bool clamped = false;      // true when b < b_min and b_min was used instead
};

/// Intermediate quantities of the joint/link equilibrium.
struct FourBarBalance {
  std::vector<double> ribbon_moments;  // moment of each ribbon about joint c
  double link_moment = 0.0;            // sum of ribbon_moments
  double reaction_bx = 0.0;            // horizontal reaction at joint b on link 2
  double reaction_by = 0.0;            // vertical reaction at joint b; zero by symmetry
  double reaction_cx2 = 0.0;           // horizontal reaction at joint c from link 2
  double reaction_cx3 = 0.0;           // same from link 3
  double force = 0.0;                  // tensile force at joint c
};

struct DiscreteResponse {
  std::vector<RibbonArch> arches;
  LinkageState linkage;
  double force = 0.0;  // N
};

/// Parametric station of ribbon i (1-based) for n_d ribbons.
double ribbon_station(int index, int n_discrete);

/// Arch geometry for ribbons 1..ceil(n_d/2). Ribbon i spans the boundary chord
/// at station t_i: rest length 2 r t_i, gap 2 b t_i. The gap uses
/// max(b, b_min) because the rigid attachment stops b closing further.
std::vector<RibbonArch> ribbon_layout(const SheetSpec& sheet, double delta_x);

/// Solves l = 2 alpha sinh(d_y / (2 alpha)) for alpha, then the positive root of
/// d_z^2 + 2 alpha d_z - (l/2)^2 = 0.
CatenaryShape solve_catenary(double rest_length, double endpoint_gap);

/// Axial load that makes each cantilevered half deflect by the arch depth.
/// Sets the arch's force_angle; returns 0 for a flat ribbon.
double ribbon_compression(const SheetSpec& sheet, RibbonArch& arch);
double ribbon_compression(const SheetSpec& sheet, const RibbonArch& arch);

LinkageState linkage_state(const SheetSpec& sheet, double delta_x);

/// Moment balance of link 2 and force balance of joint c, done step by step.
FourBarBalance four_bar_balance(const std::vector<RibbonArch>& arches, int n_discrete,
                                const LinkageState& linkage);

/// Tensile force needed to buckle the discrete ribbons (closed form).
DiscreteResponse discrete_response(const SheetSpec& sheet, double delta_x);
double discrete_force(const SheetSpec& sheet, double delta_x);

}  // namespace kirimech
