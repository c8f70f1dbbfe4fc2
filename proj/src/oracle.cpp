#include "kirimech/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kirimech/boundary.hpp"
#include "kirimech/errors.hpp"
#include "kirimech/model.hpp"
#include "kirimech/units.hpp"

namespace kirimech {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxHalvings = 40;
constexpr int kMaxProjections = 50;
// Below this stationarity a failed line search is treated as round-off.
constexpr double kRoundoffStationarity = 1.0e-8;  // N

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Jac = Eigen::Matrix<double, 4, Eigen::Dynamic>;

// Unknowns are the directions theta_k of the n equal segments, so every
// segment keeps its rest length exactly. Segment k runs from node k to k+1;
// node 0 and node m = n/2 are the anchors. Constraints hold node m at
// (+span/2, 0) relative to node 0 at (-span/2, 0) along both halves of the
// loop, which also closes the ring.
class RingProblem {
 public:
  explicit RingProblem(const RingModel& ring)
      : n_(ring.n_nodes),
        m_(ring.n_nodes / 2),
        h_(ring.segment_length()),
        stiffness_(ring.bending_stiffness / ring.segment_length()),
        rest_turn_(kTwoPi / ring.n_nodes) {}

  int size() const { return n_; }
  double segment() const { return h_; }

  Vec circle() const {
    Vec theta(n_);
    for (int k = 0; k < n_; ++k) {
      theta[k] = 1.5 * std::numbers::pi + 0.5 * rest_turn_ + rest_turn_ * k;
    }
    return theta;
  }

  double turn(const Vec& theta, int k) const {
    return k + 1 < n_ ? theta[k + 1] - theta[k] : theta[0] + kTwoPi - theta[n_ - 1];
  }

  // Sum of EI kappa^2 h / 2 with kappa measured from the rest curvature. The
  // turning angles always sum to 2 pi, so this differs from the plain
  // EI kappa^2 sum only by a constant.
  double energy(const Vec& theta) const {
    double sum = 0.0;
    for (int k = 0; k < n_; ++k) {
      const double d = turn(theta, k) - rest_turn_;
      sum += d * d;
    }
    return 0.5 * stiffness_ * sum;
  }

  // U(theta + delta) - U(theta). The energy is exactly quadratic in theta, so
  // this is exact up to rounding of the small terms, unlike a difference of two
  // energies whose round-off swamps the change near convergence.
  double energy_change(const Vec& theta, const Vec& delta) const {
    double sum = 0.0;
    for (int k = 0; k < n_; ++k) {
      const int next = k + 1 < n_ ? k + 1 : 0;
      const double d = turn(theta, k) - rest_turn_;
      const double dd = delta[next] - delta[k];
      sum += dd * (d + 0.5 * dd);
    }
    return stiffness_ * sum;
  }

  Vec gradient(const Vec& theta) const {
    Vec g(n_);
    for (int j = 0; j < n_; ++j) {
      const int prev = j == 0 ? n_ - 1 : j - 1;
      g[j] = stiffness_ * (turn(theta, prev) - turn(theta, j));
    }
    return g;
  }

  Eigen::Vector4d constraints(const Vec& theta, double span) const {
    Eigen::Vector4d c = Eigen::Vector4d::Zero();
    for (int k = 0; k < n_; ++k) {
      const int half = k < m_ ? 0 : 2;
      c[half] += h_ * std::cos(theta[k]);
      c[half + 1] += h_ * std::sin(theta[k]);
    }
    c[0] -= span;
    c[2] += span;
    return c;
  }

  Jac jacobian(const Vec& theta) const {
    Jac jac = Jac::Zero(4, n_);
    for (int k = 0; k < n_; ++k) {
      const int half = k < m_ ? 0 : 2;
      jac(half, k) = -h_ * std::sin(theta[k]);
      jac(half + 1, k) = h_ * std::cos(theta[k]);
    }
    return jac;
  }

  // Gauss-Newton minimum-norm correction back onto the constraint set.
  bool project(Vec& theta, double span) const {
    const double tol = 1.0e-13 * span;
    for (int it = 0; it < kMaxProjections; ++it) {
      const Eigen::Vector4d c = constraints(theta, span);
      if (c.cwiseAbs().maxCoeff() <= tol) return true;
      const Jac jac = jacobian(theta);
      const Eigen::Matrix4d jjt = jac * jac.transpose();
      theta -= jac.transpose() * jjt.ldlt().solve(c);
    }
    return constraints(theta, span).cwiseAbs().maxCoeff() <= 1.0e-11 * span;
  }

  Eigen::Vector4d least_squares_multipliers(const Jac& jac, const Vec& g) const {
    const Eigen::Matrix4d jjt = jac * jac.transpose();
    return -jjt.ldlt().solve(jac * g);
  }

  // Stationarity of the Lagrangian, expressed as a force (moment / segment length).
  double stationarity(const Jac& jac, const Vec& g, const Eigen::Vector4d& lambda) const {
    return (g + jac.transpose() * lambda).cwiseAbs().maxCoeff() / h_;
  }

  Vec newton_direction(const Vec& theta, const Jac& jac, const Vec& g,
                       const Eigen::Vector4d& lambda, const Eigen::Vector4d& c) const {
    const int dim = n_ + 4;
    Mat kkt = Mat::Zero(dim, dim);
    for (int k = 0; k < n_; ++k) {
      const int next = (k + 1) % n_;
      kkt(k, k) += 2.0 * stiffness_;
      kkt(k, next) -= stiffness_;
      kkt(next, k) -= stiffness_;
      // Curvature of the constraints, weighted by their multipliers.
      const int half = k < m_ ? 0 : 2;
      kkt(k, k) -= h_ * (lambda[half] * std::cos(theta[k]) + lambda[half + 1] * std::sin(theta[k]));
    }
    kkt.block(0, n_, n_, 4) = jac.transpose();
    kkt.block(n_, 0, 4, n_) = jac;
    Vec rhs(dim);
    rhs.head(n_) = -g;
    rhs.tail(4) = -c;
    const Eigen::PartialPivLU<Mat> lu(kkt);
    Vec sol = lu.solve(rhs);
    // One round of iterative refinement; the bending block is stiff.
    sol += lu.solve(rhs - kkt * sol);
    return sol.head(n_);
  }

 private:
  int n_;
  int m_;
  double h_;
  double stiffness_;  // EI / h
  double rest_turn_;
};

struct StageResult {
  Vec theta;
  double energy = 0.0;
  double stationarity = 0.0;
  double multiplier_force = 0.0;
  int iterations = 0;
  std::vector<double> energy_history;
};

// Newton iterations at a fixed anchor span, starting from a feasible theta.
// Only steps that do not raise the energy are accepted.
StageResult minimize_stage(const RingProblem& problem, Vec theta, double span, double tol,
                           int& budget) {
  StageResult out;
  double energy = problem.energy(theta);
  out.energy_history.push_back(energy);
  bool stalled = false;
  for (;;) {
    const Vec g = problem.gradient(theta);
    const Jac jac = problem.jacobian(theta);
    const Eigen::Vector4d lambda = problem.least_squares_multipliers(jac, g);
    const double residual = problem.stationarity(jac, g, lambda);
    if (residual < tol || (stalled && residual < kRoundoffStationarity)) {
      out.stationarity = residual;
      out.multiplier_force = lambda[2] - lambda[0];
      break;
    }
    if (budget-- <= 0) {
      throw NumericalFailure("ring oracle: iteration budget exhausted", residual);
    }
    const Eigen::Vector4d c = problem.constraints(theta, span);
    const Vec step = problem.newton_direction(theta, jac, g, lambda, c);

    bool accepted = false;
    double scale = 1.0;
    for (int k = 0; k < kMaxHalvings; ++k, scale *= 0.5) {
      Vec trial = theta + scale * step;
      if (!problem.project(trial, span)) continue;
      // Nearby doubles subtract exactly, so this is the true change of iterate.
      const Vec delta = trial - theta;
      const double change = problem.energy_change(theta, delta);
      if (change <= 0.0 && delta.cwiseAbs().maxCoeff() > 0.0) {
        theta = std::move(trial);
        energy += change;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (residual < kRoundoffStationarity) {
        out.stationarity = residual;
        out.multiplier_force = lambda[2] - lambda[0];
        break;
      }
      throw NumericalFailure("ring oracle: line search failed to reduce energy", residual);
    }
    ++out.iterations;
    out.energy_history.push_back(energy);
    // Below the round-off floor a damped step means Newton has stopped converging
    // quadratically; further iterations only creep.
    stalled = scale < 1.0;
  }
  out.theta = std::move(theta);
  out.energy = energy;
  return out;
}

StageResult continue_to(const RingProblem& problem, const Vec& start, double from_span,
                        double to_span, double max_stage, const RingSolverOptions& options,
                        int& budget) {
  const int stages =
      std::max(1, static_cast<int>(std::ceil(std::abs(to_span - from_span) / max_stage)));
  Vec theta = start;
  StageResult result;
  for (int s = 1; s <= stages; ++s) {
    const double span = from_span + (to_span - from_span) * s / stages;
    if (!problem.project(theta, span)) {
      std::ostringstream msg;
      msg << "ring oracle: no inextensible shape with anchor span " << units::to_mm(span)
          << " mm";
      throw NumericalFailure(msg.str(), problem.constraints(theta, span).cwiseAbs().maxCoeff());
    }
    result = minimize_stage(problem, theta, span, options.stationarity_tol, budget);
    theta = result.theta;
  }
  return result;
}

RingModel positions_from(const RingModel& ring, const Vec& theta, double span) {
  RingModel out = ring;
  const double h = ring.segment_length();
  out.node_positions.resize(static_cast<std::size_t>(ring.n_nodes));
  Point2 p{-0.5 * span, 0.0};
  for (int k = 0; k < ring.n_nodes; ++k) {
    out.node_positions[static_cast<std::size_t>(k)] = p;
    p.x += h * std::cos(theta[k]);
    p.y += h * std::sin(theta[k]);
  }
  return out;
}

void require_ring_displacement(const RingModel& ring, double delta_x) {
  if (!(delta_x >= 0.0)) throw InvalidArgument("ring displacement must be non-negative");
  // Each half of the loop is pi r long; the anchors cannot get further apart.
  const double limit = 0.5 * ring.segment_length() * ring.n_nodes;
  if (!(ring.rest_span() + delta_x < limit)) {
    std::ostringstream msg;
    msg << "ring displacement " << units::to_mm(delta_x)
        << " mm reaches full flattening (limit " << units::to_mm(limit - ring.rest_span())
        << " mm)";
    throw InvalidArgument(msg.str());
  }
}

double stage_length(const RingModel& ring, const RingSolverOptions& options) {
  return options.max_stage > 0.0 ? options.max_stage : ring.radius / 16.0;
}

RingSolution to_solution(const RingModel& ring, const StageResult& stage, double delta_x) {
  RingSolution sol;
  sol.ring = positions_from(ring, stage.theta, ring.rest_span() + delta_x);
  sol.displacement = delta_x;
  sol.energy = stage.energy;
  sol.multiplier_force = stage.multiplier_force;
  sol.stationarity = stage.stationarity;
  sol.iterations = stage.iterations;
  sol.energy_history = stage.energy_history;
  return sol;
}

}  // namespace

double RingModel::segment_length() const { return kTwoPi * radius / n_nodes; }

double RingModel::rest_span() const {
  // Circumscribed diameter of the regular polygon with side 2 pi r / n.
  return segment_length() / std::sin(std::numbers::pi / n_nodes);
}

RingModel make_ring(double radius, double bending_stiffness, int n_nodes) {
  if (n_nodes < 64 || n_nodes % 2 != 0) {
    throw InvalidArgument("ring needs an even node count of at least 64");
  }
  if (!(radius > 0.0) || !(bending_stiffness > 0.0)) {
    throw InvalidArgument("ring radius and bending stiffness must be positive");
  }
  RingModel ring;
  ring.n_nodes = n_nodes;
  ring.radius = radius;
  ring.bending_stiffness = bending_stiffness;
  const RingProblem problem(ring);
  return positions_from(ring, problem.circle(), ring.rest_span());
}

RingModel ring_from_sheet(const SheetSpec& sheet, int n_nodes) {
  return make_ring(sheet.radius, sheet.bending_rigidity_boundary(), n_nodes);
}

RingSolution solve_ring(const RingModel& ring, double delta_x, const RingSolverOptions& options) {
  require_ring_displacement(ring, delta_x);
  const RingProblem problem(ring);
  int budget = options.max_iterations;
  const double rest = ring.rest_span();
  const StageResult stage = continue_to(problem, problem.circle(), rest, rest + delta_x,
                                        stage_length(ring, options), options, budget);
  return to_solution(ring, stage, delta_x);
}

double simulate_ring_bend(const RingModel& ring, double delta_x, const RingSolverOptions& options) {
  require_ring_displacement(ring, delta_x);
  if (delta_x == 0.0) return 0.0;
  const RingProblem problem(ring);
  int budget = options.max_iterations;
  const double rest = ring.rest_span();
  const double max_stage = stage_length(ring, options);
  const StageResult base =
      continue_to(problem, problem.circle(), rest, rest + delta_x, max_stage, options, budget);

  const double step = delta_x / 1000.0;
  require_ring_displacement(ring, delta_x + step);
  const StageResult lower = continue_to(problem, base.theta, rest + delta_x, rest + delta_x - step,
                                        max_stage, options, budget);
  const StageResult upper = continue_to(problem, base.theta, rest + delta_x, rest + delta_x + step,
                                        max_stage, options, budget);
  return (upper.energy - lower.energy) / (2.0 * step);
}

LowerBoundReport check_lower_bound(const SheetSpec& sheet, const std::vector<double>& displacements,
                                   int n_nodes) {
  if (displacements.empty()) throw InvalidArgument("no displacements to check");
  for (std::size_t i = 0; i < displacements.size(); ++i) {
    if (!(displacements[i] > 0.0)) throw InvalidArgument("displacements must be positive");
    if (i > 0 && !(displacements[i] > displacements[i - 1])) {
      throw InvalidArgument("displacements must be strictly ascending");
    }
  }
  const RingModel ring = ring_from_sheet(sheet, n_nodes);

  std::vector<std::future<LowerBoundPoint>> jobs;
  jobs.reserve(displacements.size());
  for (double dx : displacements) {
    jobs.push_back(std::async(std::launch::async, [&sheet, &ring, dx] {
      LowerBoundPoint p;
      p.displacement = dx;
      p.model_force = bend_force(sheet, dx);
      try {
        p.oracle_force = simulate_ring_bend(ring, dx);
        p.slack = p.oracle_force - p.model_force;
      } catch (const std::exception& e) {
        p.error = e.what();
      }
      return p;
    }));
  }

  LowerBoundReport report;
  report.passed = true;
  for (auto& job : jobs) {
    LowerBoundPoint p = job.get();
    if (p.error || p.slack < -report.tolerance) report.passed = false;
    report.points.push_back(std::move(p));
  }
  return report;
}

void write_ring_csv(std::ostream& out, const RingModel& ring) {
  out << "x_mm,y_mm\n";
  for (const Point2& p : ring.node_positions) {
    out << format_exact(units::to_mm(p.x)) << ',' << format_exact(units::to_mm(p.y)) << '\n';
  }
}

}  // namespace kirimech
