#ifndef DCP_ACTION_HPP
#define DCP_ACTION_HPP

// Classical action along phase-space paths built from displacement
// Hamiltonians. Every leg of a polygon is the straight flow of
// H = (p dX - x dP) / T, so the loop action reduces to the enclosed area.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "dcp/common.hpp"
#include "dcp/errors.hpp"

namespace dcp::action {

template <typename Real = double>
struct PhasePoint {
  Real x{0};
  Real p{0};

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// H(x, p) = coeff_p * p + coeff_x * x.
template <typename Real = double>
struct LinearHamiltonian {
  Real coeff_p{0};
  Real coeff_x{0};

  Real operator()(const PhasePoint<Real>& z) const { return coeff_p * z.p + coeff_x * z.x; }
  /// (dx/dt, dp/dt) = (dH/dp, -dH/dx)
  PhasePoint<Real> velocity() const { return {coeff_p, -coeff_x}; }
};

template <typename Real = double>
class PolygonPath {
 public:
  /// Closed path: segment i runs from vertices[i] to vertices[(i+1) % n].
  static PolygonPath closed(std::vector<PhasePoint<Real>> vertices, std::vector<Real> durations) {
    if (vertices.size() != durations.size()) {
      throw InvalidParameter("PolygonPath: closed path needs one duration per vertex");
    }
    return PolygonPath(std::move(vertices), std::move(durations), true);
  }

  /// Closed path with unit durations.
  static PolygonPath closed(std::vector<PhasePoint<Real>> vertices) {
    std::vector<Real> durations(vertices.size(), Real(1));
    return closed(std::move(vertices), std::move(durations));
  }

  /// Open path: segment i runs from vertices[i] to vertices[i+1].
  static PolygonPath open(std::vector<PhasePoint<Real>> vertices, std::vector<Real> durations) {
    if (vertices.size() < 2 || durations.size() + 1 != vertices.size()) {
      throw InvalidParameter("PolygonPath: open path needs n >= 2 vertices and n-1 durations");
    }
    return PolygonPath(std::move(vertices), std::move(durations), false);
  }

  const std::vector<PhasePoint<Real>>& vertices() const { return vertices_; }
  const std::vector<Real>& durations() const { return durations_; }
  bool is_closed() const { return closed_; }
  std::size_t segment_count() const { return durations_.size(); }

  std::pair<PhasePoint<Real>, PhasePoint<Real>> segment(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }

  PolygonPath reversed() const {
    std::vector<PhasePoint<Real>> v(vertices_.rbegin(), vertices_.rend());
    std::vector<Real> d(durations_.rbegin(), durations_.rend());
    if (closed_) {
      // keep segment/duration pairing: reversed segment i is original n-2-i
      std::rotate(d.begin(), d.begin() + 1, d.end());
      return closed(std::move(v), std::move(d));
    }
    return open(std::move(v), std::move(d));
  }

 private:
  PolygonPath(std::vector<PhasePoint<Real>> v, std::vector<Real> d, bool closed)
      : vertices_(std::move(v)), durations_(std::move(d)), closed_(closed) {
    for (const auto& z : vertices_) {
      if (!std::isfinite(z.x) || !std::isfinite(z.p)) {
        throw NumericInput("PolygonPath: non-finite vertex");
      }
    }
    for (Real t : durations_) {
      if (!(t > 0)) throw InvalidDuration("PolygonPath: segment durations must be positive");
    }
  }

  std::vector<PhasePoint<Real>> vertices_;
  std::vector<Real> durations_;
  bool closed_;
};

/// Hamiltonian whose flow for time T translates every point by (dX, dP).
template <typename Real>
LinearHamiltonian<Real> displacement_hamiltonian(Real dx, Real dp, Real duration) {
  if (!(duration > 0)) throw InvalidDuration("displacement_hamiltonian: T must be positive");
  return {dx / duration, -dp / duration};
}

/// Integral of p dx - H dt along the straight displacement flow from
/// `start` to `end`: x_start dP + dX dP / 2, for any duration.
template <typename Real>
Real segment_action(const PhasePoint<Real>& start, const PhasePoint<Real>& end) {
  const Real dx = end.x - start.x;
  const Real dp = end.p - start.p;
  return start.x * dp + dx * dp / Real(2);
}

/// Signed area enclosed in the (x, p) plane, counter-clockwise positive.
template <typename Real>
Real shoelace_area(const PolygonPath<Real>& path) {
  const auto& v = path.vertices();
  if (v.size() < 3) throw DegeneratePath("shoelace_area: need at least 3 vertices");
  if (!path.is_closed()) throw NotClosed("shoelace_area: path is open");
  Real twice = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a.x * b.p - b.x * a.p;
  }
  return twice / Real(2);
}

template <typename Real>
std::vector<Real> segment_actions(const PolygonPath<Real>& path) {
  std::vector<Real> out;
  out.reserve(path.segment_count());
  for (std::size_t i = 0; i < path.segment_count(); ++i) {
    const auto [a, b] = path.segment(i);
    out.push_back(segment_action(a, b));
  }
  return out;
}

template <typename Real>
Real loop_action(const PolygonPath<Real>& path) {
  if (!path.is_closed()) throw NotClosed("loop_action: path is open");
  Real total = 0;
  for (Real s : segment_actions(path)) total += s;
  return total;
}

/// e^{iS/hbar} phase of the loop, in (-pi, pi].
template <typename Real>
Real quantum_phase_of_loop(const PolygonPath<Real>& path, Real hbar) {
  if (!(hbar > 0)) throw InvalidParameter("quantum_phase_of_loop: hbar must be positive");
  return wrap_phase(loop_action(path) / hbar);
}

template <typename Real = double>
struct Trajectory {
  PhasePoint<Real> end;
  Real action{0};
  std::vector<PhasePoint<Real>> waypoints;  // steps + 1 points, start included
};

/// Classical RK4 on (x, p, S) with dS/dt = p dx/dt - H.
template <typename Real>
Trajectory<Real> integrate_trajectory(const LinearHamiltonian<Real>& h,
                                      const PhasePoint<Real>& start, Real duration,
                                      std::size_t steps) {
  if (!(duration > 0)) throw InvalidParameter("integrate_trajectory: T must be positive");
  if (steps < 10) throw InvalidParameter("integrate_trajectory: need at least 10 steps");

  struct State {
    Real x, p, s;
  };
  const auto rhs = [&h](const State& y) {
    const PhasePoint<Real> z{y.x, y.p};
    const PhasePoint<Real> v = h.velocity();
    return State{v.x, v.p, z.p * v.x - h(z)};
  };
  const auto axpy = [](const State& y, Real a, const State& k) {
    return State{y.x + a * k.x, y.p + a * k.p, y.s + a * k.s};
  };

  const Real dt = duration / static_cast<Real>(steps);
  State y{start.x, start.p, 0};
  Trajectory<Real> out;
  out.waypoints.reserve(steps + 1);
  out.waypoints.push_back(start);
  for (std::size_t i = 0; i < steps; ++i) {
    const State k1 = rhs(y);
    const State k2 = rhs(axpy(y, dt / 2, k1));
    const State k3 = rhs(axpy(y, dt / 2, k2));
    const State k4 = rhs(axpy(y, dt, k3));
    y.x += dt / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    y.p += dt / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
    y.s += dt / 6 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s);
    out.waypoints.push_back({y.x, y.p});
  }
  out.end = {y.x, y.p};
  out.action = y.s;
  return out;
}

/// Axis-aligned rectangle A(x0,p0) -> B -> C -> D, counter-clockwise for
/// positive width and height.
template <typename Real>
PolygonPath<Real> rectangle(Real x0, Real p0, Real width, Real height) {
  return PolygonPath<Real>::closed({{x0, p0}, {x0 + width, p0}, {x0 + width, p0 + height},
                                    {x0, p0 + height}});
}

}  // namespace dcp::action

#endif  // DCP_ACTION_HPP
