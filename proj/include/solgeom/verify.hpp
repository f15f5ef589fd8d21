#pragma once

// Independent oracles and seeded property scans.
//
// The oracles here never call the closed-form inverse (solve_endpoint); they
// only use the forward map curve_point or integrate the curve ODE directly.
// Scans seed one engine per trial from (seed + trial index), so the OpenMP
// kernels and their serial references produce identical counts and extrema.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "solgeom/curves.hpp"
#include "solgeom/triangles.hpp"

namespace solgeom::verify {

/// Fixed-step RK4 integration of x' = u e^{-z}, y' = v e^{z}, z' = w from the
/// origin. Throws InvalidInput if steps < 100.
SolPoint ode_oracle_curve(const Direction& dir, double t_end, int steps);

struct BruteForceResult {
  CurveParams params;
  double residual = 0.0;
  bool converged = false;
};

/// Grid search over (phi, theta) followed by Newton polishing on the forward
/// residual. Throws InvalidInput for the origin.
BruteForceResult brute_force_params(const SolPoint& p, int grid = 64);

/// Parameter disagreement: phi modulo 2 pi (ignored when both are vertical),
/// theta and t absolute.
double params_distance(const CurveParams& a, const CurveParams& b);

enum class Axis { x, y, z };

struct SweepSpec {
  SolPoint a1;
  SolPoint a2;
  SolPoint a3_template;
  Axis free_axis = Axis::z;
  std::vector<double> values;
  std::vector<std::string> labels;  // optional display labels, one per value

  void validate() const;
  Triangle triangle_for(double value) const;
};

struct SweepRow {
  double value = 0.0;
  std::string label;
  InteriorAngles angles;
  double sum = 0.0;
  bool degenerate = false;
};

/// A2 = (-1,1,1), A3 = (1/2, 5, z) over the eleven z values.
SweepSpec table1_spec();
/// A2 = (-1,1,1), A3 = (1/2, y, 1/2) over the eleven y values.
SweepSpec table2_spec();

std::vector<SweepRow> table_sweep(const SweepSpec& spec);

double round_to(double v, int decimals);

struct Box {
  double lo = -5.0;
  double hi = 5.0;
};

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial);

/// Uniform vertices in box^3, resampling pairs closer than 1e-6.
Triangle random_triangle(std::mt19937_64& rng, const Box& box);

struct ScanResult {
  std::uint64_t trials = 0;
  double min_sum = 0.0;
  double max_sum = 0.0;
  double min_excess = 0.0;
  std::uint64_t violations = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> first_violation;  // lowest failing trial index
  std::optional<Triangle> first_violation_triangle;
};

/// Angle-sum scan: counts trials with sum < pi - tol. OpenMP-parallel.
ScanResult theorem_scan(std::uint64_t trials, std::uint64_t seed, const Box& box = {},
                        double tol = kTheoremTol);
ScanResult theorem_scan_serial(std::uint64_t trials, std::uint64_t seed, const Box& box = {},
                               double tol = kTheoremTol);

struct PropertyCheck {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double max_error = 0.0;
  std::uint64_t violations = 0;
  std::optional<std::uint64_t> first_failure;
  std::string first_failure_input;

  bool passed() const { return violations == 0; }
};

/// Error of one trial; when `describe` is non-null the trial's input is
/// written there for reproduction.
using TrialFn = std::function<double(std::mt19937_64& rng, std::string* describe)>;

/// Runs `fn` for every trial in parallel and reduces max error and the count
/// of errors above `tol` (NaN counts as a violation).
PropertyCheck run_property(std::string name, std::uint64_t trials, std::uint64_t seed, double tol,
                           const TrialFn& fn);
PropertyCheck run_property_serial(std::string name, std::uint64_t trials, std::uint64_t seed,
                                  double tol, const TrialFn& fn);

// Property suites. Each draws its inputs from trial_engine(seed, i).

/// Theorem scan as a property: error is max(0, pi - sum).
PropertyCheck theorem_suite(std::uint64_t trials, std::uint64_t seed, double tol = kTheoremTol);
/// Coordinate-plane and parallel-plane triangles: |sum - pi|, and coplanarity
/// residual must stay below kCoplanarTol (a non-coplanar verdict is reported as error 1).
PropertyCheck planar_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-9);
PropertyCheck antipodality_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-9);
/// Round trip params -> point -> params across all four endpoint cases.
PropertyCheck round_trip_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-9);
/// Closed form vs RK4 with 10^4 steps, t <= 5.
PropertyCheck ode_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-8);
/// Closed-form inverse vs brute-force search across all four endpoint cases.
PropertyCheck brute_force_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-8);
PropertyCheck unit_speed_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-12);
PropertyCheck distance_symmetry_suite(std::uint64_t trials, std::uint64_t seed, double tol = 1e-9);

/// Random parameters; `branch` selects which endpoint case the image hits.
CurveParams random_params(std::mt19937_64& rng, EndpointCase branch, double t_max);
SolPoint random_endpoint(std::mt19937_64& rng, EndpointCase branch, const Box& box = {});

/// Triangle with all vertices in one coordinate plane or a parallel plane.
Triangle random_planar_triangle(std::mt19937_64& rng, Axis axis, bool through_origin,
                                const Box& box = {});

}  // namespace solgeom::verify
