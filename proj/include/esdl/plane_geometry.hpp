#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "esdl/eval_core.hpp"

namespace esdl {

// Geometry of the plane partition: the regular p-gon P(nu) with inradius nu,
// the p half-strips Q_k of half-width q pointing at the polygon vertices, and
// the p unbounded sectors T_j(nu) left over.
struct PartitionConfig {
  int p = 4;
  double nu = 1.0;
  double q = 0.0;

  // log(32 p) / (2 sin(pi / p)); the smallest admissible strip half-width.
  static double min_q(int p);
  // Config with q at its lower bound.
  static PartitionConfig with_min_q(int p, double nu);

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

enum class RegionTag : std::uint8_t { Polygon, Strip, Sector, Boundary };

struct Region {
  RegionTag tag = RegionTag::Boundary;
  int index = -1;  // k for Strip, j for Sector, -1 otherwise

  static Region polygon() { return {RegionTag::Polygon, -1}; }
  static Region strip(int k) { return {RegionTag::Strip, k}; }
  static Region sector(int j) { return {RegionTag::Sector, j}; }
  static Region boundary() { return {RegionTag::Boundary, -1}; }

  bool operator==(const Region&) const = default;
  std::string to_string() const;
};

inline constexpr double kBoundaryTolerance = 1e-12;

// Vertices (nu / cos(pi/p)) exp((2k+1) i pi / p), k = 0..p-1.
std::vector<Complex> polygon_vertices(const PartitionConfig& config);

// Polygon interior wins, then strips, then sectors. Among overlapping strips
// the one whose centre line is nearest is chosen, which keeps the labelling
// equivariant under rotation by 2 pi / p. Points within 1e-12 of the boundary
// of the region they would be assigned to are reported as Boundary.
Region classify_point(const PartitionConfig& config, Complex z);

// Distance from z to the nearest edge of P(nu) or side of any Q_k.
double partition_boundary_distance(const PartitionConfig& config, Complex z);

// S_r = {x + iy : |x| >= r, |y| <= pi / (2p)}.
bool in_S_r(int p, double r, Complex z);

// R(k) = {(2k-1) pi < Im z < (2k+1) pi}.
bool in_R_strip(int k, Complex z);

// Direction of the ray V_k: exp(i (pi/p - 2 pi k / p)).
Complex ray_direction(int p, int k);

// Euclidean distance from z to the closure of the union of the rays V_k.
double dist_to_rays(int p, Complex z);

// Distance from z to the segment [a, b] and to the half-line a + t dir, t >= 0.
double distance_to_segment(Complex z, Complex a, Complex b);
double distance_to_halfline(Complex z, Complex origin, Complex unit_dir);

struct EstimatedConstants {
  double nu_prime = 0.0;
  double eps0 = 0.0;
  int samples_checked = 0;
  // Minimum over samples of log|f(z)| - log max{e^{eps0 nu'}, M(eps0 |z|, f)},
  // with log M taken from an interpolated table that bounds it from above.
  double margin = 0.0;
  double q = 0.0;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scans nu_grid in increasing order and, for each nu', eps_grid from the
// largest value down, returning the first pair for which
//   |f(z)| > max{e^{eps0 nu'}, M(eps0 |z|, f)}
// holds with positive slack at sample_budget quasi-random (Halton) points of
// T(nu') within |z| <= 10 nu'. Sampled evidence only. Throws NotFoundError
// when no pair passes and std::invalid_argument on bad grids.
EstimatedConstants estimate_constants(const FamilyParams& params, std::vector<double> nu_grid,
                                      std::vector<double> eps_grid, int sample_budget,
                                      unsigned threads = 0);

// Default grids used by the verification suite.
std::vector<double> default_nu_grid();
std::vector<double> default_eps_grid();

}  // namespace esdl
