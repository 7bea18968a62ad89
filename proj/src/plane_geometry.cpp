#include "esdl/plane_geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "esdl/parallel.hpp"

namespace esdl {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(i (2k - 1) pi / p): rotates Q_k onto the positive real half-strip.
Complex strip_frame(int p, int k) { return std::polar(1.0, (2.0 * k - 1.0) * kPi / p); }

double strip_boundary_distance(const PartitionConfig& config, Complex w) {
  const double q = config.q;
  return std::min({distance_to_halfline(w, {0.0, q}, {1.0, 0.0}),
                   distance_to_halfline(w, {0.0, -q}, {1.0, 0.0}),
                   distance_to_segment(w, {0.0, -q}, {0.0, q})});
}

double polygon_boundary_distance(const std::vector<Complex>& vertices, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k)
    d = std::min(d, distance_to_segment(z, vertices[(k + n - 1) % n], vertices[k]));
  return d;
}

bool inside_polygon(const PartitionConfig& config, Complex z) {
  // Edge normals point at angles 2 pi k / p and the inradius is nu.
  for (int k = 0; k < config.p; ++k) {
    const Complex normal = std::polar(1.0, 2.0 * kPi * k / config.p);
    if ((z * std::conj(normal)).real() >= config.nu)
      return false;
  }
  return true;
}

double radical_inverse(unsigned index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * (index % base);
    index /= base;
    f /= base;
  }
  return result;
}

}  // namespace

double PartitionConfig::min_q(int p) { return std::log(32.0 * p) / (2.0 * std::sin(kPi / p)); }

PartitionConfig PartitionConfig::with_min_q(int p, double nu) { return {p, nu, min_q(p)}; }

void PartitionConfig::validate() const {
  if (p < 3)
    throw std::invalid_argument("p >= 3 required");
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw std::invalid_argument("nu > 0 required");
  // Relative slack so that a q computed as min_q(p) and printed/parsed back
  // is still accepted.
  if (!(q >= min_q(p) * (1.0 - 1e-12)) || !std::isfinite(q))
    throw std::invalid_argument("q >= log(32p) / (2 sin(pi/p)) required");
}

std::string Region::to_string() const {
  switch (tag) {
    case RegionTag::Polygon:
      return "POLYGON";
    case RegionTag::Strip:
      return "STRIP(" + std::to_string(index) + ")";
    case RegionTag::Sector:
      return "SECTOR(" + std::to_string(index) + ")";
    case RegionTag::Boundary:
      break;
  }
  return "BOUNDARY";
}

std::vector<Complex> polygon_vertices(const PartitionConfig& config) {
  std::vector<Complex> out;
  out.reserve(config.p);
  const double radius = config.nu / std::cos(kPi / config.p);
  for (int k = 0; k < config.p; ++k)
    out.push_back(std::polar(radius, (2.0 * k + 1.0) * kPi / config.p));
  return out;
}

double distance_to_segment(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0)
    return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double distance_to_halfline(Complex z, Complex origin, Complex unit_dir) {
  const Complex local = (z - origin) * std::conj(unit_dir);
  if (local.real() <= 0.0)
    return std::abs(z - origin);
  return std::abs(local.imag());
}

Region classify_point(const PartitionConfig& config, Complex z) {
  const auto vertices = polygon_vertices(config);
  if (polygon_boundary_distance(vertices, z) < kBoundaryTolerance)
    return Region::boundary();
  if (inside_polygon(config, z))
    return Region::polygon();

  int best = -1;
  double best_offset = std::numeric_limits<double>::infinity();
  double second_offset = std::numeric_limits<double>::infinity();
  for (int k = 0; k < config.p; ++k) {
    const Complex w = z * strip_frame(config.p, k);
    if (w.real() > 0.0 && std::abs(w.imag()) < config.q) {
      const double offset = std::abs(w.imag());
      if (offset < best_offset) {
        second_offset = best_offset;
        best_offset = offset;
        best = k;
      } else if (offset < second_offset) {
        second_offset = offset;
      }
    }
  }
  if (best >= 0) {
    const Complex w = z * strip_frame(config.p, best);
    if (strip_boundary_distance(config, w) < kBoundaryTolerance)
      return Region::boundary();
    if (second_offset - best_offset < 2.0 * kBoundaryTolerance)
      return Region::boundary();
    return Region::strip(best);
  }

  for (int k = 0; k < config.p; ++k)
    if (strip_boundary_distance(config, z * strip_frame(config.p, k)) < kBoundaryTolerance)
      return Region::boundary();

  const double turns = -std::arg(z) * config.p / (2.0 * kPi);
  int j = static_cast<int>(std::lround(turns)) % config.p;
  if (j < 0)
    j += config.p;
  return Region::sector(j);
}

double partition_boundary_distance(const PartitionConfig& config, Complex z) {
  double d = polygon_boundary_distance(polygon_vertices(config), z);
  for (int k = 0; k < config.p; ++k)
    d = std::min(d, strip_boundary_distance(config, z * strip_frame(config.p, k)));
  return d;
}

bool in_S_r(int p, double r, Complex z) {
  return std::abs(z.real()) >= r && std::abs(z.imag()) <= kPi / (2.0 * p);
}

bool in_R_strip(int k, Complex z) {
  return (2.0 * k - 1.0) * kPi < z.imag() && z.imag() < (2.0 * k + 1.0) * kPi;
}

Complex ray_direction(int p, int k) { return std::polar(1.0, kPi / p - 2.0 * kPi * k / p); }

double dist_to_rays(int p, Complex z) {
  double d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < p; ++k)
    d = std::min(d, distance_to_halfline(z, {0.0, 0.0}, ray_direction(p, k)));
  return d;
}

std::vector<double> default_nu_grid() { return {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0}; }

std::vector<double> default_eps_grid() { return {0.9, 0.75, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05}; }

namespace {

// log M(r) at log-spaced radii. log M is convex in log r, so the chord between
// two table nodes lies above it and interpolation gives an upper bound; below
// the first node M(r_lo) bounds M(r) by monotonicity.
class LogMaxModTable {
 public:
  LogMaxModTable(const FamilyParams& params, double r_hi, unsigned threads) {
    constexpr int kNodes = 4096;
    s_lo_ = std::log(kRadiusLo);
    step_ = (std::log(std::max(r_hi, 2.0 * kRadiusLo)) - s_lo_) / (kNodes - 1);
    values_.resize(kNodes);
    parallel_for(
        values_.size(), [&](std::size_t i) { values_[i] = max_modulus(params, std::exp(s_lo_ + step_ * i)); },
        threads);
  }

  double upper(double r) const {
    if (r <= kRadiusLo)
      return values_.front();
    const double u = (std::log(r) - s_lo_) / step_;
    const std::size_t i = std::min(static_cast<std::size_t>(u), values_.size() - 2);
    const double frac = std::min(u - static_cast<double>(i), 1.0);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
  }

 private:
  static constexpr double kRadiusLo = 1e-3;
  double s_lo_ = 0.0;
  double step_ = 0.0;
  std::vector<double> values_;
};

}  // namespace

EstimatedConstants estimate_constants(const FamilyParams& params, std::vector<double> nu_grid,
                                      std::vector<double> eps_grid, int sample_budget,
                                      unsigned threads) {
  if (nu_grid.empty() || eps_grid.empty())
    throw std::invalid_argument("estimate_constants: grids must be nonempty");
  if (sample_budget < 1000)
    throw std::invalid_argument("estimate_constants: sample_budget >= 1000 required");
  for (double nu : nu_grid)
    if (!(nu > 0.0))
      throw std::invalid_argument("estimate_constants: nu grid values must be positive");
  for (double eps : eps_grid)
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("estimate_constants: eps grid values must lie in (0, 1)");
  std::sort(nu_grid.begin(), nu_grid.end());
  std::sort(eps_grid.begin(), eps_grid.end(), std::greater<>());

  const int p = params.p();
  const LogMaxModTable log_max_mod(params, 1.01 * eps_grid.front() * 10.0 * nu_grid.back(), threads);
  for (double nu : nu_grid) {
    const PartitionConfig config = PartitionConfig::with_min_q(p, nu);
    const double extent = 10.0 * nu;

    // Every point of T(nu) has |z| >= q / sin(pi/p) (it must clear both strips
    // flanking its sector), so sampling runs over that annulus only.
    const double r_in = config.q / std::sin(std::numbers::pi / p);
    if (r_in >= extent)
      continue;
    std::vector<Complex> samples;
    samples.reserve(sample_budget);
    const unsigned max_attempts = 200u * static_cast<unsigned>(sample_budget);
    for (unsigned i = 1; i <= max_attempts && static_cast<int>(samples.size()) < sample_budget; ++i) {
      const double r = std::sqrt(r_in * r_in + radical_inverse(i, 2) * (extent * extent - r_in * r_in));
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * radical_inverse(i, 3));
      if (classify_point(config, z).tag == RegionTag::Sector)
        samples.push_back(z);
    }
    if (static_cast<int>(samples.size()) < sample_budget)
      continue;

    std::vector<double> log_f(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) { log_f[i] = evaluate(params, samples[i]).log_abs(); },
                 threads);

    for (double eps : eps_grid) {
      std::vector<double> margins(samples.size(), std::numeric_limits<double>::infinity());
      std::atomic<bool> failed{false};
      parallel_for(
          samples.size(),
          [&](std::size_t i) {
            if (failed.load(std::memory_order_relaxed))
              return;
            const double bound = std::max(eps * nu, log_max_mod.upper(eps * std::abs(samples[i])));
            margins[i] = log_f[i] - bound;
            if (!(margins[i] > 0.0))
              failed.store(true, std::memory_order_relaxed);
          },
          threads);
      if (failed.load())
        continue;
      EstimatedConstants out;
      out.nu_prime = nu;
      out.eps0 = eps;
      out.samples_checked = static_cast<int>(samples.size());
      out.margin = *std::min_element(margins.begin(), margins.end());
      out.q = config.q;
      return out;
    }
  }
  throw NotFoundError("estimate_constants: no (nu', eps0) grid pair satisfied the sampled inequality");
}

}  // namespace esdl
