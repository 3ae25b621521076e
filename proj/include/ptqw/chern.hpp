#pragma once

#include <vector>

#include "ptqw/quench.hpp"

namespace ptqw {

/// Momentum interval between adjacent fixed points, closed in time by the
/// per-k period t0(k) = pi / E^f_k. k_m < k_n; the last interval around the
/// zone has k_n shifted by 2 pi.
struct Submanifold {
  double k_m;
  double k_n;
  FixedPointKind kind_m;
  FixedPointKind kind_n;
};

std::vector<Submanifold> build_submanifolds(const std::vector<FixedPoint>& fixed_points);

enum class ChernMethod { Riemann, SolidAngle };

const char* to_string(ChernMethod method);

struct ChernResult {
  double value;
  long rounded;
  double residual;
  ChernMethod method;
};

/// Midpoint-rule integral of n . (d_t n x d_k n) / 4 pi over the
/// submanifold, with time rescaled per k to tau = t E^f_k / pi in [0, 1].
ChernResult chern_riemann(const Submanifold& sub, const QuenchSpec& spec, int n_k = 256,
                          int n_t = 256);

/// Sum of signed spherical-triangle areas of the n-field over the same
/// (k, tau) lattice, oriented like the Riemann integrand. Throws
/// DegenerateTriangle when neighbouring lattice vectors are antipodal.
ChernResult chern_solid_angle(const Submanifold& sub, const QuenchSpec& spec, int n_k = 256,
                              int n_t = 256);

/// Signed solid angle of the spherical triangle (a, b, c) of unit vectors.
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace ptqw
