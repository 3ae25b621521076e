#include "ptqw/chern.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "parallel.hpp"

namespace ptqw {

const char* to_string(ChernMethod method) {
  return method == ChernMethod::Riemann ? "riemann" : "solid_angle";
}

std::vector<Submanifold> build_submanifolds(const std::vector<FixedPoint>& fixed_points) {
  std::vector<Submanifold> subs;
  if (fixed_points.size() < 2) return subs;
  for (std::size_t i = 0; i < fixed_points.size(); ++i) {
    const FixedPoint& a = fixed_points[i];
    const bool last = i + 1 == fixed_points.size();
    const FixedPoint& b = fixed_points[last ? 0 : i + 1];
    subs.push_back({a.k, last ? b.k + 2.0 * kPi : b.k, a.kind, b.kind});
  }
  return subs;
}

double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double numerator = a.dot(b.cross(c));
  const double denominator = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(numerator, denominator);
}

namespace {

ChernResult make_result(double sum, ChernMethod method) {
  const double value = sum / (4.0 * kPi);
  const long rounded = std::lround(value);
  return {value, rounded, std::abs(value - rounded), method};
}

void require_grid(int n_k, int n_t) {
  if (n_k < 2 || n_t < 2) throw InvalidParameter("Chern grid must be at least 2x2");
}

// n(k, tau) for a fixed sector; t = tau * pi / E.
Vec3 field_at(const Sector& s, double tau) {
  if (s.regime != Regime::RealE) {
    std::ostringstream msg;
    msg << "E^f is not real at k=" << s.k << "; the submanifold is not periodic in time";
    throw ImaginaryEnergy(msg.str());
  }
  return bloch_vector(s, tau * kPi / s.energy.real());
}

}  // namespace

ChernResult chern_riemann(const Submanifold& sub, const QuenchSpec& spec, int n_k, int n_t) {
  require_grid(n_k, n_t);
  const double dk = (sub.k_n - sub.k_m) / n_k;
  const double dtau = 1.0 / n_t;

  // Sectors at half-step spacing: even indices are cell edges, odd are centres.
  std::vector<Sector> sectors(static_cast<std::size_t>(2 * n_k + 1));
  detail::parallel_for(2 * n_k + 1, [&](int i) {
    sectors[i] = make_sector(spec, sub.k_m + 0.5 * dk * i);
  });

  std::vector<double> row_sums(static_cast<std::size_t>(n_k), 0.0);
  detail::parallel_for(n_k, [&](int i) {
    const Sector& lo = sectors[2 * i];
    const Sector& mid = sectors[2 * i + 1];
    const Sector& hi = sectors[2 * i + 2];
    double row = 0.0;
    for (int j = 0; j < n_t; ++j) {
      const double tau = (j + 0.5) * dtau;
      const Vec3 n = field_at(mid, tau);
      const Vec3 dn_dk = (field_at(hi, tau) - field_at(lo, tau)) / dk;
      const Vec3 dn_dtau = (field_at(mid, tau + 0.5 * dtau) - field_at(mid, tau - 0.5 * dtau)) / dtau;
      row += n.dot(dn_dtau.cross(dn_dk));
    }
    row_sums[i] = row * dk * dtau;
  });
  return make_result(std::accumulate(row_sums.begin(), row_sums.end(), 0.0), ChernMethod::Riemann);
}

ChernResult chern_solid_angle(const Submanifold& sub, const QuenchSpec& spec, int n_k, int n_t) {
  require_grid(n_k, n_t);
  const double dk = (sub.k_n - sub.k_m) / n_k;
  const std::size_t cols = static_cast<std::size_t>(n_t) + 1;

  std::vector<Vec3> nodes((static_cast<std::size_t>(n_k) + 1) * cols);
  detail::parallel_for(n_k + 1, [&](int i) {
    const Sector s = make_sector(spec, sub.k_m + dk * i);
    for (int j = 0; j <= n_t; ++j) {
      // tau = 1 coincides with tau = 0 exactly by periodicity.
      nodes[i * cols + j] = field_at(s, j == n_t ? 0.0 : static_cast<double>(j) / n_t);
    }
  });

  auto check_edge = [](const Vec3& a, const Vec3& b) {
    if (1.0 + a.dot(b) < 1e-10) {
      throw DegenerateTriangle("antipodal neighbouring Bloch vectors; refine the grid");
    }
  };

  std::vector<double> row_sums(static_cast<std::size_t>(n_k), 0.0);
  detail::parallel_for(n_k, [&](int i) {
    double row = 0.0;
    for (int j = 0; j < n_t; ++j) {
      const Vec3& n00 = nodes[i * cols + j];
      const Vec3& n10 = nodes[(i + 1) * cols + j];
      const Vec3& n01 = nodes[i * cols + j + 1];
      const Vec3& n11 = nodes[(i + 1) * cols + j + 1];
      check_edge(n00, n01);
      check_edge(n01, n11);
      check_edge(n11, n10);
      check_edge(n10, n00);
      check_edge(n00, n11);
      // (tau, k) orientation, matching n . (d_t n x d_k n).
      row += spherical_triangle_area(n00, n01, n11) + spherical_triangle_area(n00, n11, n10);
    }
    row_sums[i] = row;
  });
  return make_result(std::accumulate(row_sums.begin(), row_sums.end(), 0.0),
                     ChernMethod::SolidAngle);
}

}  // namespace ptqw
