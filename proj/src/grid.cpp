#include "dampedwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dampedwave {

Grid1D::Grid1D(double half_length, std::size_t n_interior)
    : half_length_(half_length), n_(n_interior) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("grid half length must be positive and finite");
  }
  if (n_interior < 1) throw std::invalid_argument("grid needs at least one interior node");
  dx_ = 2.0 * half_length / static_cast<double>(n_interior + 1);
}

Grid1D Grid1D::from_spacing(double half_length, double dx) {
  if (!(dx > 0.0) || !(half_length > 0.0)) {
    throw std::invalid_argument("grid spacing and half length must be positive");
  }
  const double cells = std::round(2.0 * half_length / dx);
  if (cells < 2.0) throw std::invalid_argument("spacing too coarse for the interval");
  Grid1D g(half_length, static_cast<std::size_t>(cells) - 1);
  if (std::abs(g.dx() - dx) > 1e-9 * dx) {
    throw std::invalid_argument("dx = " + std::to_string(dx) + " does not divide 2L = " +
                                std::to_string(2.0 * half_length));
  }
  return g;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field& Field::operator+=(const Field& other) {
  if (other.size() != size()) throw LengthMismatch("field sizes differ");
  for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (other.size() != size()) throw LengthMismatch("field sizes differ");
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator-(Field a) { return a *= -1.0; }

void require_on_grid(const Field& v, const Grid1D& g) {
  if (v.size() != g.size()) {
    throw LengthMismatch("field of length " + std::to_string(v.size()) +
                         " on grid with " + std::to_string(g.size()) + " interior nodes");
  }
}

namespace {

void require_pair(const Field& a, const Field& b, const Grid1D& g) {
  require_on_grid(a, g);
  require_on_grid(b, g);
}

}  // namespace

Field laplacian(const Field& v, const Grid1D& g) {
  require_on_grid(v, g);
  const std::size_t n = g.size();
  const double inv_dx2 = 1.0 / (g.dx() * g.dx());
  Field w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? v[i - 1] : 0.0;
    const double right = i + 1 < n ? v[i + 1] : 0.0;
    w[i] = (left - 2.0 * v[i] + right) * inv_dx2;
  }
  return w;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs,
                                      double pivot_floor) {
  const std::size_t n = m.diag.size();
  if (m.lower.size() != n || m.upper.size() != n || rhs.size() != n) {
    throw LengthMismatch("tridiagonal bands and right-hand side differ in length");
  }
  std::vector<double> c(n), d(n);
  double pivot = m.diag[0];
  if (std::abs(pivot) < pivot_floor) throw std::domain_error("singular tridiagonal pivot");
  c[0] = m.upper[0] / pivot;
  d[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = m.diag[i] - m.lower[i] * c[i - 1];
    if (std::abs(pivot) < pivot_floor) throw std::domain_error("singular tridiagonal pivot");
    c[i] = m.upper[i] / pivot;
    d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

Tridiagonal shifted_stiffness(const Grid1D& g, std::span<const double> shift) {
  const std::size_t n = g.size();
  if (shift.size() != n) throw LengthMismatch("shift length differs from grid size");
  const double inv_dx2 = 1.0 / (g.dx() * g.dx());
  Tridiagonal m{std::vector<double>(n, -inv_dx2), std::vector<double>(n),
                std::vector<double>(n, -inv_dx2)};
  for (std::size_t i = 0; i < n; ++i) m.diag[i] = 2.0 * inv_dx2 + shift[i];
  return m;
}

Field inverse_laplacian(const Field& v, const Grid1D& g) {
  require_on_grid(v, g);
  const std::vector<double> zero(g.size(), 0.0);
  return Field(solve_tridiagonal(shifted_stiffness(g, zero), v.values()));
}

double l2_inner(const Field& a, const Field& b, const Grid1D& g) {
  require_pair(a, b, g);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * g.dx();
}

double l2_norm(const Field& v, const Grid1D& g) { return std::sqrt(l2_inner(v, v, g)); }

double h1_seminorm(const Field& v, const Grid1D& g) {
  require_on_grid(v, g);
  const std::size_t n = g.size();
  double s = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double cur = i < n ? v[i] : 0.0;
    const double d = cur - prev;
    s += d * d;
    prev = cur;
  }
  return std::sqrt(s / g.dx());
}

double hm1_inner(const Field& a, const Field& b, const Grid1D& g) {
  require_pair(a, b, g);
  return l2_inner(a, inverse_laplacian(b, g), g);
}

double hm1_norm(const Field& v, const Grid1D& g) {
  // Guard against tiny negative round-off for v close to zero.
  return std::sqrt(std::max(0.0, hm1_inner(v, v, g)));
}

double mode_eigenvalue(const Grid1D& g, std::size_t k) {
  if (k < 1 || k > g.size()) throw std::out_of_range("mode index outside 1..n_interior");
  const double dx = g.dx();
  const double angle = static_cast<double>(k) * std::numbers::pi * dx / (2.0 * g.half_length());
  // 1 - cos(a) = 2 sin^2(a/2) avoids cancellation for the low modes.
  const double s = std::sin(0.5 * angle);
  return 4.0 * s * s / (dx * dx);
}

double first_eigenvalue(const Grid1D& g) { return mode_eigenvalue(g, 1); }

Field discrete_mode(const Grid1D& g, std::size_t k) {
  if (k < 1 || k > g.size()) throw std::out_of_range("mode index outside 1..n_interior");
  const double wave = static_cast<double>(k) * std::numbers::pi / (2.0 * g.half_length());
  return sample(g, [&](double x) { return std::sin(wave * (x + g.half_length())); });
}

}  // namespace dampedwave
