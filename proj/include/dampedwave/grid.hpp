#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dampedwave {

/// Thrown when two discrete objects disagree in size.
class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform mesh on (-L, L) with homogeneous Dirichlet boundaries.
///
/// Only interior nodes carry unknowns. Node i (1-based) sits at
/// x_i = -L + i*dx, and the two boundary nodes x_0 = -L, x_{n+1} = L
/// are implicitly zero.
class Grid1D {
 public:
  Grid1D(double half_length, std::size_t n_interior);

  /// Builds the grid from a requested spacing. The node count is rounded to
  /// the nearest integer and rejected if the implied spacing differs from the
  /// request by more than 1e-9 relative.
  static Grid1D from_spacing(double half_length, double dx);

  double half_length() const { return half_length_; }
  std::size_t size() const { return n_; }
  double dx() const { return dx_; }

  /// Coordinate of interior node i, 0-based (i = 0 is the first interior node).
  double x(std::size_t i) const { return -half_length_ + static_cast<double>(i + 1) * dx_; }

  bool operator==(const Grid1D&) const = default;

 private:
  double half_length_;
  std::size_t n_;
  double dx_;
};

/// Nodal values at the interior nodes of a Grid1D.
class Field {
 public:
  Field() = default;
  explicit Field(std::size_t n, double value = 0.0) : values_(n, value) {}
  explicit Field(std::vector<double> values) : values_(std::move(values)) {}

  static Field zeros(const Grid1D& g) { return Field(g.size()); }

  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool all_finite() const;
  double max_abs() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

  bool operator==(const Field&) const = default;

 private:
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator-(Field a);

/// Samples a callable at the interior nodes.
template <typename Fn>
Field sample(const Grid1D& g, Fn&& fn) {
  Field out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = fn(g.x(i));
  return out;
}

/// Throws LengthMismatch unless v lives on g.
void require_on_grid(const Field& v, const Grid1D& g);

/// Three-point Laplacian (v_{i-1} - 2 v_i + v_{i+1}) / dx^2 with zero boundary values.
Field laplacian(const Field& v, const Grid1D& g);

/// Solves -laplacian(w) = v.
Field inverse_laplacian(const Field& v, const Grid1D& g);

double l2_inner(const Field& a, const Field& b, const Grid1D& g);
double l2_norm(const Field& v, const Grid1D& g);

/// Forward-difference gradient norm including both boundary gaps, so that
/// h1_seminorm(v)^2 = dx * v^T (-Delta_h) v.
double h1_seminorm(const Field& v, const Grid1D& g);

/// <a, (-Delta_h)^{-1} b> in the discrete L2 pairing.
double hm1_inner(const Field& a, const Field& b, const Grid1D& g);
double hm1_norm(const Field& v, const Grid1D& g);

/// Eigenvalue of -Delta_h for mode k >= 1: (2/dx^2)(1 - cos(k pi dx / 2L)).
double mode_eigenvalue(const Grid1D& g, std::size_t k);
double first_eigenvalue(const Grid1D& g);

/// Discrete eigenvector e_k with entries sin(k pi (x_i + L) / 2L).
Field discrete_mode(const Grid1D& g, std::size_t k);

/// Symmetric-or-not tridiagonal system with constant off-diagonals replaced
/// by explicit bands. lower[0] and upper[n-1] are ignored.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
};

/// Thomas elimination without pivoting. Throws std::domain_error when a pivot
/// drops below pivot_floor in magnitude.
std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs,
                                      double pivot_floor = 1e-14);

/// Tridiagonal matrix of -Delta_h + diag(shift).
Tridiagonal shifted_stiffness(const Grid1D& g, std::span<const double> shift);

}  // namespace dampedwave
