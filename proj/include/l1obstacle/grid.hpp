// Uniform node grids in one and two dimensions, scalar fields sampled on
// them, and the finite-difference operators shared by every solver.
//
// Conventions
//   * Nodes are x_j = lo + j * h with a single spacing h on every axis.
//   * Flat storage is row-major in axis order: k = i * n1 + j for (x_i, y_j).
//   * The discrete gradient is the forward difference. Energies are summed
//     over "anchored" nodes, i.e. nodes whose forward neighbours all exist,
//     so that for fixed boundary values the first variation of
//       E(u) = h^d * sum_anchored 1/2 |grad_h u|^2
//     is exactly h^d * (-Delta_h u) at interior nodes (5-point Laplacian).
#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1obstacle {

/// Thrown when two grid objects that must agree do not.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridSpec {
 public:
  GridSpec() = default;

  /// 1D grid on [lo, hi] with n nodes.
  static GridSpec line(double lo, double hi, int n) {
    return GridSpec(1, {lo, 0.0}, {hi, 0.0}, {n, 1});
  }

  /// 2D grid on [lo, hi]^2 with n nodes per axis.
  static GridSpec square(double lo, double hi, int n) {
    return GridSpec(2, {lo, lo}, {hi, hi}, {n, n});
  }

  /// 2D grid on a rectangle; the spacing must be the same on both axes.
  static GridSpec rectangle(std::array<double, 2> lo, std::array<double, 2> hi,
                            std::array<int, 2> n) {
    return GridSpec(2, lo, hi, n);
  }

  int dim() const { return dim_; }
  int n(int axis) const { return n_[axis]; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double h() const { return h_; }
  /// h^d, the volume attached to one node.
  double cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

  Eigen::Index size() const {
    return static_cast<Eigen::Index>(n_[0]) * static_cast<Eigen::Index>(n_[1]);
  }

  double coord(int axis, int j) const { return lo_[axis] + j * h_; }

  Eigen::Index index(int i, int j = 0) const {
    return static_cast<Eigen::Index>(i) * n_[1] + j;
  }

  std::array<int, 2> multi_index(Eigen::Index k) const {
    return {static_cast<int>(k / n_[1]), static_cast<int>(k % n_[1])};
  }

  bool is_boundary(int i, int j = 0) const {
    if (i == 0 || i == n_[0] - 1) return true;
    return dim_ == 2 && (j == 0 || j == n_[1] - 1);
  }

  bool is_boundary_index(Eigen::Index k) const {
    const auto [i, j] = multi_index(k);
    return is_boundary(i, j);
  }

  /// Number of boundary nodes.
  Eigen::Index boundary_count() const {
    if (dim_ == 1) return 2;
    return size() - static_cast<Eigen::Index>(n_[0] - 2) * (n_[1] - 2);
  }

  bool operator==(const GridSpec& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && lo_ == o.lo_ && hi_ == o.hi_;
  }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  GridSpec(int dim, std::array<double, 2> lo, std::array<double, 2> hi,
           std::array<int, 2> n)
      : dim_(dim), n_(n), lo_(lo), hi_(hi) {
    for (int a = 0; a < dim_; ++a) {
      if (n_[a] < 3) throw std::invalid_argument("GridSpec: need at least 3 nodes per axis");
      if (!(hi_[a] > lo_[a])) throw std::invalid_argument("GridSpec: empty extent");
    }
    h_ = (hi_[0] - lo_[0]) / (n_[0] - 1);
    if (dim_ == 2) {
      const double h1 = (hi_[1] - lo_[1]) / (n_[1] - 1);
      if (std::abs(h1 - h_) > 1e-12 * h_)
        throw std::invalid_argument("GridSpec: anisotropic spacing is not supported");
    }
  }

  int dim_ = 1;
  std::array<int, 2> n_{3, 1};
  std::array<double, 2> lo_{0.0, 0.0};
  std::array<double, 2> hi_{1.0, 0.0};
  double h_ = 0.5;
};

inline std::string GridSpec::describe() const {
  std::string s = std::to_string(dim_) + "D n=" + std::to_string(n_[0]);
  if (dim_ == 2) s += "x" + std::to_string(n_[1]);
  return s + " h=" + std::to_string(h_);
}

/// Scalar field sampled at the nodes of a GridSpec.
template <typename Scalar>
class GridField {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  GridField() = default;
  explicit GridField(const GridSpec& spec, Scalar fill = Scalar(0))
      : spec_(spec), values_(Vector::Constant(spec.size(), fill)) {}
  GridField(const GridSpec& spec, Vector values) : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) throw SpecMismatch("GridField: value count does not match grid");
  }

  /// Samples f(x, y) at every node; y is 0 on 1D grids.
  template <typename F>
  static GridField sample(const GridSpec& spec, F&& f) {
    GridField out(spec);
    for (int i = 0; i < spec.n(0); ++i)
      for (int j = 0; j < spec.n(1); ++j)
        out.values_[spec.index(i, j)] =
            static_cast<Scalar>(f(spec.coord(0, i), spec.dim() == 2 ? spec.coord(1, j) : 0.0));
    return out;
  }

  const GridSpec& spec() const { return spec_; }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  Scalar& operator()(int i, int j = 0) { return values_[spec_.index(i, j)]; }
  Scalar operator()(int i, int j = 0) const { return values_[spec_.index(i, j)]; }
  Scalar& operator[](Eigen::Index k) { return values_[k]; }
  Scalar operator[](Eigen::Index k) const { return values_[k]; }

  bool all_finite() const { return values_.allFinite(); }

 private:
  GridSpec spec_;
  Vector values_;
};

using GridFunction = GridField<double>;

inline void require_same_spec(const GridSpec& a, const GridSpec& b, const char* what) {
  if (a != b) throw SpecMismatch(std::string(what) + ": grid mismatch (" + a.describe() + " vs " + b.describe() + ")");
}

/// Fixed values on the boundary nodes of a grid. Interior entries of the
/// backing field are ignored.
template <typename Scalar>
class DirichletBC {
 public:
  DirichletBC() = default;
  explicit DirichletBC(GridField<Scalar> values) : values_(std::move(values)) {
    const auto& s = values_.spec();
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (!s.is_boundary_index(k)) values_[k] = Scalar(0);
  }

  static DirichletBC constant(const GridSpec& spec, Scalar c) {
    return DirichletBC(GridField<Scalar>(spec, c));
  }
  template <typename F>
  static DirichletBC from_function(const GridSpec& spec, F&& g) {
    return DirichletBC(GridField<Scalar>::sample(spec, std::forward<F>(g)));
  }

  const GridSpec& spec() const { return values_.spec(); }
  /// Field holding g on the boundary and 0 elsewhere.
  const GridField<Scalar>& values() const { return values_; }
  Scalar value(int i, int j = 0) const { return values_(i, j); }

  /// Overwrites the boundary nodes of u with g. Idempotent.
  void apply(GridField<Scalar>& u) const {
    require_same_spec(u.spec(), spec(), "DirichletBC::apply");
    const auto& s = spec();
    if (s.dim() == 1) {
      u[0] = values_[0];
      u[s.n(0) - 1] = values_[s.n(0) - 1];
      return;
    }
    const int n0 = s.n(0), n1 = s.n(1);
    for (int i = 0; i < n0; ++i) {
      u(i, 0) = values_(i, 0);
      u(i, n1 - 1) = values_(i, n1 - 1);
    }
    for (int j = 0; j < n1; ++j) {
      u(0, j) = values_(0, j);
      u(n0 - 1, j) = values_(n0 - 1, j);
    }
  }

 private:
  GridField<Scalar> values_;
};

using DirichletBc = DirichletBC<double>;

/// Forward-difference gradient, one component per axis. On the high face of
/// each axis the backward difference is copied so the field is total.
template <typename Scalar>
std::vector<GridField<Scalar>> gradient_forward(const GridField<Scalar>& u) {
  const auto& s = u.spec();
  const Scalar inv_h = Scalar(1) / Scalar(s.h());
  std::vector<GridField<Scalar>> g(s.dim(), GridField<Scalar>(s));
  const int n0 = s.n(0), n1 = s.n(1);
  for (int i = 0; i < n0; ++i) {
    const int ip = i + 1 < n0 ? i + 1 : i;
    const int im = i + 1 < n0 ? i : i - 1;
    for (int j = 0; j < n1; ++j) g[0](i, j) = (u(ip, j) - u(im, j)) * inv_h;
  }
  if (s.dim() == 2) {
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j) {
        const int jp = j + 1 < n1 ? j + 1 : j;
        const int jm = j + 1 < n1 ? j : j - 1;
        g[1](i, j) = (u(i, jp) - u(i, jm)) * inv_h;
      }
  }
  return g;
}

/// (2d+1)-point Laplacian at interior nodes; boundary neighbours take their
/// values from bc. Boundary entries of the result are 0.
template <typename Scalar>
GridField<Scalar> laplacian(const GridField<Scalar>& u, const DirichletBC<Scalar>& bc) {
  require_same_spec(u.spec(), bc.spec(), "laplacian");
  const auto& s = u.spec();
  const Scalar inv_h2 = Scalar(1) / Scalar(s.h() * s.h());
  const auto& g = bc.values();
  auto at = [&](int i, int j) { return s.is_boundary(i, j) ? g(i, j) : u(i, j); };
  GridField<Scalar> out(s);
  if (s.dim() == 1) {
    for (int i = 1; i + 1 < s.n(0); ++i)
      out(i) = (at(i + 1, 0) - Scalar(2) * u(i) + at(i - 1, 0)) * inv_h2;
    return out;
  }
  for (int i = 1; i + 1 < s.n(0); ++i)
    for (int j = 1; j + 1 < s.n(1); ++j)
      out(i, j) = (at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - Scalar(4) * u(i, j)) * inv_h2;
  return out;
}

/// Laplacian using u's own boundary values as the Dirichlet data.
template <typename Scalar>
GridField<Scalar> laplacian(const GridField<Scalar>& u) {
  return laplacian(u, DirichletBC<Scalar>(u));
}

/// Calls f(k, grad) for every anchored node k, i.e. every node whose forward
/// neighbours exist on all axes. grad holds the forward differences.
template <typename Scalar, typename F>
void for_each_anchored_gradient(const GridField<Scalar>& u, F&& f) {
  const auto& s = u.spec();
  const Scalar inv_h = Scalar(1) / Scalar(s.h());
  if (s.dim() == 1) {
    for (int i = 0; i + 1 < s.n(0); ++i) {
      const std::array<Scalar, 2> grad{(u(i + 1) - u(i)) * inv_h, Scalar(0)};
      f(s.index(i), grad);
    }
    return;
  }
  for (int i = 0; i + 1 < s.n(0); ++i)
    for (int j = 0; j + 1 < s.n(1); ++j) {
      const Scalar c = u(i, j);
      const std::array<Scalar, 2> grad{(u(i + 1, j) - c) * inv_h, (u(i, j + 1) - c) * inv_h};
      f(s.index(i, j), grad);
    }
}

/// h^d * sum over anchored nodes of 1/2 |grad_h u|^2.
template <typename Scalar>
Scalar dirichlet_energy(const GridField<Scalar>& u) {
  Scalar sum(0);
  for_each_anchored_gradient(u, [&](Eigen::Index, const std::array<Scalar, 2>& g) {
    sum += Scalar(0.5) * (g[0] * g[0] + g[1] * g[1]);
  });
  return sum * Scalar(u.spec().cell_volume());
}

/// Max-norm distance between two fields on the same grid.
template <typename Scalar>
Scalar linf_diff(const GridField<Scalar>& a, const GridField<Scalar>& b) {
  require_same_spec(a.spec(), b.spec(), "linf_diff");
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

/// Mask with 1 on interior nodes and 0 on the boundary.
inline GridFunction interior_mask(const GridSpec& s) {
  GridFunction m(s, 1.0);
  DirichletBc::constant(s, 0.0).apply(m);
  return m;
}

}  // namespace l1obstacle
