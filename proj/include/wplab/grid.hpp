#pragma once

#include <array>
#include <vector>

#include "wplab/errors.hpp"

namespace wplab {

/// Axis-aligned computational domain: an interval (a,b) or a rectangle
/// (ax,bx) x (ay,by), with a uniform node count per axis.
struct DomainSpec {
  enum class Kind { interval, rectangle };

  Kind kind = Kind::interval;
  double ax = 0.0, bx = 1.0;
  double ay = 0.0, by = 1.0;
  int nx = 0;  // nodes along x
  int ny = 0;  // nodes along y (rectangle only)

  static DomainSpec interval(double a, double b, int n) {
    DomainSpec s;
    s.kind = Kind::interval;
    s.ax = a;
    s.bx = b;
    s.nx = n;
    s.ny = 1;
    return s;
  }

  static DomainSpec rectangle(double ax, double bx, double ay, double by,
                              int nx, int ny) {
    DomainSpec s;
    s.kind = Kind::rectangle;
    s.ax = ax;
    s.bx = bx;
    s.ay = ay;
    s.by = by;
    s.nx = nx;
    s.ny = ny;
    return s;
  }

  DomainSpec with_resolution(int n) const {
    DomainSpec s = *this;
    s.nx = n;
    s.ny = (kind == Kind::rectangle) ? n : 1;
    return s;
  }
};

struct BoundaryNode {
  int node = -1;
  std::array<double, 2> normal{0.0, 0.0};  // outward unit axis vector
  bool corner = false;  // corners carry no normal and are skipped by
                        // boundary functionals
};

/// Uniform tensor grid with interior/boundary bookkeeping. Immutable after
/// construction.
class Grid {
 public:
  // Throws ConfigError for resolutions below the stencil minimum.
  static constexpr int kMinNodesPerAxis = 5;

  explicit Grid(const DomainSpec& spec);

  int dimension() const { return dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int num_nodes() const { return num_nodes_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double cell_volume() const { return dim_ == 1 ? hx_ : hx_ * hy_; }
  const DomainSpec& spec() const { return spec_; }

  int index(int i, int j = 0) const { return j * nx_ + i; }
  int ix(int node) const { return node % nx_; }
  int iy(int node) const { return node / nx_; }

  std::array<double, 2> coord(int node) const {
    return {spec_.ax + ix(node) * hx_,
            dim_ == 2 ? spec_.ay + iy(node) * hy_ : 0.0};
  }

  bool is_interior(int node) const { return interior_index_[node] >= 0; }
  bool is_boundary(int node) const { return interior_index_[node] < 0; }

  /// Distance (in layers) from the boundary along the nearest axis.
  int interior_depth(int node) const;

  /// Row index of an interior node in operator matrices; -1 on the boundary.
  int interior_index(int node) const { return interior_index_[node]; }

  const std::vector<int>& interior() const { return interior_; }
  const std::vector<BoundaryNode>& boundary() const { return boundary_; }

  /// Composite trapezoidal quadrature weight (no measure factor).
  double quad_weight(int node) const { return quad_weights_[node]; }

 private:
  DomainSpec spec_;
  int dim_ = 1;
  int nx_ = 0, ny_ = 1;
  int num_nodes_ = 0;
  double hx_ = 0.0, hy_ = 0.0;
  std::vector<int> interior_;
  std::vector<BoundaryNode> boundary_;
  std::vector<int> interior_index_;
  std::vector<double> quad_weights_;
};

Grid make_grid(const DomainSpec& spec);

}  // namespace wplab
