#include "wplab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace wplab {

Grid::Grid(const DomainSpec& spec) : spec_(spec) {
  dim_ = spec.kind == DomainSpec::Kind::interval ? 1 : 2;
  nx_ = spec.nx;
  ny_ = dim_ == 2 ? spec.ny : 1;

  if (nx_ < kMinNodesPerAxis || (dim_ == 2 && ny_ < kMinNodesPerAxis)) {
    throw ConfigError("grid resolution below minimum of " +
                      std::to_string(kMinNodesPerAxis) + " nodes per axis");
  }
  if (!(spec.ax < spec.bx) || (dim_ == 2 && !(spec.ay < spec.by))) {
    throw ConfigError("domain bounds must satisfy a < b on each axis");
  }

  num_nodes_ = nx_ * ny_;
  hx_ = (spec.bx - spec.ax) / (nx_ - 1);
  hy_ = dim_ == 2 ? (spec.by - spec.ay) / (ny_ - 1) : 1.0;

  interior_index_.assign(num_nodes_, -1);
  quad_weights_.resize(num_nodes_);

  auto axis_weight = [](int i, int n, double h) {
    return (i == 0 || i == n - 1) ? 0.5 * h : h;
  };

  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const int node = index(i, j);
      const bool bx = (i == 0 || i == nx_ - 1);
      const bool by = dim_ == 2 && (j == 0 || j == ny_ - 1);
      quad_weights_[node] =
          axis_weight(i, nx_, hx_) *
          (dim_ == 2 ? axis_weight(j, ny_, hy_) : 1.0);
      if (!bx && !by) {
        interior_index_[node] = static_cast<int>(interior_.size());
        interior_.push_back(node);
      } else {
        BoundaryNode b;
        b.node = node;
        b.corner = bx && by;
        if (!b.corner) {
          if (i == 0) b.normal = {-1.0, 0.0};
          else if (i == nx_ - 1) b.normal = {1.0, 0.0};
          else if (j == 0) b.normal = {0.0, -1.0};
          else b.normal = {0.0, 1.0};
        }
        boundary_.push_back(b);
      }
    }
  }
}

int Grid::interior_depth(int node) const {
  const int i = ix(node);
  const int j = iy(node);
  int d = std::min(i, nx_ - 1 - i);
  if (dim_ == 2) d = std::min(d, std::min(j, ny_ - 1 - j));
  return d;
}

Grid make_grid(const DomainSpec& spec) { return Grid(spec); }

}  // namespace wplab
