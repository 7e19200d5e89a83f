#include "oll/grid.hpp"

#include <cmath>

namespace oll {

GridDomain::GridDomain(int n, std::vector<int> shape, double h, DomainKind kind)
    : n_(n), shape_(std::move(shape)), h_(h), kind_(kind) {
  if (n_ < 2) throw RangeError("GridDomain: dimension must be >= 2");
  if (static_cast<int>(shape_.size()) != n_)
    throw RangeError("GridDomain: shape length must equal dimension");
  if (h_ <= 0.0 || !std::isfinite(h_)) throw RangeError("GridDomain: mesh width must be positive");
  total_ = 1;
  for (int s : shape_) {
    if (s < 3) throw RangeError("GridDomain: need at least 3 cells per axis");
    total_ *= static_cast<std::size_t>(s);
  }
  strides_.assign(n_, 1);
  for (int d = n_ - 2; d >= 0; --d)
    strides_[d] = strides_[d + 1] * static_cast<std::size_t>(shape_[d + 1]);
}

std::shared_ptr<const GridDomain> GridDomain::box(int n, std::vector<int> shape, double h) {
  auto g = std::shared_ptr<GridDomain>(new GridDomain(n, std::move(shape), h, DomainKind::Box));
  g->classify();
  return g;
}

std::shared_ptr<const GridDomain> GridDomain::l_shaped(int n, std::vector<int> shape, double h) {
  auto g = std::shared_ptr<GridDomain>(new GridDomain(n, std::move(shape), h, DomainKind::LShaped));
  g->classify();
  return g;
}

bool GridDomain::in_array(const Index& idx) const {
  for (int d = 0; d < n_; ++d)
    if (idx[d] < 0 || idx[d] >= shape_[d]) return false;
  return true;
}

std::size_t GridDomain::linear(const Index& idx) const {
  std::size_t lin = 0;
  for (int d = 0; d < n_; ++d) lin += strides_[d] * static_cast<std::size_t>(idx[d]);
  return lin;
}

Index GridDomain::multi(std::size_t lin) const {
  Index idx(n_);
  for (int d = 0; d < n_; ++d) {
    idx[d] = static_cast<int>(lin / strides_[d]);
    lin %= strides_[d];
  }
  return idx;
}

Point GridDomain::cell_center(const Index& idx) const {
  Point x(n_);
  for (int d = 0; d < n_; ++d) x[d] = axis_origin(d) + (idx[d] + 0.5) * h_;
  return x;
}

Point GridDomain::cell_center(std::size_t lin) const { return cell_center(multi(lin)); }

double GridDomain::diameter() const {
  double s = 0.0;
  for (int d = 0; d < n_; ++d) {
    const double len = shape_[d] * h_;
    s += len * len;
  }
  return std::sqrt(s);
}

double GridDomain::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < n_; ++d) v *= h_;
  return v;
}

bool GridDomain::in_omega(const Index& idx) const {
  if (kind_ == DomainKind::Box) return true;
  // L-shape: drop cells whose centers lie in the open positive orthant.
  for (int d = 0; d < n_; ++d) {
    const double c = axis_origin(d) + (idx[d] + 0.5) * h_;
    if (c <= 0.0) return true;
  }
  return false;
}

void GridDomain::classify() {
  mask_.assign(total_, CellKind::Exterior);
  for (std::size_t lin = 0; lin < total_; ++lin) {
    Index idx = multi(lin);
    if (!in_omega(idx)) continue;
    bool rim = false;
    for (int d = 0; d < n_ && !rim; ++d) {
      for (int step : {-1, +1}) {
        Index nb = idx;
        nb[d] += step;
        if (!in_array(nb) || !in_omega(nb)) {
          rim = true;
          break;
        }
      }
    }
    mask_[lin] = rim ? CellKind::Boundary : CellKind::Interior;
  }
  interior_count_ = 0;
  for (auto k : mask_)
    if (k == CellKind::Interior) ++interior_count_;
}

bool GridDomain::same_layout(const GridDomain& other) const {
  return n_ == other.n_ && shape_ == other.shape_ && h_ == other.h_ && kind_ == other.kind_;
}

Region Region::whole(const DomainPtr& dom) {
  Region r;
  r.dom = dom;
  r.mask.assign(dom->cell_count(), 0);
  for (std::size_t i = 0; i < dom->cell_count(); ++i) {
    if (dom->cell_kind(i) == CellKind::Interior) {
      r.mask[i] = 1;
      ++r.count;
    }
  }
  return r;
}

Region Region::ball(const DomainPtr& dom, const Point& center, double rho) {
  if (rho <= 0.0) throw RangeError("Region::ball: radius must be positive");
  Region r;
  r.dom = dom;
  r.center = center;
  r.radius = rho;
  r.mask.assign(dom->cell_count(), 0);
  for (std::size_t i = 0; i < dom->cell_count(); ++i) {
    if (dom->cell_kind(i) != CellKind::Interior) continue;
    if (point_distance(dom->cell_center(i), center) < rho) {
      r.mask[i] = 1;
      ++r.count;
    }
  }
  return r;
}

double Region::volume() const { return static_cast<double>(count) * dom->cell_volume(); }

double point_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double t = a[d] - b[d];
    s += t * t;
  }
  return std::sqrt(s);
}

}  // namespace oll
