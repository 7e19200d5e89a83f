#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oll/errors.hpp"

namespace oll {

enum class CellKind : std::uint8_t { Exterior = 0, Boundary = 1, Interior = 2 };
enum class DomainKind { Box, LShaped };

using Index = std::vector<int>;
using Point = std::vector<double>;

// Uniform grid over a bounding box centered at the origin. Cells are
// classified interior / boundary / exterior; the boundary is the one-cell
// rim of the domain where Dirichlet values live. An L-shaped domain is the
// box with the open positive orthant removed.
class GridDomain {
 public:
  static std::shared_ptr<const GridDomain> box(int n, std::vector<int> shape, double h);
  static std::shared_ptr<const GridDomain> l_shaped(int n, std::vector<int> shape, double h);

  int dim() const { return n_; }
  double spacing() const { return h_; }
  DomainKind kind() const { return kind_; }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t cell_count() const { return total_; }

  CellKind cell_kind(std::size_t lin) const { return mask_[lin]; }
  const std::vector<CellKind>& mask() const { return mask_; }
  std::size_t interior_count() const { return interior_count_; }

  bool in_array(const Index& idx) const;
  std::size_t linear(const Index& idx) const;
  Index multi(std::size_t lin) const;
  Point cell_center(std::size_t lin) const;
  Point cell_center(const Index& idx) const;
  double axis_origin(int d) const { return -0.5 * h_ * shape_[d]; }

  // Continuum diameter of the bounding box; also the diameter of the
  // L-shaped cut (opposite corners with one nonpositive coordinate remain).
  double diameter() const;
  double cell_volume() const;

  std::string kind_name() const { return kind_ == DomainKind::Box ? "box" : "l-shaped"; }

  bool same_layout(const GridDomain& other) const;

 private:
  GridDomain(int n, std::vector<int> shape, double h, DomainKind kind);
  void classify();
  bool in_omega(const Index& idx) const;

  int n_;
  std::vector<int> shape_;
  double h_;
  DomainKind kind_;
  std::size_t total_;
  std::vector<std::size_t> strides_;
  std::vector<CellKind> mask_;
  std::size_t interior_count_ = 0;
};

using DomainPtr = std::shared_ptr<const GridDomain>;

// Measurable subset of the domain, stored as a mask over interior cells.
struct Region {
  DomainPtr dom;
  std::vector<std::uint8_t> mask;  // 1 on member cells (always interior)
  std::size_t count = 0;
  std::optional<Point> center;
  double radius = 0.0;

  static Region whole(const DomainPtr& dom);
  static Region ball(const DomainPtr& dom, const Point& center, double rho);

  double volume() const;
  bool contains(std::size_t lin) const { return mask[lin] != 0; }
};

double point_distance(const Point& a, const Point& b);

}  // namespace oll
