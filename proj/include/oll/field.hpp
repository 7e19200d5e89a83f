#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "oll/grid.hpp"

namespace oll {

// Cell values over the bounding-box array, zero on exterior cells. Values on
// boundary cells are allowed (Dirichlet data, obstacle values, coefficients).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(DomainPtr dom, double omega_value = 0.0);

  const GridDomain& grid() const { return *dom_; }
  const DomainPtr& domain_ptr() const { return dom_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // Applies fn(cell center) on interior+boundary cells; exterior stays zero.
  void fill(const std::function<double(const Point&)>& fn);
  void fill_interior(const std::function<double(const Point&)>& fn);

  void zero_exterior();
  double max_abs() const;
  bool same_domain(const ScalarField& other) const;

 private:
  DomainPtr dom_;
  std::vector<double> values_;
};

// One value per cell and axis; component d at cell i lives on the face
// between i and i+e_d (forward staggering).
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(DomainPtr dom);

  const GridDomain& grid() const { return *dom_; }
  const DomainPtr& domain_ptr() const { return dom_; }

  double comp(std::size_t lin, int d) const { return values_[lin * n_ + d]; }
  double& comp(std::size_t lin, int d) { return values_[lin * n_ + d]; }
  int comps() const { return n_; }
  std::size_t cells() const { return values_.size() / n_; }

  double magnitude(std::size_t lin) const;
  bool same_domain(const VectorField& other) const;

 private:
  DomainPtr dom_;
  int n_ = 0;
  std::vector<double> values_;
};

void require_same_domain(const ScalarField& a, const ScalarField& b, const char* where);

// Text persistence: header line "field n=? shape=a,b h=? kind=?" followed by
// row-major values at 17 significant digits, one per line.
void save_field(const ScalarField& f, const std::string& path);
ScalarField load_field(const std::string& path);

}  // namespace oll
