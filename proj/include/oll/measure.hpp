#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oll/field.hpp"

namespace oll {

struct Atom {
  Point x;
  double weight = 0.0;
};

// Bounded measure on the domain: point atoms plus an optional absolutely
// continuous density. Atoms are mollified into normalized bumps before they
// ever reach the solver.
class MeasureData {
 public:
  MeasureData() = default;
  explicit MeasureData(DomainPtr dom) : dom_(std::move(dom)) {}
  MeasureData(DomainPtr dom, std::vector<Atom> atoms, std::optional<ScalarField> density = {});

  static MeasureData dirac(DomainPtr dom, Point x, double weight = 1.0);
  static MeasureData zero(DomainPtr dom) { return MeasureData(std::move(dom)); }

  const DomainPtr& domain_ptr() const { return dom_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<ScalarField>& density() const { return density_; }
  bool atoms_empty() const { return atoms_.empty(); }

  double total_mass() const;   // total variation |mu|(Omega)
  double signed_mass() const;  // mu(Omega)

  // Level-k approximant: each atom becomes a normalized bump of radius
  // max(diam/2^k, 2h) deposited on interior cells; the density passes
  // through unchanged. Per-atom mass is preserved exactly by discrete
  // normalization.
  ScalarField mollify(int k) const;

  // Mass-conservative splitting of atoms onto the <= 2^n nearest interior
  // cells (multilinear weights), plus the density.
  ScalarField deposit_nearest() const;

  // |mu|(B_rho(center)) from atoms and density directly.
  double mass_in_ball(const Point& center, double rho) const;

  MeasureData scaled(double factor) const;
  MeasureData on_domain(DomainPtr dom) const;  // same atoms, new grid

 private:
  DomainPtr dom_;
  std::vector<Atom> atoms_;
  std::optional<ScalarField> density_;
};

// Line-oriented persistence: "atom x1 ... xn weight" per atom and an
// optional "density <path>" reference.
void save_measure(const MeasureData& mu, const std::string& path,
                  const std::string& density_path = "");
MeasureData load_measure(const DomainPtr& dom, const std::string& path);

}  // namespace oll
