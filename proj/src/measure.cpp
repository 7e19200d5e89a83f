#include "oll/measure.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oll/calculus.hpp"

namespace oll {

MeasureData::MeasureData(DomainPtr dom, std::vector<Atom> atoms, std::optional<ScalarField> density)
    : dom_(std::move(dom)), atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const Atom& a : atoms_) {
    if (static_cast<int>(a.x.size()) != dom_->dim())
      throw RangeError("MeasureData: atom dimension mismatch");
    if (!std::isfinite(a.weight)) throw RangeError("MeasureData: atom weight must be finite");
  }
  if (density_ && !density_->grid().same_layout(*dom_))
    throw DomainMismatch("MeasureData: density on a different grid");
}

MeasureData MeasureData::dirac(DomainPtr dom, Point x, double weight) {
  return MeasureData(std::move(dom), {Atom{std::move(x), weight}});
}

double MeasureData::total_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += std::fabs(a.weight);
  if (density_) m += lp_integral(*density_, 1.0);
  return m;
}

double MeasureData::signed_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.weight;
  if (density_) m += integral(*density_);
  return m;
}

namespace {

double bump_kernel(double d, double r) {
  const double t = d / r;
  if (t >= 1.0) return 0.0;
  const double q = 1.0 - t * t;
  return q * q;
}

}  // namespace

ScalarField MeasureData::mollify(int k) const {
  if (k < 1) throw RangeError("mollify: level must be >= 1");
  const GridDomain& g = *dom_;
  ScalarField out = density_ ? *density_ : ScalarField(dom_);
  const double hn = g.cell_volume();
  const double r = std::max(g.diameter() / std::pow(2.0, k), 2.0 * g.spacing());
  for (const Atom& a : atoms_) {
    double ksum = 0.0;
    std::vector<std::pair<std::size_t, double>> hits;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
      if (g.cell_kind(i) != CellKind::Interior) continue;
      const double w = bump_kernel(point_distance(g.cell_center(i), a.x), r);
      if (w > 0.0) {
        hits.emplace_back(i, w);
        ksum += w;
      }
    }
    if (hits.empty()) {
      // Atom too far from any interior cell: drop the whole weight on the
      // nearest one so total mass stays exact.
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < g.cell_count(); ++i) {
        if (g.cell_kind(i) != CellKind::Interior) continue;
        const double d = point_distance(g.cell_center(i), a.x);
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      out[best] += a.weight / hn;
      continue;
    }
    for (auto& [i, w] : hits) out[i] += a.weight * (w / ksum) / hn;
  }
  return out;
}

ScalarField MeasureData::deposit_nearest() const {
  const GridDomain& g = *dom_;
  ScalarField out = density_ ? *density_ : ScalarField(dom_);
  const int n = g.dim();
  const double h = g.spacing();
  const double hn = g.cell_volume();
  for (const Atom& a : atoms_) {
    // Multilinear weights over the 2^n cells around the atom.
    std::vector<int> base(n);
    std::vector<double> frac(n);
    for (int d = 0; d < n; ++d) {
      const double s = (a.x[d] - g.axis_origin(d)) / h - 0.5;
      base[d] = static_cast<int>(std::floor(s));
      frac[d] = s - base[d];
    }
    std::vector<std::pair<std::size_t, double>> hits;
    double wsum = 0.0;
    for (int corner = 0; corner < (1 << n); ++corner) {
      Index idx(n);
      double w = 1.0;
      for (int d = 0; d < n; ++d) {
        const int up = (corner >> d) & 1;
        idx[d] = base[d] + up;
        w *= up ? frac[d] : 1.0 - frac[d];
      }
      if (w <= 0.0 || !g.in_array(idx)) continue;
      const std::size_t lin = g.linear(idx);
      if (g.cell_kind(lin) != CellKind::Interior) continue;
      hits.emplace_back(lin, w);
      wsum += w;
    }
    if (hits.empty()) continue;
    for (auto& [lin, w] : hits) out[lin] += a.weight * (w / wsum) / hn;
  }
  return out;
}

double MeasureData::mass_in_ball(const Point& center, double rho) const {
  double m = 0.0;
  for (const Atom& a : atoms_)
    if (point_distance(a.x, center) < rho) m += std::fabs(a.weight);
  if (density_) {
    const GridDomain& g = *dom_;
    for (std::size_t i = 0; i < g.cell_count(); ++i)
      if (g.cell_kind(i) == CellKind::Interior &&
          point_distance(g.cell_center(i), center) < rho)
        m += std::fabs((*density_)[i]) * g.cell_volume();
  }
  return m;
}

MeasureData MeasureData::scaled(double factor) const {
  MeasureData out(dom_);
  out.atoms_ = atoms_;
  for (Atom& a : out.atoms_) a.weight *= factor;
  if (density_) {
    ScalarField d = *density_;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= factor;
    out.density_ = std::move(d);
  }
  return out;
}

MeasureData MeasureData::on_domain(DomainPtr dom) const {
  if (density_) throw DomainMismatch("MeasureData::on_domain: cannot transfer a density");
  MeasureData out(std::move(dom));
  out.atoms_ = atoms_;
  return out;
}

void save_measure(const MeasureData& mu, const std::string& path,
                  const std::string& density_path) {
  std::ofstream out(path);
  if (!out) throw IOError("save_measure: cannot open " + path);
  char buf[64];
  for (const Atom& a : mu.atoms()) {
    out << "atom";
    for (double x : a.x) {
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out << " " << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", a.weight);
    out << " " << buf << "\n";
  }
  if (mu.density()) {
    if (density_path.empty()) throw IOError("save_measure: density present but no path given");
    save_field(*mu.density(), density_path);
    out << "density " << density_path << "\n";
  }
}

MeasureData load_measure(const DomainPtr& dom, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("load_measure: cannot open " + path);
  std::vector<Atom> atoms;
  std::optional<ScalarField> density;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "atom") {
      Atom a;
      a.x.resize(dom->dim());
      for (int d = 0; d < dom->dim(); ++d) ss >> a.x[d];
      ss >> a.weight;
      if (!ss) throw IOError("load_measure: bad atom line: " + line);
      atoms.push_back(std::move(a));
    } else if (tag == "density") {
      std::string p;
      ss >> p;
      density = load_field(p);
    } else {
      throw IOError("load_measure: unknown tag in line: " + line);
    }
  }
  return MeasureData(dom, std::move(atoms), std::move(density));
}

}  // namespace oll
