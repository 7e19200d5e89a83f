#include "oll/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace oll {

ScalarField::ScalarField(DomainPtr dom, double omega_value) : dom_(std::move(dom)) {
  values_.assign(dom_->cell_count(), 0.0);
  if (omega_value != 0.0) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (dom_->cell_kind(i) != CellKind::Exterior) values_[i] = omega_value;
  }
}

void ScalarField::fill(const std::function<double(const Point&)>& fn) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (dom_->cell_kind(i) != CellKind::Exterior) values_[i] = fn(dom_->cell_center(i));
}

void ScalarField::fill_interior(const std::function<double(const Point&)>& fn) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (dom_->cell_kind(i) == CellKind::Interior) values_[i] = fn(dom_->cell_center(i));
}

void ScalarField::zero_exterior() {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (dom_->cell_kind(i) == CellKind::Exterior) values_[i] = 0.0;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

bool ScalarField::same_domain(const ScalarField& other) const {
  return dom_ == other.dom_ || (dom_ && other.dom_ && dom_->same_layout(*other.dom_));
}

VectorField::VectorField(DomainPtr dom) : dom_(std::move(dom)), n_(dom_->dim()) {
  values_.assign(dom_->cell_count() * static_cast<std::size_t>(n_), 0.0);
}

double VectorField::magnitude(std::size_t lin) const {
  double s = 0.0;
  for (int d = 0; d < n_; ++d) {
    const double c = comp(lin, d);
    s += c * c;
  }
  return std::sqrt(s);
}

bool VectorField::same_domain(const VectorField& other) const {
  return dom_ == other.dom_ || (dom_ && other.dom_ && dom_->same_layout(*other.dom_));
}

void require_same_domain(const ScalarField& a, const ScalarField& b, const char* where) {
  if (!a.same_domain(b)) throw DomainMismatch(std::string(where) + ": fields on different grids");
}

void save_field(const ScalarField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOError("save_field: cannot open " + path);
  const GridDomain& g = f.grid();
  out << "field n=" << g.dim() << " shape=";
  for (int d = 0; d < g.dim(); ++d) out << (d ? "," : "") << g.shape()[d];
  out << " h=";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", g.spacing());
  out << buf << " kind=" << g.kind_name() << "\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", f[i]);
    out << buf << "\n";
  }
  if (!out) throw IOError("save_field: write failed for " + path);
}

namespace {

std::string header_value(const std::string& header, const std::string& key) {
  const std::string tag = key + "=";
  auto pos = header.find(tag);
  if (pos == std::string::npos) throw IOError("load_field: missing key " + key);
  pos += tag.size();
  auto end = header.find(' ', pos);
  return header.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

}  // namespace

ScalarField load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("load_field: cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header.rfind("field ", 0) != 0) throw IOError("load_field: bad header in " + path);
  const int n = std::stoi(header_value(header, "n"));
  std::vector<int> shape;
  {
    std::stringstream ss(header_value(header, "shape"));
    std::string tok;
    while (std::getline(ss, tok, ',')) shape.push_back(std::stoi(tok));
  }
  const double h = std::stod(header_value(header, "h"));
  const std::string kind = header_value(header, "kind");
  DomainPtr dom = (kind == "box") ? GridDomain::box(n, shape, h) : GridDomain::l_shaped(n, shape, h);
  ScalarField f(dom);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(in >> f[i])) throw IOError("load_field: truncated values in " + path);
  }
  f.zero_exterior();
  return f;
}

}  // namespace oll
