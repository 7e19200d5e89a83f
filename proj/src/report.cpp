#include "oll/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace oll {

std::string format_17g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string report_to_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["name"] = rep.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  j["parameters"] = params;
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const auto& s : rep.samples) {
    nlohmann::ordered_json row;
    row["label"] = s.label;
    row["lhs"] = s.lhs;
    row["rhs"] = s.rhs;
    row["ratio"] = s.ratio;
    row["flagged"] = s.flagged;
    samples.push_back(row);
  }
  j["samples"] = samples;
  if (!rep.table.empty()) {
    j["table_header"] = rep.table_header;
    j["table"] = rep.table;
  }
  j["min_constant"] = rep.min_constant;
  if (std::isnan(rep.stability_ratio))
    j["stability_ratio"] = nullptr;
  else
    j["stability_ratio"] = rep.stability_ratio;
  j["passed"] = rep.passed;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

std::string reports_index_csv(const std::vector<VerificationReport>& reps) {
  std::ostringstream out;
  out << "name,min_constant,stability_ratio,passed,notes\n";
  for (const auto& r : reps) {
    out << csv_quote(r.name) << "," << format_17g(r.min_constant) << ",";
    out << (std::isnan(r.stability_ratio) ? std::string("") : format_17g(r.stability_ratio));
    out << "," << (r.passed ? "1" : "0") << "," << csv_quote(r.notes) << "\n";
  }
  return out.str();
}

std::string report_table_csv(const VerificationReport& rep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rep.table_header.size(); ++i)
    out << (i ? "," : "") << csv_quote(rep.table_header[i]);
  out << "\n";
  for (const auto& row : rep.table) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_17g(row[i]);
    out << "\n";
  }
  return out.str();
}

namespace {

struct PlotBox {
  double xmin, xmax, ymin, ymax;
};

double map_coord(double v, double lo, double hi, double a, double b) {
  if (hi <= lo) return 0.5 * (a + b);
  return a + (v - lo) / (hi - lo) * (b - a);
}

}  // namespace

std::string svg_loglog(const std::string& title, const std::string& xlabel,
                       const std::vector<double>& xs,
                       const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const int W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
  PlotBox box{1e300, -1e300, 1e300, -1e300};
  for (double x : xs)
    if (x > 0.0) {
      box.xmin = std::min(box.xmin, std::log10(x));
      box.xmax = std::max(box.xmax, std::log10(x));
    }
  for (const auto& [nm, ys] : series)
    for (double y : ys)
      if (y > 0.0) {
        box.ymin = std::min(box.ymin, std::log10(y));
        box.ymax = std::max(box.ymax, std::log10(y));
      }
  if (box.xmin > box.xmax) box = {0, 1, 0, 1};
  if (box.ymin > box.ymax) {
    box.ymin = 0;
    box.ymax = 1;
  }
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << " (log10)</text>\n";
  out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR << "\" height=\""
      << H - MT - MB << "\" fill=\"none\" stroke=\"black\"/>\n";
  int si = 0;
  for (const auto& [nm, ys] : series) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
      if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
      const double px = map_coord(std::log10(xs[i]), box.xmin, box.xmax, ML, W - MR);
      const double py = map_coord(std::log10(ys[i]), box.ymin, box.ymax, H - MB, MT);
      char b[64];
      std::snprintf(b, sizeof(b), "%.2f,%.2f ", px, py);
      pts << b;
    }
    const char* color = colors[si % 6];
    out << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << W - MR - 8 << "\" y=\"" << MT + 16 + 16 * si
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << nm
        << "</text>\n";
    ++si;
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::string> emit_report(const std::vector<VerificationReport>& reps,
                                     const EmitOptions& opt) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  fs::create_directories(opt.outdir);
  auto write = [&](const std::string& name, const std::string& bytes) {
    const std::string path = (fs::path(opt.outdir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("emit_report: cannot open " + path);
    out << bytes;
    written.push_back(path);
  };

  if (opt.csv) {
    write("index.csv", reports_index_csv(reps));
    for (const auto& r : reps)
      if (!r.table.empty()) write(r.name + ".csv", report_table_csv(r));
  }
  if (opt.json) {
    for (const auto& r : reps) write(r.name + ".json", report_to_json(r));
  }
  if (opt.svg) {
    for (const auto& r : reps) {
      if (r.table.empty() || r.table_header.size() < 2) continue;
      std::vector<double> xs;
      std::vector<std::pair<std::string, std::vector<double>>> series(r.table_header.size() - 1);
      for (std::size_t c = 1; c < r.table_header.size(); ++c)
        series[c - 1].first = r.table_header[c];
      for (const auto& row : r.table) {
        xs.push_back(row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) series[c - 1].second.push_back(row[c]);
      }
      write(r.name + ".svg", svg_loglog(r.name, r.table_header[0], xs, series));
    }
  }
  return written;
}

}  // namespace oll
