#include "oll/exponents.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace oll {

double ExponentConfig::scaling_identity_lhs() const {
  return (n - (beta - 1.0) * gamma / (p - 1.0)) * n / (n - alpha);
}

ExponentConfig derive_exponents(int n, double p, double gamma, double alpha,
                                std::optional<double> upsilon, double r0, double delta,
                                std::optional<double> a, double epsilon) {
  if (n < 2) throw RangeError("derive_exponents: dimension must be >= 2");
  if (!std::isfinite(p) || !std::isfinite(gamma) || !std::isfinite(alpha))
    throw RangeError("derive_exponents: inputs must be finite");
  const double cap = ExponentConfig::p_cap(n);
  if (!(p > 1.0 && p <= cap)) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "derive_exponents: p=%.17g outside (1, %.17g]", p, cap);
    throw RangeError(buf);
  }

  ExponentConfig c;
  c.n = n;
  c.p = p;
  c.gamma = gamma;
  c.alpha = alpha;

  const double thr = ExponentConfig::chi_threshold(n);
  c.chi1 = p > thr ? 1 : 0;
  c.chi2 = 1 - c.chi1;
  c.gamma1 = c.chi1 * (2.0 - p);
  c.gamma2 = std::min(n * p / (3.0 * n - 2.0), (p - 1.0) * n / (n - 1.0));
  // Endpoints are rejected: the admissible range is the open interval.
  if (!(gamma > c.gamma1 && gamma < c.gamma2)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "derive_exponents: gamma=%.17g outside (%.17g, %.17g)", gamma, c.gamma1,
                  c.gamma2);
    throw RangeError(buf);
  }

  if (alpha < 0.0 || alpha >= n) throw RangeError("derive_exponents: alpha outside [0, n)");
  c.beta = 1.0 + (p - 1.0) * alpha / gamma;
  c.sigma = (2.0 - p) * alpha / gamma;
  if (c.beta < 0.0 || c.beta >= n) throw RangeError("derive_exponents: beta outside [0, n)");
  if (c.sigma < 0.0 || c.sigma >= n) throw RangeError("derive_exponents: sigma outside [0, n)");

  c.p_tilde = std::min(n / (2.0 * (n - 1.0)), (p - 1.0) * n / (n - p));

  // Sharp monotonicity constant of the singular p-Laplacian is p-1, so the
  // default ellipticity constant covers both growth and monotonicity bounds.
  c.upsilon = upsilon.value_or(std::max(1.0, 1.0 / (p - 1.0)));
  if (!(c.upsilon > 0.0)) throw RangeError("derive_exponents: upsilon must be positive");
  if (!(r0 > 0.0)) throw RangeError("derive_exponents: r0 must be positive");
  if (!(delta > 0.0 && delta < 0.5)) throw RangeError("derive_exponents: delta outside (0, 1/2)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw RangeError("derive_exponents: epsilon outside (0, 1)");
  c.r0 = r0;
  c.delta = delta;
  c.epsilon = epsilon;
  // Dilation factor for the level-set inequality; anything above 3^{n-alpha}
  // is admissible, the default keeps a 10% margin.
  c.a = a.value_or(1.1 * std::pow(3.0, n - alpha));
  if (!(c.a > 0.0)) throw RangeError("derive_exponents: a must be positive");
  return c;
}

std::string ExponentConfig::to_kv_text() const {
  std::ostringstream out;
  char buf[64];
  auto emit = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << key << " = " << buf << "\n";
  };
  out << "n = " << n << "\n";
  emit("p", p);
  emit("gamma", gamma);
  emit("alpha", alpha);
  emit("upsilon", upsilon);
  emit("r0", r0);
  emit("delta", delta);
  emit("a", a);
  emit("epsilon", epsilon);
  return out.str();
}

ExponentConfig ExponentConfig::from_kv_text(const std::string& text) {
  std::map<std::string, double> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("ExponentConfig: bad line: " + line);
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    kv[key] = std::stod(line.substr(eq + 1));
  }
  for (const char* req : {"n", "p", "gamma", "alpha"})
    if (!kv.count(req)) throw ConfigError(std::string("ExponentConfig: missing key ") + req);
  auto opt = [&](const char* key, double dflt) { return kv.count(key) ? kv[key] : dflt; };
  std::optional<double> ups, a;
  if (kv.count("upsilon")) ups = kv["upsilon"];
  if (kv.count("a")) a = kv["a"];
  return derive_exponents(static_cast<int>(kv["n"]), kv["p"], kv["gamma"], kv["alpha"], ups,
                          opt("r0", 1.0), opt("delta", 0.05), a, opt("epsilon", 0.1));
}

}  // namespace oll
