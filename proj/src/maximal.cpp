#include "oll/maximal.hpp"

#include <cmath>
#include <cstdint>

#include "oll/calculus.hpp"
#include "oll/lorentz.hpp"
#include "oll/parallel.hpp"

namespace oll {

RadiusLadder RadiusLadder::multiples_of_h(const GridDomain& grid, double cap_factor) {
  RadiusLadder l;
  l.h = grid.spacing();
  const int jmax = static_cast<int>(std::ceil(cap_factor * grid.diameter() / l.h));
  l.radii.reserve(jmax);
  for (int j = 1; j <= jmax; ++j) l.radii.push_back(j * l.h);
  return l;
}

namespace {

// Lattice points of Z^n with |k| < j, counted once per ladder radius. The
// strict-inequality membership h*sqrt(sum k^2) < j*h is equivalent to the
// integer test sum k^2 < j^2 (sqrt of a perfect square is exact and the
// relative gap to the next representable product is far above one ulp).
std::vector<std::int64_t> lattice_counts(int n, int jmax) {
  std::vector<std::int64_t> cnt(jmax + 1, 0);
  // count_below(j, dims, acc) via per-axis recursion
  struct Rec {
    int n;
    std::int64_t count(int dims_left, std::int64_t budget) const {
      // number of integer vectors of length dims_left with sum of squares < budget
      if (budget <= 0) return 0;
      if (dims_left == 1) {
        // |k| <= isqrt(budget - 1)
        auto isqrt = [](std::int64_t v) {
          if (v < 0) return static_cast<std::int64_t>(-1);
          auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
          while (r * r > v) --r;
          while ((r + 1) * (r + 1) <= v) ++r;
          return r;
        };
        return 2 * isqrt(budget - 1) + 1;
      }
      std::int64_t total = 0;
      for (std::int64_t k = 0;; ++k) {
        const std::int64_t rem = budget - k * k;
        if (rem <= 0) break;
        const std::int64_t inner = count(dims_left - 1, rem);
        total += (k == 0) ? inner : 2 * inner;
      }
      return total;
    }
  } rec{n};
  for (int j = 1; j <= jmax; ++j)
    cnt[j] = rec.count(n, static_cast<std::int64_t>(j) * j);
  return cnt;
}

// Sum of f over array cells with squared index distance < j^2 from the base
// cell, accumulated in ascending linear-index order (the canonical order a
// direct enumeration uses).
double ball_sum_at(const ScalarField& f, const Index& base, int j) {
  const GridDomain& g = f.grid();
  const int n = g.dim();
  const std::int64_t j2 = static_cast<std::int64_t>(j) * j;
  Index lo(n), hi(n);
  for (int d = 0; d < n; ++d) {
    lo[d] = std::max(0, base[d] - j);
    hi[d] = std::min(g.shape()[d] - 1, base[d] + j);
    if (lo[d] > hi[d]) return 0.0;
  }
  double acc = 0.0;
  Index it = lo;
  while (true) {
    // squared distance of the index offset, excluding the last axis
    std::int64_t part = 0;
    for (int d = 0; d + 1 < n; ++d) {
      const std::int64_t t = it[d] - base[d];
      part += t * t;
    }
    if (part < j2) {
      Index cell = it;
      for (int kl = lo[n - 1]; kl <= hi[n - 1]; ++kl) {
        const std::int64_t t = kl - base[n - 1];
        if (part + t * t < j2) {
          cell[n - 1] = kl;
          acc += f[g.linear(cell)];
        }
      }
    }
    int d = n - 2;
    while (d >= 0) {
      if (++it[d] <= hi[d]) break;
      it[d] = lo[d];
      --d;
    }
    if (d < 0) break;
  }
  return acc;
}

ScalarField maximal_range(const ScalarField& f, double alpha, const RadiusLadder& ladder,
                          std::size_t j_lo, std::size_t j_hi, int jobs) {
  const GridDomain& g = f.grid();
  const int n = g.dim();
  if (alpha < 0.0 || alpha >= n) throw RangeError("fractional_maximal: alpha outside [0, n)");
  if (j_lo >= j_hi) throw EmptyLadder("fractional_maximal: no ladder radius in range");

  const int jmax = static_cast<int>(j_hi);  // radii are 1*h .. size*h
  const auto counts = lattice_counts(n, jmax);

  // Row-major total over all array cells; used verbatim once a ball covers
  // the whole array (every cell passes the membership test in the same
  // order, so the shortcut is bitwise identical to the loop).
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += f[i];

  std::vector<std::size_t> eval_cells;
  for (std::size_t i = 0; i < g.cell_count(); ++i)
    if (g.cell_kind(i) != CellKind::Exterior) eval_cells.push_back(i);

  ScalarField out(f.domain_ptr());
  parallel_for(
      eval_cells.size(),
      [&](std::size_t ei) {
        const std::size_t lin = eval_cells[ei];
        const Index base = g.multi(lin);
        // Largest squared index distance to an array corner; every ladder
        // radius strictly beyond it sees the full array.
        std::int64_t corner2 = 0;
        for (int d = 0; d < n; ++d) {
          const std::int64_t m =
              std::max<std::int64_t>(base[d], g.shape()[d] - 1 - base[d]);
          corner2 += m * m;
        }
        double best = 0.0;
        for (std::size_t jj = j_lo; jj < j_hi; ++jj) {
          const int j = static_cast<int>(jj) + 1;
          const std::int64_t j2 = static_cast<std::int64_t>(j) * j;
          const double num = (j2 > corner2) ? total : ball_sum_at(f, base, j);
          const double avg = num / static_cast<double>(counts[j]);
          const double val = std::pow(ladder.radii[jj], alpha) * avg;
          if (val > best) best = val;
        }
        out[lin] = best;
      },
      jobs);
  return out;
}

}  // namespace

ScalarField fractional_maximal(const ScalarField& f, double alpha, const RadiusLadder& ladder,
                               int jobs) {
  return maximal_range(f, alpha, ladder, 0, ladder.size(), jobs);
}

ScalarField fractional_maximal_cutoff(const ScalarField& f, double alpha, double R,
                                      const RadiusLadder& ladder, int jobs) {
  if (R <= 0.0) throw RangeError("fractional_maximal_cutoff: R must be positive");
  std::size_t j_hi = 0;
  while (j_hi < ladder.size() && ladder.radii[j_hi] < R) ++j_hi;
  if (j_hi == 0) throw EmptyLadder("fractional_maximal_cutoff: no ladder radius below R");
  return maximal_range(f, alpha, ladder, 0, j_hi, jobs);
}

ScalarField tail_maximal(const ScalarField& f, double alpha, double R, const RadiusLadder& ladder,
                         int jobs) {
  if (R <= 0.0) throw RangeError("tail_maximal: R must be positive");
  std::size_t j_lo = 0;
  while (j_lo < ladder.size() && ladder.radii[j_lo] < R) ++j_lo;
  if (j_lo == ladder.size()) throw EmptyLadder("tail_maximal: no ladder radius at or above R");
  return maximal_range(f, alpha, ladder, j_lo, ladder.size(), jobs);
}

double weak_type_constant(const ScalarField& f, double s, double alpha) {
  const int n = f.grid().dim();
  if (s < 1.0) throw RangeError("weak_type_constant: s must be >= 1");
  if (alpha < 0.0 || alpha >= n / s)
    throw RangeError("weak_type_constant: alpha outside [0, n/s)");
  const double denom = std::pow(lp_integral(f, s), 1.0 / s);
  if (denom == 0.0) throw ZeroDenominator("weak_type_constant: f vanishes");
  const RadiusLadder ladder = RadiusLadder::multiples_of_h(f.grid());
  const ScalarField mf = fractional_maximal(f, alpha, ladder);
  const double t = n * s / (n - alpha * s);
  return lorentz_norm(mf, t, std::numeric_limits<double>::infinity()) / denom;
}

}  // namespace oll
