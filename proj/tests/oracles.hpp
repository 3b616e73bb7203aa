#pragma once

// Test-only oracles, kept independent of the solver paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mesc/milp/model.hpp"

namespace oracles {

// Dense Gaussian elimination with partial pivoting; returns false if singular.
inline bool dense_solve(std::vector<std::vector<double>> a, std::vector<double> b,
                        std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    if (std::abs(a[piv][k]) < 1e-12) return false;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return true;
}

// Exhaustive vertex enumeration for small LPs: tries every choice of n active
// rows among {constraints-as-equalities, bound hyperplanes}, keeps feasible
// points, returns the best objective. Exponential; fixtures only.
inline double enumerate_lp_minimum(const mesc::milp::MilpModel& model) {
  using namespace mesc::milp;
  const int n = static_cast<int>(model.num_variables());
  struct Plane {
    std::vector<double> row;
    double rhs;
  };
  std::vector<Plane> planes;
  for (const auto& con : model.constraints()) {
    Plane p{std::vector<double>(n, 0.0), con.rhs};
    for (auto& [id, c] : con.terms) p.row[id] = c;
    planes.push_back(std::move(p));
  }
  for (int j = 0; j < n; ++j) {
    const auto& v = model.variable(j);
    if (std::isfinite(v.lower)) {
      Plane p{std::vector<double>(n, 0.0), v.lower};
      p.row[j] = 1.0;
      planes.push_back(std::move(p));
    }
    if (std::isfinite(v.upper) && v.upper != v.lower) {
      Plane p{std::vector<double>(n, 0.0), v.upper};
      p.row[j] = 1.0;
      planes.push_back(std::move(p));
    }
  }

  const int p = static_cast<int>(planes.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(n, 0);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
      std::vector<double> b(n, 0.0), x;
      for (int k = 0; k < n; ++k) {
        a[k] = planes[pick[k]].row;
        b[k] = planes[pick[k]].rhs;
      }
      if (!dense_solve(a, b, x)) return;
      for (int j = 0; j < n; ++j) {
        const auto& v = model.variable(j);
        if (x[j] < v.lower - 1e-7 || x[j] > v.upper + 1e-7) return;
      }
      for (const auto& con : model.constraints()) {
        double lhs = 0.0;
        for (auto& [id, c] : con.terms) lhs += c * x[id];
        if (con.sense == Sense::LessEqual && lhs > con.rhs + 1e-7) return;
        if (con.sense == Sense::GreaterEqual && lhs < con.rhs - 1e-7) return;
        if (con.sense == Sense::Equal && std::abs(lhs - con.rhs) > 1e-7) return;
      }
      best = std::min(best, model.evaluate_objective(x));
      return;
    }
    for (int i = start; i < p; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// Brute force over all 0/1 assignments of the model's binaries; the residual
// LP is handed to a caller-supplied solver. Fixtures only.
inline double enumerate_mip_minimum(
    const mesc::milp::MilpModel& model,
    const std::function<double(const mesc::milp::MilpModel&)>& lp_min) {
  using namespace mesc::milp;
  auto binaries = model.binary_variables();
  std::vector<VarId> free_bins;
  for (VarId j : binaries) {
    const auto& v = model.variable(j);
    if (v.lower < v.upper) free_bins.push_back(j);
  }
  if (free_bins.size() > 24) throw std::runtime_error("fixture too large for brute force");
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t count = 1ull << free_bins.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    MilpModel fixed = model;
    for (std::size_t k = 0; k < free_bins.size(); ++k) {
      int v = (mask >> k) & 1u;
      fixed.set_variable_bounds(free_bins[k], v, v);
    }
    double obj = lp_min(fixed);
    best = std::min(best, obj);
  }
  return best;
}

}  // namespace oracles
