#pragma once

#include "erpg2/g2.hpp"

#include <cstdint>
#include <map>

namespace erpg2 {

// Nonlinear least squares over the 34-parameter chart of the structure
// theorem: residual = Jacobi identities (3x16) stacked with the linear
// condition (ii) (6 components); zeros with nonzero torsion are ERP.
inline constexpr int kResidualDim = 54;

std::vector<double> erp_residual(const std::vector<double>& x);
// Analytic Jacobian (the residual is quadratic, so this is linear in x).
Matrix<double> erp_jacobian(const std::vector<double>& x);

struct SearchOptions {
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iters = 400;
  bool unimodular = false; // freeze A1 = 0
  std::map<int, double> frozen; // chart coordinate -> pinned value
  double target_residual = 1e-10;
  double lm_lambda0 = 1e-3;
  double confirm_tol = 1e-6; // tolerance of the independent ERP confirmation
  int threads = 0;          // 0 = hardware concurrency
};

struct LMOutcome {
  std::vector<double> x;
  double residual_norm = 0;
  int iters = 0;
  bool converged = false;
  bool monotone = true; // objective non-increasing over accepted steps
};

LMOutcome levenberg_marquardt(std::vector<double> x0, const SearchOptions& opt);

struct SearchHit {
  int restart = 0;
  int iters = 0;
  double residual_norm = 0;
  Quadruple<double> q;
  bool erp_confirmed = false;
  bool duplicate_of_earlier = false;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  int converged = 0;
  int filtered_trivial = 0; // zeros of r failing the Ricci trace filter
  int not_converged = 0;
};

SearchResult find_erp(const SearchOptions& opt);

} // namespace erpg2
