#pragma once

#include <vector>

#include "szdc/polynomial.hpp"

namespace szdc {

// The images of the monomials e_p under the operator for one fixed
// (n, b_n): polys[p] has degree exactly p, polys[0] == 1, and leading
// coefficient n^p (n+1)!/(n+p+1)!.
struct MomentTable {
  int n = 0;
  double bn = 0.0;
  std::vector<Polynomial> polys;

  int p_max() const { return static_cast<int>(polys.size()) - 1; }
};

// Builds the table from the first-order recurrence
//   P_{p+1} = b_n z/(n+p+2) P_p' + (n z + (p+1) b_n)/(n+p+2) P_p
// with exact coefficient shifts. p_max is capped at 64 ((2p)! in the
// companion bounds leaves double range near p = 86).
MomentTable moment_recurrence(int n, double bn, int p_max);

// Independent direct-series oracle: (n+1)/b_n sum_k w_k(z) I_{n,k,p},
// truncated once the Poisson-tail majorant at |z| falls below tol.
// Shares no code path with moment_recurrence. Throws TruncationError if
// the truncation index would exceed 1e6.
Complex moment_direct(int n, double bn, int p, Complex z, double tol);

// (2p)! r^p (b_n+1)/(n+2) via log-gamma; requires p >= 1 and r >= 1.
double moment_error_bound(int n, double bn, int p, double r);

}  // namespace szdc
