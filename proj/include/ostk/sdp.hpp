#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ostk/matcore.hpp"

namespace ostk::sdp {

/// One term of a linear constraint: <coeff, X_block>.
struct Term {
  std::size_t block;
  RMatrix coeff;
};

struct Constraint {
  std::vector<Term> terms;  ///< blocks not listed have zero coefficient
  double rhs = 0.0;
};

/// minimize sum_b <C_b, X_b>  s.t.  sum_b <A_ib, X_b> = b_i,  X_b PSD.
struct Problem {
  std::vector<std::size_t> blocks;
  std::vector<RMatrix> objective;  ///< empty means zero objective
  std::vector<Constraint> constraints;

  std::size_t total_dim() const;
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded, Stalled };
const char* to_string(Status s);

struct Residuals {
  double primal = 0.0;  ///< max_i |<A_i,X> - b_i| / (1 + ||A_i||)
  double dual = 0.0;    ///< ||C - A^*(y) - S|| / (1 + ||C||)
  double gap = 0.0;     ///< |<C,X> - b'y| / (1 + |<C,X>| + |b'y|)
};

struct Solution {
  Status status = Status::Stalled;
  std::vector<RMatrix> primal;
  std::vector<RMatrix> slack;
  RVector dual;
  double objective = 0.0;
  double dual_objective = 0.0;
  Residuals residuals;
  int iterations = 0;
  /// For Infeasible: y with b'y = 1 and lambda_max(sum y_i A_i) small.
  std::optional<RVector> farkas;
  std::string message;
};

struct Options {
  double tol = 1e-8;
  int max_iter = 200;
  std::size_t max_dim = 512;
  int projection_iters = 5000;  ///< alternating-projection fallback budget
};

/// Primal-dual interior point on the homogeneous self-dual embedding.
Solution solve(const Problem& p, const Options& opt = {});

struct Feasibility {
  bool feasible = false;
  bool infeasible = false;  ///< neither flag set means the solver stalled
  std::vector<RMatrix> witness;
  std::optional<RVector> certificate;
  Solution raw;
};

/// Feasibility mode: zero objective, with alternating projections as a fallback
/// when the interior-point iteration stalls.
Feasibility feasibility(const Problem& p, const Options& opt = {});

// Independent checks using plain linear algebra only.
double constraint_residual(const Problem& p, const std::vector<RMatrix>& x);
double min_block_eig(const std::vector<RMatrix>& x);
/// Block-wise sum_i y_i A_i.
std::vector<RMatrix> adjoint_map(const Problem& p, const RVector& y);
/// lambda_max(sum y_i A_i) / (b'y); negative b'y yields +inf.
double farkas_violation(const Problem& p, const RVector& y);

/// Plain-text dump: block dims, objective and constraint matrices row-major.
void write_text(std::ostream& os, const Problem& p);

}  // namespace ostk::sdp
