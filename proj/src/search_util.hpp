#pragma once

#include <functional>
#include <random>

#include "ostk/opsys.hpp"
#include "ostk/sdp.hpp"

namespace ostk::detail {

sdp::Options sdp_options(double tol);

/// Orthonormal Hermitian basis of M_m(S)_h in the realization of S.
std::vector<CMatrix> span_basis(const OperatorSystem& s, std::size_t m);
/// Orthonormal basis of all n x n Hermitian matrices.
std::vector<CMatrix> full_span(std::size_t n);

CMatrix project(const CMatrix& x, const std::vector<CMatrix>& basis);
CMatrix random_in_span(const std::vector<CMatrix>& basis, std::mt19937_64& rng);
/// I + H / |lambda_min(H)| for random H in the span.
CMatrix random_boundary(const std::vector<CMatrix>& basis, std::mt19937_64& rng);
/// Minimizer of a random functional over {X PSD in the span, tr X = dim}.
CMatrix random_extreme(const std::vector<CMatrix>& span, std::mt19937_64& rng, double tol);

struct Step {
  bool ok = false;
  double t = 0.0;
  std::vector<CMatrix> vars;
};

/// min t >= 0 subject to target + t I = sum_i image(X_i, i), X_i PSD in `span`,
/// where image(., i) is linear.
Step min_slack_step(const CMatrix& target, std::size_t nvars, const std::vector<CMatrix>& span,
                    const std::function<CMatrix(const CMatrix&, std::size_t)>& image, double tol);

/// Phi(X) = Tr_1[(X^T (x) I_k) C] for a Choi matrix C in M_d (x) M_k.
CMatrix apply_choi(const CMatrix& c, const CMatrix& x, std::size_t k);

}  // namespace ostk::detail
