#pragma once

#include "ostk/opsys.hpp"

namespace ostk {

/// Complete positivity of phi. Realized sources use the Choi matrix when the
/// basis spans the whole ambient algebra and an extension SDP otherwise;
/// quotient sources pull back to the parent; duals of realized systems use
/// sum_j b_j (x) phi(delta_j).
ConeVerdict cp_check(const LinearMap& phi, const ConeOptions& opt = {});

/// Same test for a map out of `source` given by image matrices in M_q.
ConeVerdict cp_check_matrices(const SystemPtr& source, const std::vector<CMatrix>& images,
                              const ConeOptions& opt = {});

/// Choi matrix sum_ij E_ij (x) Phi(E_ij) when the source spans M_d.
CMatrix choi_matrix(const OperatorSystem& source, const std::vector<CMatrix>& images);

/// Alternating search for a k-positivity violation (X in M_k(S)^+, unit v
/// with v* phi_k(X) v < -tol). `opt.budget` restarts.
ConeVerdict kpos_refute(const LinearMap& phi, std::size_t k, const ConeOptions& opt = {});

struct Unitalized {
  LinearMap psi;
  CMatrix r;  ///< phi = r psi(.) r
};

/// psi = phi(e)^{-1/2} phi(.) phi(e)^{-1/2}. When the compressed images leave
/// the span of the target, psi is retargeted to the full ambient algebra.
Unitalized unitalize(const LinearMap& phi);

}  // namespace ostk
