#pragma once

#include "ostk/tensor.hpp"

namespace ostk::detail {

// Alternating search for sum_i A^*(P_i (x) Q_i)A = u + t e over realized factors.
ConeVerdict max_hierarchy(const LevelElement& u, const ConeOptions& opt);

// Seesaw over cp pairs S^d -> M_k, T^d -> M_k for u in S^d (x)min T^d with realized S, T.
ConeVerdict product_refuter(const LevelElement& u, const ConeOptions& opt);

// (phi (x) psi)_n(u) for phi(delta_i) = pm[i], psi(delta_j) = qm[j].
CMatrix apply_product(const LevelElement& u, const std::vector<CMatrix>& pm, const std::vector<CMatrix>& qm);

// Matrices of the cp map S^d -> M_k attached to P in M_k(S): phi(delta_i) = (p_rs,i)_rs.
std::vector<CMatrix> coefficient_slices(const LevelElement& p);

// Level-n element of S (x) X (factor 0 realized) or X (x) S (factor 1) as a
// level n*d element of X.
LevelElement amplify(const LevelElement& u, int factor);

}  // namespace ostk::detail
