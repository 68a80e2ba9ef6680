#pragma once

#include <string>
#include <vector>

#include "ostk/opsys.hpp"

namespace ostk {

/// M_n with basis {I, E_11-E_22, ..., E_{n-1,n-1}-E_nn, then E_ij+E_ji, i(E_ij-E_ji) for i<j}.
SystemPtr full_algebra(std::size_t n);
/// Diagonal matrices: {I, E_11-E_22, ..., E_{n-1,n-1}-E_nn}.
SystemPtr diag_algebra(std::size_t n);
/// Tridiagonal matrices T_n (entries vanish for |i-j| >= 2).
SystemPtr tridiagonal(std::size_t n);
/// Coordinates (columns) of the trace-zero diagonal matrices J_n in a
/// parent whose basis starts with I and the n-1 differences E_ii - E_{i+1,i+1}.
RMatrix traceless_diagonal_kernel(const OperatorSystem& parent);
/// S_n^d realized block-diagonally in M_2 (+) ... (+) M_2 with the Hermitian
/// basis {I, E_12+E_21, i(E_12-E_21)} per block.
SystemPtr snd(std::size_t n);
/// Images {e, e_1, e_1*, ..., e_n, e_n*} of the canonical generators in M_{2n}.
std::vector<CMatrix> gamma_images(std::size_t n);
/// Coefficients of the Hermitian basis of snd(n) for e_i and e_i*:
/// e_i = (h_i1 - i h_i2)/2, e_i* = (h_i1 + i h_i2)/2.
CVector snd_generator(std::size_t n, std::size_t i, bool star);

/// Named systems: full(n), diag(n), T(n), M(n)/J(n), T(n)/J(n), S2d, Snd(n).
SystemPtr canonical(const std::string& name);

}  // namespace ostk
