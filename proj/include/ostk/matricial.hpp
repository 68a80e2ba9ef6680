#pragma once

#include "ostk/opsys.hpp"

namespace ostk {

/// OMIN_k(S) / OMAX_k(S) over a realized S; same basis, unit and state.
SystemPtr omin(const SystemPtr& s, std::size_t k);
SystemPtr omax(const SystemPtr& s, std::size_t k);

/// Levels n <= k (or k >= ambient dimension) use the parent cone. Otherwise
/// spatial positivity gives MEMBER and a seesaw over (ucp Choi matrix into M_k,
/// unit vector) searches for NOT_MEMBER.
ConeVerdict omin_member(const LevelElement& u, const ConeOptions& opt = {});

/// Levels n <= k use the parent cone; MEMBER via u + t e = sum_i (Psi_i (x) id)(D_i)
/// with D_i in M_k(S)^+ and Psi_i cp M_k -> M_n; NOT_MEMBER only when u leaves
/// the parent cone.
ConeVerdict omax_member(const LevelElement& u, const ConeOptions& opt = {});

/// A in w_n(x) = { phi(x) : phi : S -> M_n ucp }, x given by coefficients over a realized S.
ConeVerdict numerical_range_member(const SystemPtr& s, const CVector& x, const CMatrix& a, const ConeOptions& opt = {});

/// max Re tr(D^* A) over A in w_n(x).
double numerical_range_support(const SystemPtr& s, const CVector& x, const CMatrix& direction,
                               const ConeOptions& opt = {});

/// Direct sum of full matrix algebras realized block-diagonally.
SystemPtr block_algebra(const std::vector<std::size_t>& sizes);

struct KLift {
  LinearMap lift;
  ConeVerdict cp;
  ConeVerdict kpos;
  bool unital = false;
};

/// Lift of a ucp phi : S -> A/I, A = block_algebra(sizes), I the blocks flagged
/// in `ideal`, and phi's target block_algebra of the remaining sizes. The
/// dropped blocks receive faithful_state(s) * I.
KLift klift_demo(const LinearMap& phi, const std::vector<std::size_t>& sizes, const std::vector<bool>& ideal,
                 std::size_t k, const ConeOptions& opt = {});

}  // namespace ostk
