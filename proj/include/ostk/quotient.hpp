#pragma once

#include <vector>

#include "ostk/opsys.hpp"

namespace ostk {

/// *-closed subspace of a system, stored as an orthonormal real basis of its
/// self-adjoint part (columns of parent coordinates).
struct Subspace {
  SystemPtr parent;
  RMatrix generators;
};

/// Real and imaginary parts of the given coefficient vectors span the subspace.
Subspace make_subspace(const SystemPtr& parent, const std::vector<CVector>& gens);

/// MEMBER when M_n(J) contains no nonzero positive (certificate: a positive
/// definite matrix orthogonal to M_n(J)); NOT_MEMBER with a positive witness.
ConeVerdict is_null_subspace(const Subspace& j, std::size_t level = 1, const ConeOptions& opt = {});

/// Quotient by a null subspace of a realized system.
SystemPtr quotient_system(const Subspace& j, const ConeOptions& opt = {});

/// Parent coordinates of the representative of a quotient element.
LevelElement representative(const LevelElement& u);
/// Quotient coordinates of a parent coefficient vector.
CVector quotient_coords(const OperatorSystem& quot, const CVector& parent_coeffs);
/// q : S -> S/J.
LinearMap quotient_map(const SystemPtr& quot);

/// rep(u) + j PSD for some j in M_n(J); the witness j is returned realized.
ConeVerdict quotient_cone_member(const LevelElement& u, const ConeOptions& opt = {});

/// inf { t : rep(u) + j + t I PSD, j in M_n(J) }.
double quotient_gap(const LevelElement& u, const ConeOptions& opt = {});

/// Block-diagonal direct sum of two realized systems with basis
/// [(e,e), (b_i,0), (0,c_j), (e,-e)].
SystemPtr direct_sum(const SystemPtr& s, const SystemPtr& t);

/// Direct sum modulo span{(e,-e)}.
SystemPtr coproduct(const SystemPtr& s, const SystemPtr& t);
/// i(s) = (2s,0)+J for which = 0, j(t) = (0,2t)+J for which = 1.
LinearMap coproduct_embedding(const SystemPtr& cop, int which);
/// ((s,t)+J) -> (phi(s) + psi(t))/2 for maps into a common realized target.
LinearMap coproduct_universal(const SystemPtr& cop, const LinearMap& phi, const LinearMap& psi);

}  // namespace ostk
