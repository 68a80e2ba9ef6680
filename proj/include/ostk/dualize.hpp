#pragma once

#include "ostk/opsys.hpp"

namespace ostk {

/// S^d with basis dual to the basis of S. Its unit is the faithful state of S
/// and its faithful state is evaluation at the unit of S.
SystemPtr dual_system(const SystemPtr& s);

/// F in M_m(S^d)^+ iff s -> (f_ab(s)) is completely positive.
ConeVerdict dual_cone_member(const LevelElement& f, const ConeOptions& opt = {});

/// The induced map S -> M_m of a level-m dual element, as matrices (one per basis element of S).
std::vector<CMatrix> induced_images(const LevelElement& f);

/// phi^d : T^d -> S^d, f -> f o phi.
LinearMap dual_map(const LinearMap& phi, const SystemPtr& source_dual, const SystemPtr& target_dual);
LinearMap dual_map(const LinearMap& phi);

/// S -> S^dd; coefficients are unchanged.
LinearMap double_dual_map(const SystemPtr& s, const SystemPtr& sdd);

}  // namespace ostk
