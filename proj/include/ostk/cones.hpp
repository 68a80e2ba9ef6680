#pragma once

#include "ostk/opsys.hpp"

namespace ostk {

/// Cone oracle for every system kind.
ConeVerdict cone_member(const LevelElement& u, const ConeOptions& opt = {});

/// Independent recomputation of a MEMBER / NOT_MEMBER certificate within 10x
/// its tolerance. UNDECIDED verdicts verify trivially.
bool verify_verdict(const LevelElement& u, const ConeVerdict& v);
/// Same for a cp_check verdict on phi.
bool verify_cp(const LinearMap& phi, const ConeVerdict& v);
bool verify_kpos(const LinearMap& phi, const ConeVerdict& v);

}  // namespace ostk
