#include "ostk/dualize.hpp"

#include "ostk/maps.hpp"

namespace ostk {

SystemPtr dual_system(const SystemPtr& s) {
  auto d = std::make_shared<OperatorSystem>();
  d->name = s->name + "^d";
  d->kind = SystemKind::Dual;
  d->dim = s->dim;
  d->unit = s->faithful_state.cast<cplx>();
  d->faithful_state = s->unit.real();
  d->parents = {s};
  d->provenance = "dual of " + s->name + "; unit is its designated faithful state";
  return d;
}

std::vector<CMatrix> induced_images(const LevelElement& f) {
  const auto& sd = *f.system;
  if (sd.kind != SystemKind::Dual) throw InputError("induced_images: element is not in a dual system");
  const std::size_t m = f.level;
  std::vector<CMatrix> out(sd.dim, CMatrix::Zero(m, m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t j = 0; j < sd.dim; ++j) out[j](a, b) = f.at(a, b)(j);
  return out;
}

ConeVerdict dual_cone_member(const LevelElement& f, const ConeOptions& opt) {
  check_element(f);
  if (hermitian_defect(f) > 1e-6) throw InputError("cone query on a non-Hermitian element");
  auto v = cp_check_matrices(f.system->parents[0], induced_images(f), opt);
  v.route = "dual/" + v.route;
  return v;
}

LinearMap dual_map(const LinearMap& phi, const SystemPtr& source_dual, const SystemPtr& target_dual) {
  check_map(phi);
  if (source_dual->kind != SystemKind::Dual || target_dual->kind != SystemKind::Dual ||
      source_dual->parents[0] != phi.target || target_dual->parents[0] != phi.source)
    throw InputError("dual_map: duals do not match the map");
  LinearMap out{source_dual, target_dual, {}};
  for (std::size_t j = 0; j < phi.target->dim; ++j) {
    CVector c(phi.source->dim);
    for (std::size_t i = 0; i < phi.source->dim; ++i) c(i) = phi.images[i](j);
    out.images.push_back(c);
  }
  return out;
}

LinearMap dual_map(const LinearMap& phi) {
  return dual_map(phi, dual_system(phi.target), dual_system(phi.source));
}

LinearMap double_dual_map(const SystemPtr& s, const SystemPtr& sdd) {
  if (sdd->kind != SystemKind::Dual || sdd->parents[0]->kind != SystemKind::Dual || sdd->parents[0]->parents[0] != s)
    throw InputError("double_dual_map: not the double dual of the system");
  LinearMap out{s, sdd, {}};
  for (std::size_t i = 0; i < s->dim; ++i) out.images.push_back(CVector::Unit(s->dim, i));
  return out;
}

}  // namespace ostk
