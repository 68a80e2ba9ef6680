#include "ostk/tensor.hpp"

#include "ostk/cones.hpp"
#include "ostk/maps.hpp"
#include "tensor_detail.hpp"

namespace ostk {

namespace {

bool dual_of_realized(const OperatorSystem& s) { return s.kind == SystemKind::Dual && s.parents[0]->realized(); }

void fill_spatial(OperatorSystem& ts, const OperatorSystem& s, const OperatorSystem& t) {
  ts.ambient_dim = s.ambient_dim * t.ambient_dim;
  ts.basis.clear();
  for (const auto& b : s.basis)
    for (const auto& c : t.basis) ts.basis.push_back(kron(b, c));
  finalize_realized(ts);
}

std::shared_ptr<OperatorSystem> tensor_shell(const SystemPtr& s, const SystemPtr& t, SystemKind kind) {
  auto ts = std::make_shared<OperatorSystem>();
  ts->kind = kind;
  ts->name = s->name + (kind == SystemKind::TensorMin ? "(x)min" : "(x)max") + t->name;
  ts->dim = s->dim * t->dim;
  ts->unit = kron_coeffs(s->unit, t->unit);
  ts->faithful_state = kron_coeffs(s->faithful_state.cast<cplx>(), t->faithful_state.cast<cplx>()).real();
  ts->parents = {s, t};
  return ts;
}

std::vector<CMatrix> coefficient_images(const LevelElement& u) {
  const std::size_t n = u.level;
  std::vector<CMatrix> out(u.system->dim, CMatrix::Zero(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t j = 0; j < out.size(); ++j) out[j](a, b) = u.at(a, b)(j);
  return out;
}

ConeVerdict via_amplification(const LevelElement& u, const ConeOptions& opt, const std::string& route) {
  const auto& ts = *u.system;
  const int factor = ts.parents[0]->realized() ? 0 : 1;
  auto v = cone_member(detail::amplify(u, factor), opt);
  v.route = route + "/" + v.route;
  return v;
}

void require_hermitian(const LevelElement& u) {
  check_element(u);
  if (hermitian_defect(u) > 1e-6) throw InputError("cone query on a non-Hermitian element");
}

}  // namespace

namespace detail {

// Level-n element of S (x) X with S realized (factor 0) or X (x) S (factor 1)
// rewritten as a level n*d element of X, d = ambient dimension of S.
LevelElement amplify(const LevelElement& u, int factor) {
  const auto& ts = *u.system;
  const auto& s = *ts.parents[factor];
  const SystemPtr& x = ts.parents[1 - factor];
  const std::size_t n = u.level, d = s.ambient_dim, ns = s.dim, nx = x->dim;
  LevelElement w = zero_element(x, n * d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const CVector& c = u.at(a, b);
      for (std::size_t i = 0; i < ns; ++i) {
        const CMatrix& bi = s.basis[i];
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t q = 0; q < d; ++q) {
            if (bi(r, q) == cplx(0.0)) continue;
            CVector& out = w.at(a * d + r, b * d + q);
            for (std::size_t j = 0; j < nx; ++j)
              out(j) += bi(r, q) * c(factor == 0 ? i * nx + j : j * ns + i);
          }
      }
    }
  return w;
}

}  // namespace detail

CVector kron_coeffs(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

bool is_cstar_algebra(const OperatorSystem& s) {
  if (!s.realized()) return false;
  for (const auto& a : s.basis)
    for (const auto& b : s.basis)
      if (coordinates(s, CMatrix(a * b)).residual > 1e-9) return false;
  return true;
}

SystemPtr tensor_min(const SystemPtr& s, const SystemPtr& t) {
  auto ts = tensor_shell(s, t, SystemKind::TensorMin);
  if (s->realized() && t->realized()) {
    fill_spatial(*ts, *s, *t);
    ts->tensor_class = TensorClass::ExactSpatial;
    ts->provenance = "minimal tensor; spatial in the product realization";
  } else if (s->realized() || t->realized()) {
    ts->tensor_class = TensorClass::ExactSpatial;
    ts->provenance = "minimal tensor; realized factor amplifies into matrix levels of the other";
  } else if (dual_of_realized(*s) && dual_of_realized(*t)) {
    auto x = tensor_max(s->parents[0], t->parents[0]);
    ts->tensor_class = x->realized() ? TensorClass::ExactDualSdp : TensorClass::Hierarchy;
    ts->parents.push_back(x);
    ts->provenance = "minimal tensor of duals; positive functionals on the max tensor of the pre-duals";
  } else {
    ts->tensor_class = TensorClass::Hierarchy;
    ts->provenance = "minimal tensor; refutation by product maps only";
  }
  return ts;
}

SystemPtr tensor_max(const SystemPtr& s, const SystemPtr& t) {
  auto ts = tensor_shell(s, t, SystemKind::TensorMax);
  const bool cs = is_cstar_algebra(*s), ct = is_cstar_algebra(*t);
  if ((cs && t->realized()) || (ct && s->realized())) {
    fill_spatial(*ts, *s, *t);
    ts->tensor_class = TensorClass::ExactSpatial;
    ts->provenance = "maximal tensor with a C*-algebra factor; equal to the spatial tensor";
  } else if (cs || ct) {
    ts->tensor_class = TensorClass::ExactSpatial;
    ts->provenance = "maximal tensor with a C*-algebra factor; equal to the minimal tensor";
  } else if (dual_of_realized(*s) && dual_of_realized(*t)) {
    ts->tensor_class = TensorClass::ExactDualSdp;
    ts->parents.push_back(tensor_min(s->parents[0], t->parents[0]));
    ts->provenance = "maximal tensor of duals; positive functionals on the spatial tensor of the pre-duals";
  } else {
    ts->tensor_class = TensorClass::Hierarchy;
    ts->provenance = "maximal tensor; decomposition hierarchy";
  }
  return ts;
}

SystemPtr tensor_c(const SystemPtr& s, const SystemPtr& t) {
  if (!is_cstar_algebra(*s) && !is_cstar_algebra(*t))
    throw InputError("commuting tensor is only available when one factor is a C*-algebra");
  return tensor_max(s, t);
}

LevelElement product_element(const SystemPtr& ts, const LevelElement& p, const LevelElement& q) {
  if (ts->parents.size() < 2 || ts->parents[0] != p.system || ts->parents[1] != q.system)
    throw InputError("product_element: factors do not match the tensor system");
  const std::size_t np = p.level, nq = q.level;
  LevelElement u = zero_element(ts, np * nq);
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < np; ++b)
      for (std::size_t c = 0; c < nq; ++c)
        for (std::size_t d = 0; d < nq; ++d) u.at(a * nq + c, b * nq + d) = kron_coeffs(p.at(a, b), q.at(c, d));
  return u;
}

LevelElement combine_blocks(const SystemPtr& ts, const std::vector<DecompositionBlock>& blocks) {
  if (blocks.empty()) throw InputError("combine_blocks: no blocks");
  const std::size_t n = blocks[0].a.cols();
  LevelElement out = zero_element(ts, n);
  for (const auto& blk : blocks) {
    const LevelElement pq = product_element(ts, blk.p, blk.q);
    const CMatrix& a = blk.a;
    if (static_cast<std::size_t>(a.rows()) != pq.level || static_cast<std::size_t>(a.cols()) != n)
      throw InputError("combine_blocks: compression has the wrong shape");
    for (std::size_t al = 0; al < pq.level; ++al)
      for (std::size_t be = 0; be < pq.level; ++be) {
        const CVector& c = pq.at(al, be);
        if (c.squaredNorm() == 0.0) continue;
        for (std::size_t x = 0; x < n; ++x) {
          const cplx ax = std::conj(a(al, x));
          if (ax == cplx(0.0)) continue;
          for (std::size_t y = 0; y < n; ++y)
            if (a(be, y) != cplx(0.0)) out.at(x, y) += ax * a(be, y) * c;
        }
      }
  }
  return out;
}

ConeVerdict min_cone_member(const LevelElement& u, const ConeOptions& opt) {
  require_hermitian(u);
  const auto& ts = *u.system;
  if (ts.kind != SystemKind::TensorMin) throw InputError("min_cone_member: not a minimal tensor");
  if (ts.realized()) {
    auto v = spatial_cone_member(u, opt.tol);
    v.route = "min-spatial";
    return v;
  }
  if (ts.parents[0]->realized() || ts.parents[1]->realized()) return via_amplification(u, opt, "min-amplified");
  if (ts.parents.size() == 3) {
    const auto& x = ts.parents[2];
    if (x->realized()) {
      auto v = cp_check_matrices(x, coefficient_images(u), opt);
      v.route = "min-dual/" + v.route;
      return v;
    }
    // max is contained in min: an exact max-of-duals MEMBER settles it.
    LevelElement um = u;
    auto tm = tensor_max(ts.parents[0], ts.parents[1]);
    um.system = tm;
    auto mv = max_cone_member(um, opt);
    if (mv.answer == Answer::Member) {
      mv.route = "min-via-max/" + mv.route;
      return mv;
    }
    auto r = detail::product_refuter(u, opt);
    if (r.answer == Answer::NotMember) return r;
    return undecided("min-product", opt.tol, "no product violation found within budget");
  }
  return undecided("min-hierarchy", opt.tol, "no oracle for these factor kinds");
}

ConeVerdict max_cone_member(const LevelElement& u, const ConeOptions& opt) {
  require_hermitian(u);
  const auto& ts = *u.system;
  if (ts.kind != SystemKind::TensorMax) throw InputError("max_cone_member: not a maximal tensor");
  const bool realized_factors = ts.parents[0]->realized() && ts.parents[1]->realized();
  if (opt.force_hierarchy && realized_factors) return detail::max_hierarchy(u, opt);
  if (ts.tensor_class == TensorClass::ExactSpatial) {
    if (ts.realized()) {
      auto v = spatial_cone_member(u, opt.tol);
      v.route = "max-spatial";
      return v;
    }
    return via_amplification(u, opt, "max-amplified");
  }
  if (ts.tensor_class == TensorClass::ExactDualSdp) {
    auto v = cp_check_matrices(ts.parents[2], coefficient_images(u), opt);
    v.route = "max-dual/" + v.route;
    return v;
  }
  if (realized_factors) return detail::max_hierarchy(u, opt);
  // Only a min-cone refutation is available.
  LevelElement um = u;
  um.system = tensor_min(ts.parents[0], ts.parents[1]);
  auto mv = min_cone_member(um, opt);
  if (mv.answer == Answer::NotMember) {
    mv.route = "max-via-min/" + mv.route;
    return mv;
  }
  return undecided("max-hierarchy", opt.tol, "factor kinds have no decomposition search");
}

LinearMap tensor_map(const LinearMap& phi1, const LinearMap& phi2, const SystemPtr& source, const SystemPtr& target) {
  check_map(phi1);
  check_map(phi2);
  if (source->parents.size() < 2 || target->parents.size() < 2 || source->parents[0] != phi1.source ||
      source->parents[1] != phi2.source || target->parents[0] != phi1.target || target->parents[1] != phi2.target)
    throw InputError("tensor_map: systems do not match the maps");
  LinearMap out{source, target, {}};
  for (const auto& a : phi1.images)
    for (const auto& b : phi2.images) out.images.push_back(kron_coeffs(a, b));
  return out;
}

namespace {

// A^* p A with p at level A.rows().
LevelElement compress(const LevelElement& p, const CMatrix& a) {
  if (static_cast<std::size_t>(a.rows()) != p.level) throw InputError("decomposition: compression has the wrong shape");
  const std::size_t n = a.cols();
  LevelElement out = zero_element(p.system, n);
  for (std::size_t al = 0; al < p.level; ++al)
    for (std::size_t be = 0; be < p.level; ++be)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) out.at(x, y) += std::conj(a(al, x)) * a(be, y) * p.at(al, be);
  return out;
}

double coeff_norm(const LevelElement& u) {
  double m = 0.0;
  for (const auto& c : u.coeffs) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

bool verify_decomposition(const LevelElement& u, const Certificate& cert, double tol) {
  if (cert.kind != CertKind::Decomposition) return false;
  const double scale = std::max(1.0, coeff_norm(u));
  const double slack_tol = 10.0 * tol * scale;
  if (cert.slack < -slack_tol || cert.slack > slack_tol) return false;
  LevelElement target = add(u, unit_element(u.system, u.level), cert.slack);
  LevelElement sum = zero_element(u.system, u.level);
  ConeOptions copt;
  copt.tol = 10.0 * tol;
  for (const auto& blk : cert.blocks) {
    if (!blk.p.system) return false;
    if (blk.q.system) {
      if (cone_member(blk.p, copt).answer != Answer::Member) return false;
      if (cone_member(blk.q, copt).answer != Answer::Member) return false;
      sum = add(sum, combine_blocks(u.system, {blk}));
    } else {
      // k-max block: D lives on the parent of u's system.
      if (spatial_cone_member(blk.p, copt.tol).answer != Answer::Member) return false;
      LevelElement c = compress(blk.p, blk.a);
      c.system = u.system;
      sum = add(sum, c);
    }
  }
  if (cert.blocks.empty()) return coeff_norm(target) <= slack_tol;
  return coeff_norm(add(sum, target, -1.0)) <= slack_tol;
}

FunctorialityReport max_functoriality_check(const LinearMap& phi1, const LinearMap& phi2,
                                            const std::vector<LevelElement>& samples, const ConeOptions& opt) {
  FunctorialityReport rep;
  if (samples.empty()) return rep;
  const auto src = samples[0].system;
  const auto tgt = tensor_max(phi1.target, phi2.target);
  const auto m = tensor_map(phi1, phi2, src, tgt);
  for (const auto& u : samples) {
    ++rep.checked;
    const auto v = max_cone_member(apply(m, u), opt);
    if (v.answer == Answer::Member) ++rep.preserved;
    else if (v.answer == Answer::NotMember) ++rep.violations;
    else ++rep.undecided;
  }
  return rep;
}

}  // namespace ostk
