#include "ostk/opsys.hpp"

#include <cmath>
#include <sstream>

#include "ostk/sdp_builder.hpp"

namespace ostk {

const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::Concrete: return "concrete";
    case SystemKind::Dual: return "dual";
    case SystemKind::Quotient: return "quotient";
    case SystemKind::Coproduct: return "coproduct";
    case SystemKind::TensorMin: return "tensor_min";
    case SystemKind::TensorMax: return "tensor_max";
    case SystemKind::OminK: return "omin_k";
    case SystemKind::OmaxK: return "omax_k";
  }
  return "?";
}

const char* to_string(TensorClass c) {
  switch (c) {
    case TensorClass::None: return "none";
    case TensorClass::ExactSpatial: return "EXACT_SPATIAL";
    case TensorClass::ExactDualSdp: return "EXACT_DUAL_SDP";
    case TensorClass::Hierarchy: return "HIERARCHY";
  }
  return "?";
}

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Member: return "MEMBER";
    case Answer::NotMember: return "NOT_MEMBER";
    case Answer::Undecided: return "UNDECIDED";
  }
  return "?";
}

const char* to_string(CertKind k) {
  switch (k) {
    case CertKind::None: return "none";
    case CertKind::EigenWitness: return "eigen-witness";
    case CertKind::SdpWitness: return "sdp-witness";
    case CertKind::SeparatingFunctional: return "separating-functional";
    case CertKind::Decomposition: return "decomposition";
    case CertKind::HierarchyLevel: return "hierarchy-level";
  }
  return "?";
}

// ---------------------------------------------------------------- elements

LevelElement zero_element(const SystemPtr& s, std::size_t n) {
  if (!s) throw InputError("element: missing system");
  if (n == 0) throw InputError("element: level must be at least 1");
  LevelElement u;
  u.system = s;
  u.level = n;
  u.coeffs.assign(n * n, CVector::Zero(s->dim));
  return u;
}

LevelElement unit_element(const SystemPtr& s, std::size_t n) {
  LevelElement u = zero_element(s, n);
  for (std::size_t i = 0; i < n; ++i) u.at(i, i) = s->unit;
  return u;
}

LevelElement level1(const SystemPtr& s, const CVector& c) {
  LevelElement u = zero_element(s, 1);
  if (static_cast<std::size_t>(c.size()) != s->dim) throw InputError("element: coefficient length mismatch");
  u.coeffs[0] = c;
  return u;
}

LevelElement adjoint(const LevelElement& u) {
  LevelElement v = u;
  for (std::size_t i = 0; i < u.level; ++i)
    for (std::size_t j = 0; j < u.level; ++j) v.at(i, j) = u.at(j, i).conjugate();
  return v;
}

double hermitian_defect(const LevelElement& u) {
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < u.level; ++i)
    for (std::size_t j = 0; j < u.level; ++j) {
      diff += (u.at(i, j) - u.at(j, i).conjugate()).squaredNorm();
      norm += u.at(i, j).squaredNorm();
    }
  return std::sqrt(diff) / std::max(1.0, std::sqrt(norm));
}

LevelElement add(const LevelElement& a, const LevelElement& b, cplx sb) {
  if (a.system != b.system || a.level != b.level) throw InputError("element: adding elements of different spaces");
  LevelElement c = a;
  for (std::size_t k = 0; k < c.coeffs.size(); ++k) c.coeffs[k] += sb * b.coeffs[k];
  return c;
}

LevelElement scale(const LevelElement& a, cplx s) {
  LevelElement c = a;
  for (auto& v : c.coeffs) v *= s;
  return c;
}

LevelElement norm_block(const LevelElement& u, double alpha) {
  const std::size_t n = u.level;
  LevelElement b = zero_element(u.system, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    b.at(i, i) = alpha * u.system->unit;
    b.at(n + i, n + i) = alpha * u.system->unit;
  }
  const LevelElement ua = adjoint(u);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b.at(i, n + j) = u.at(i, j);
      b.at(n + i, j) = ua.at(i, j);
    }
  return b;
}

cplx pairing(const LevelElement& u, const LevelElement& f) {
  if (u.level != f.level) throw InputError("pairing: level mismatch");
  cplx out = 0.0;
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
    if (u.coeffs[k].size() != f.coeffs[k].size()) throw InputError("pairing: dimension mismatch");
    out += (u.coeffs[k].array() * f.coeffs[k].array()).sum();
  }
  return out;
}

void check_element(const LevelElement& u) {
  if (!u.system) throw InputError("element: missing system");
  if (u.level == 0) throw InputError("element: level must be at least 1");
  if (u.coeffs.size() != u.level * u.level) throw InputError("element: expected level^2 coefficient vectors");
  for (const auto& c : u.coeffs)
    if (static_cast<std::size_t>(c.size()) != u.system->dim)
      throw InputError("element: coefficient vector length differs from system dimension");
}

// ---------------------------------------------------------------- concrete systems

namespace {

constexpr double kRejectAsymmetry = 1e-6;

void finish_gram(OperatorSystem& s) {
  const std::size_t n = s.basis.size();
  RMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = hs_inner(s.basis[i], s.basis[j]).real();
      g(j, i) = g(i, j);
    }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
  const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(n - 1);
  if (lo <= 1e-12 * hi) throw InputError("dependent basis");
  s.gram_condition = hi / lo;
  if (s.gram_condition > 1e8) {
    std::ostringstream os;
    os << "nearly dependent basis: Gram condition " << s.gram_condition;
    s.warnings.push_back(os.str());
  }
  s.gram_inv = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

// Smallest value of the state on density matrices inside the span.
double min_state_on_positives(const OperatorSystem& s, const RVector& state) {
  const auto duals = hs_dual_basis(s);
  CMatrix d = CMatrix::Zero(s.ambient_dim, s.ambient_dim);
  for (std::size_t i = 0; i < s.dim; ++i) d += state(i) * duals[i];
  SdpBuilder b;
  const auto x = b.add_psd(s.ambient_dim);
  b.add_affine(x, CMatrix::Zero(s.ambient_dim, s.ambient_dim), s.basis);
  b.add_eq({{x, CMatrix::Identity(s.ambient_dim, s.ambient_dim)}}, {}, 1.0);
  b.set_objective({{x, d}}, {});
  const auto r = b.solve();
  if (!r.feasible) return std::nan("");
  return r.raw.objective;
}

}  // namespace

void finalize_realized(OperatorSystem& s) { finish_gram(s); }

SystemPtr make_concrete(const std::string& name, std::size_t ambient_dim, std::vector<CMatrix> basis,
                        std::optional<RVector> faithful_state) {
  if (ambient_dim == 0) throw InputError("make_concrete: ambient dimension must be positive");
  if (basis.empty()) throw InputError("make_concrete: empty basis");
  auto s = std::make_shared<OperatorSystem>();
  s->name = name;
  s->kind = SystemKind::Concrete;
  s->ambient_dim = ambient_dim;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& b = basis[i];
    if (static_cast<std::size_t>(b.rows()) != ambient_dim || static_cast<std::size_t>(b.cols()) != ambient_dim)
      throw InputError("make_concrete: basis element " + std::to_string(i) + " has wrong dimension");
    const double defect = hermitian_defect(b);
    if (defect > kRejectAsymmetry)
      throw InputError("make_concrete: basis element " + std::to_string(i) + " is not Hermitian");
    if (defect > kHermWarnTol) s->warnings.push_back("basis element " + std::to_string(i) + " symmetrized");
    basis[i] = hermitian_part(b);
  }
  const CMatrix id = CMatrix::Identity(ambient_dim, ambient_dim);
  if ((basis[0] - id).norm() > 1e-12 * std::sqrt(static_cast<double>(ambient_dim))) {
    basis.insert(basis.begin(), id);
    s->warnings.push_back("identity prepended to basis");
  } else {
    basis[0] = id;
  }
  s->basis = std::move(basis);
  s->dim = s->basis.size();
  finish_gram(*s);
  s->unit = CVector::Zero(s->dim);
  s->unit(0) = 1.0;

  if (faithful_state) {
    if (static_cast<std::size_t>(faithful_state->size()) != s->dim)
      throw InputError("make_concrete: faithful state length differs from dimension");
    if (std::abs((*faithful_state)(0) - 1.0) > 1e-9)
      throw InputError("make_concrete: faithful state must take value 1 on the unit");
    const double lo = min_state_on_positives(*s, *faithful_state);
    if (!(lo > 1e-9)) throw InputError("make_concrete: state is not faithful on the positive cone");
    s->faithful_state = *faithful_state;
  } else {
    s->faithful_state = RVector(s->dim);
    for (std::size_t i = 0; i < s->dim; ++i)
      s->faithful_state(i) = s->basis[i].trace().real() / static_cast<double>(ambient_dim);
  }
  s->provenance = "concrete";
  return s;
}

CMatrix realize(const OperatorSystem& s, const CVector& c) {
  if (!s.realized()) throw InputError("system '" + s.name + "' has no spatial realization");
  CMatrix m = CMatrix::Zero(s.ambient_dim, s.ambient_dim);
  for (std::size_t i = 0; i < s.dim; ++i)
    if (c(i) != cplx(0.0)) m += c(i) * s.basis[i];
  return m;
}

CMatrix realize(const LevelElement& u) {
  check_element(u);
  const auto& s = *u.system;
  const std::size_t d = s.ambient_dim, n = u.level;
  if (!s.realized()) throw InputError("system '" + s.name + "' has no spatial realization");
  CMatrix m(n * d, n * d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m.block(a * d, b * d, d, d) = realize(s, u.at(a, b));
  return m;
}

Coordinates coordinates(const OperatorSystem& s, const CMatrix& m) {
  if (!s.realized()) throw InputError("system '" + s.name + "' has no spatial realization");
  if (static_cast<std::size_t>(m.rows()) != s.ambient_dim || static_cast<std::size_t>(m.cols()) != s.ambient_dim)
    throw InputError("coordinates: matrix dimension mismatch");
  CVector rhs(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) rhs(i) = (s.basis[i] * m).trace();
  Coordinates c;
  c.coeffs = s.gram_inv.cast<cplx>() * rhs;
  c.residual = (m - realize(s, c.coeffs)).norm() / std::max(1.0, m.norm());
  return c;
}

LevelElement element_from_realized(const SystemPtr& s, std::size_t n, const CMatrix& m) {
  const std::size_t d = s->ambient_dim;
  if (static_cast<std::size_t>(m.rows()) != n * d || static_cast<std::size_t>(m.cols()) != n * d)
    throw InputError("realized element has wrong dimension");
  LevelElement u = zero_element(s, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto c = coordinates(*s, m.block(a * d, b * d, d, d));
      if (c.residual > 1e-8) throw InputError("realized element is not in the span of the system");
      u.at(a, b) = c.coeffs;
    }
  return u;
}

std::vector<CMatrix> level_herm_basis(const OperatorSystem& s, std::size_t n) {
  std::vector<CMatrix> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (const auto& x : s.basis) {
        if (a == b) {
          out.push_back(kron(unit_matrix(n, a, a), x));
        } else {
          const CMatrix e = unit_matrix(n, a, b);
          out.push_back(kron(CMatrix(e + e.transpose()), x));
          out.push_back(kron(CMatrix(cplx(0.0, 1.0) * (e - e.transpose())), x));
        }
      }
  return out;
}

std::vector<CMatrix> hs_dual_basis(const OperatorSystem& s) {
  std::vector<CMatrix> out;
  for (std::size_t j = 0; j < s.dim; ++j) {
    CMatrix m = CMatrix::Zero(s.ambient_dim, s.ambient_dim);
    for (std::size_t l = 0; l < s.dim; ++l) m += s.gram_inv(j, l) * s.basis[l];
    out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------- verdicts

ConeVerdict undecided(const std::string& route, double tol, const std::string& why) {
  ConeVerdict v;
  v.answer = Answer::Undecided;
  v.tol = tol;
  v.route = route;
  v.cert.detail = why;
  return v;
}

ConeVerdict spatial_cone_member(const LevelElement& u, double tol) {
  const CMatrix r = realize(u);
  if (hermitian_defect(r) > kRejectAsymmetry) throw InputError("cone query on a non-Hermitian element");
  const auto ep = min_eig_pair(hermitian_part(r));
  ConeVerdict v;
  v.tol = tol;
  v.route = "spatial";
  v.cert.kind = CertKind::EigenWitness;
  v.cert.value = ep.value;
  if (ep.value >= -tol) {
    v.answer = Answer::Member;
  } else {
    v.answer = Answer::NotMember;
    v.cert.vector = ep.vector;
  }
  return v;
}

// ---------------------------------------------------------------- maps

void check_map(const LinearMap& phi) {
  if (!phi.source || !phi.target) throw InputError("map: missing source or target");
  if (phi.images.size() != phi.source->dim) throw InputError("map: need one image per source basis element");
  for (const auto& c : phi.images)
    if (static_cast<std::size_t>(c.size()) != phi.target->dim)
      throw InputError("map: image length differs from target dimension");
}

CVector apply(const LinearMap& phi, const CVector& c) {
  CVector out = CVector::Zero(phi.target->dim);
  for (std::size_t i = 0; i < phi.source->dim; ++i)
    if (c(i) != cplx(0.0)) out += c(i) * phi.images[i];
  return out;
}

LevelElement apply(const LinearMap& phi, const LevelElement& u) {
  if (u.system != phi.source && u.system->dim != phi.source->dim) throw InputError("map: element is not in the source");
  LevelElement v = zero_element(phi.target, u.level);
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) v.coeffs[k] = apply(phi, u.coeffs[k]);
  return v;
}

bool is_unital(const LinearMap& phi, double tol) {
  const CVector img = apply(phi, phi.source->unit);
  return (img - phi.target->unit).cwiseAbs().maxCoeff() <= tol;
}

LinearMap compose(const LinearMap& psi, const LinearMap& phi) {
  if (phi.target->dim != psi.source->dim) throw InputError("compose: dimension mismatch");
  LinearMap out{phi.source, psi.target, {}};
  for (const auto& c : phi.images) out.images.push_back(apply(psi, c));
  return out;
}

std::vector<CMatrix> image_matrices(const LinearMap& phi) {
  std::vector<CMatrix> out;
  for (const auto& c : phi.images) out.push_back(realize(*phi.target, c));
  return out;
}

LinearMap map_from_matrices(const SystemPtr& source, const SystemPtr& target, const std::vector<CMatrix>& mats) {
  if (mats.size() != source->dim) throw InputError("map: need one image per source basis element");
  LinearMap phi{source, target, {}};
  for (const auto& m : mats) {
    const auto c = coordinates(*target, m);
    if (c.residual > 1e-8) throw InputError("map: image outside the target span");
    phi.images.push_back(c.coeffs);
  }
  return phi;
}

}  // namespace ostk
