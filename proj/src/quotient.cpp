#include "ostk/quotient.hpp"

#include <cmath>
#include <sstream>

#include "ostk/sdp_builder.hpp"

namespace ostk {

namespace {

sdp::Options sdp_options(double tol) {
  sdp::Options o;
  o.tol = std::min(tol, 1e-9);
  return o;
}

std::vector<CMatrix> kernel_matrices(const OperatorSystem& parent, const RMatrix& gens) {
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < gens.cols(); ++k) out.push_back(realize(parent, gens.col(k).cast<cplx>()));
  return out;
}

// Hermitian directions spanning M_n(J)_h.
std::vector<CMatrix> level_dirs(const std::vector<CMatrix>& jm, std::size_t n) {
  std::vector<CMatrix> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (const auto& x : jm) {
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

// Least-squares projection onto the real span of Hermitian directions.
CMatrix project_onto(const CMatrix& m, const std::vector<CMatrix>& dirs) {
  if (dirs.empty()) return CMatrix::Zero(m.rows(), m.cols());
  const std::size_t n = m.rows();
  RMatrix a(n * n, dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) a.col(k) = herm_to_vec(dirs[k]);
  const RVector z = a.colPivHouseholderQr().solve(herm_to_vec(hermitian_part(m)));
  return vec_to_herm(a * z, n);
}

// Alternating projections between the PSD cone and r + span(dirs), from a nearly feasible j.
CMatrix polish_witness(const CMatrix& r, CMatrix j, const std::vector<CMatrix>& dirs) {
  for (int it = 0; it < 200 && min_eig(CMatrix(r + j)) < 0.0; ++it) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(r + j));
    const RVector lam = es.eigenvalues().cwiseMax(0.0);
    const CMatrix y = es.eigenvectors() * lam.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    j = project_onto(y - r, dirs);
  }
  return j;
}

const OperatorSystem& realized_parent(const OperatorSystem& q) {
  if (q.parents.empty() || !q.parents[0]->realized())
    throw InputError("quotient: parent has no spatial realization");
  return *q.parents[0];
}

}  // namespace

Subspace make_subspace(const SystemPtr& parent, const std::vector<CVector>& gens) {
  if (!parent) throw InputError("subspace: missing parent");
  RMatrix cols(parent->dim, 2 * gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (static_cast<std::size_t>(gens[k].size()) != parent->dim)
      throw InputError("subspace: generator length differs from parent dimension");
    cols.col(2 * k) = gens[k].real();
    cols.col(2 * k + 1) = gens[k].imag();
  }
  return {parent, orth_range(cols)};
}

ConeVerdict is_null_subspace(const Subspace& j, std::size_t level, const ConeOptions& opt) {
  const auto& p = *j.parent;
  if (!p.realized()) return undecided("null-subspace", opt.tol, "parent has no spatial realization");
  if (j.generators.cols() == 0) {
    ConeVerdict v;
    v.answer = Answer::Member;
    v.tol = opt.tol;
    v.route = "null-subspace";
    v.cert.kind = CertKind::SdpWitness;
    v.cert.matrices = {CMatrix::Identity(p.ambient_dim * level, p.ambient_dim * level)};
    v.cert.value = 1.0;
    return v;
  }
  // Unit inside J is rejected outright.
  const RVector e = p.unit.real();
  const RVector proj = j.generators * (j.generators.transpose() * e);
  if ((e - proj).norm() <= 1e-10 * std::max(1.0, e.norm())) throw InputError("subspace contains the unit");

  const auto jm = kernel_matrices(p, j.generators);
  const auto dirs = level_dirs(jm, level);
  const std::size_t nd = level * p.ambient_dim;
  SdpBuilder b;
  const auto x = b.add_psd(nd);
  b.add_affine(x, CMatrix::Zero(nd, nd), dirs);
  const std::size_t trace_row = b.add_eq({{x, CMatrix::Identity(nd, nd)}}, {}, 1.0);
  const auto r = b.feasibility(sdp_options(opt.tol));
  ConeVerdict v;
  v.tol = opt.tol;
  v.route = "null-subspace";
  if (r.feasible) {
    CMatrix w = project_onto(r.psd[0], dirs);
    const double lam = min_eig(w);
    if (lam >= -10.0 * opt.tol && w.trace().real() > 0.5) {
      v.answer = Answer::NotMember;
      v.cert.kind = CertKind::SdpWitness;
      v.cert.matrices = {w};
      v.cert.value = lam;
      v.cert.detail = "positive element of M_n(J)";
      return v;
    }
    return undecided("null-subspace", opt.tol, "positive witness failed re-verification");
  }
  if (r.infeasible && r.dual.size() > 0) {
    // rho = -(sum over the orthogonality rows) is positive definite and orthogonal to M_n(J).
    RVector y = r.dual;
    y(trace_row) = 0.0;
    CMatrix rho = -b.adjoint(y, x);
    rho /= std::max(rho.trace().real(), 1e-300);
    const double lam = min_eig(rho);
    double leak = 0.0;
    for (const auto& d : dirs) leak = std::max(leak, std::abs(hs_inner(rho, d).real()) / d.norm());
    if (lam > 10.0 * opt.tol / static_cast<double>(nd) && leak <= 10.0 * opt.tol) {
      v.answer = Answer::Member;
      v.cert.kind = CertKind::SdpWitness;
      v.cert.matrices = {rho};
      v.cert.value = lam;
      v.cert.slack = leak;
      v.cert.detail = "positive definite matrix orthogonal to M_n(J)";
      return v;
    }
    return undecided("null-subspace", opt.tol, "nullity certificate failed re-verification");
  }
  return undecided("null-subspace", opt.tol, "SDP stalled");
}

namespace {

// Density of a faithful state of the realized parent vanishing on J.
CMatrix vanishing_density(const OperatorSystem& p, const std::vector<CMatrix>& jm, double tol) {
  const std::size_t d = p.ambient_dim;
  bool trace_ok = true;
  for (const auto& m : jm) trace_ok = trace_ok && std::abs(m.trace()) <= 1e-12 * std::max(1.0, m.norm());
  if (trace_ok) return CMatrix::Identity(d, d) / static_cast<double>(d);
  SdpBuilder b;
  const auto x = b.add_psd(d);
  const auto t = b.add_scalar(true);
  b.add_eq({{x, CMatrix::Identity(d, d)}}, {{t, static_cast<double>(d)}}, 1.0);
  for (const auto& m : jm) b.add_eq({{x, m}}, {{t, m.trace().real()}}, 0.0);
  b.set_objective({}, {{t, -1.0}});
  const auto r = b.solve(sdp_options(tol));
  if (!r.feasible || r.scalars[0] <= 1e-9) throw InputError("quotient: no faithful state vanishes on the kernel");
  CMatrix rho = r.psd[0] + r.scalars[0] * CMatrix::Identity(d, d);
  rho -= project_onto(rho, jm);
  rho = hermitian_part(rho) / rho.trace().real();
  if (min_eig(rho) <= 0.0) throw InputError("quotient: faithful state construction failed");
  return rho;
}

std::shared_ptr<OperatorSystem> build_quotient(const Subspace& j, const CMatrix* density, const ConeOptions& opt) {
  const auto& p = *j.parent;
  if (!p.realized()) throw InputError("quotient: parent has no spatial realization");
  const auto null = is_null_subspace(j, 1, opt);
  if (null.answer == Answer::NotMember) throw InputError("quotient: kernel contains a nonzero positive element");
  if (null.answer != Answer::Member) throw InputError("quotient: could not certify that the kernel is null");

  const std::size_t n = p.dim, kd = j.generators.cols();
  RMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g(a, b) = hs_inner(p.basis[a], p.basis[b]).real();
  const RMatrix& k = j.generators;
  const RVector e = p.unit.real();
  RVector r1 = e;
  if (kd > 0) r1 -= k * (k.transpose() * g * k).ldlt().solve(k.transpose() * g * e);

  // Remaining representatives: G-orthonormal basis of {c : K^T G c = 0, r1^T G c = 0}.
  RMatrix constraints(kd + 1, n);
  if (kd > 0) constraints.topRows(kd) = k.transpose() * g;
  constraints.row(kd) = (g * r1).transpose();
  Eigen::FullPivLU<RMatrix> lu(constraints);
  RMatrix free = lu.kernel();
  if (free.cols() == 1 && free.norm() == 0.0) free.resize(n, 0);
  RMatrix reps(n, 1 + free.cols());
  reps.col(0) = r1;
  for (Eigen::Index c = 0; c < free.cols(); ++c) {
    RVector v = free.col(c);
    for (Eigen::Index prev = 1; prev <= c; ++prev) v -= (reps.col(prev).dot(g * v)) * reps.col(prev);
    v /= std::sqrt(v.dot(g * v));
    reps.col(c + 1) = v;
  }
  const std::size_t m = reps.cols();
  if (m + kd != n) throw InputError("quotient: representative construction lost rank");

  RMatrix full(n, n);
  full.leftCols(m) = reps;
  if (kd > 0) full.rightCols(kd) = k;
  const RMatrix inv = full.inverse();

  auto q = std::make_shared<OperatorSystem>();
  q->kind = SystemKind::Quotient;
  q->dim = m;
  q->parents = {j.parent};
  q->kernel = k;
  q->reps = reps;
  q->quot_coords = inv.topRows(m);
  q->unit = CVector::Zero(m);
  q->unit(0) = 1.0;
  const auto jm = kernel_matrices(p, k);
  q->state_density = density ? *density : vanishing_density(p, jm, opt.tol);
  q->faithful_state = RVector(m);
  for (std::size_t i = 0; i < m; ++i)
    q->faithful_state(i) = hs_inner(q->state_density, realize(p, reps.col(i).cast<cplx>())).real();
  std::ostringstream prov;
  prov << "quotient of " << p.name << " by a " << kd
       << "-dimensional null subspace; representatives HS-orthogonal to the kernel";
  q->provenance = prov.str();
  q->name = p.name + "/J";
  return q;
}

}  // namespace

SystemPtr quotient_system(const Subspace& j, const ConeOptions& opt) { return build_quotient(j, nullptr, opt); }

LevelElement representative(const LevelElement& u) {
  check_element(u);
  const auto& q = *u.system;
  if (q.kind != SystemKind::Quotient && q.kind != SystemKind::Coproduct)
    throw InputError("representative: element is not in a quotient");
  LevelElement r = zero_element(q.parents[0], u.level);
  const CMatrix reps = q.reps.cast<cplx>();
  for (std::size_t k = 0; k < u.coeffs.size(); ++k) r.coeffs[k] = reps * u.coeffs[k];
  return r;
}

CVector quotient_coords(const OperatorSystem& quot, const CVector& parent_coeffs) {
  return quot.quot_coords.cast<cplx>() * parent_coeffs;
}

LinearMap quotient_map(const SystemPtr& quot) {
  LinearMap q{quot->parents[0], quot, {}};
  for (std::size_t i = 0; i < quot->parents[0]->dim; ++i) q.images.push_back(quot->quot_coords.col(i).cast<cplx>());
  return q;
}

ConeVerdict quotient_cone_member(const LevelElement& u, const ConeOptions& opt) {
  check_element(u);
  const auto& q = *u.system;
  const auto& p = realized_parent(q);
  const std::size_t n = u.level, nd = n * p.ambient_dim;
  const CMatrix rep = realize(representative(u));
  if (hermitian_defect(rep) > 1e-6) throw InputError("cone query on a non-Hermitian element");
  const CMatrix r = hermitian_part(rep);
  const auto jm = kernel_matrices(p, q.kernel);
  const auto dirs = level_dirs(jm, n);

  SdpBuilder b;
  const auto x = b.add_psd(nd);
  b.add_affine(x, r, dirs);
  const auto res = b.feasibility(sdp_options(opt.tol));
  ConeVerdict v;
  v.tol = opt.tol;
  v.route = "quotient-sdp";
  if (res.feasible) {
    const CMatrix j = polish_witness(r, project_onto(res.psd[0] - r, dirs), dirs);
    const double lam = min_eig(CMatrix(r + j));
    if (lam >= -10.0 * opt.tol) {
      v.answer = Answer::Member;
      v.cert.kind = CertKind::SdpWitness;
      v.cert.matrices = {j};
      v.cert.value = lam;
      v.cert.detail = "kernel witness j with rep + j PSD";
      return v;
    }
    return undecided("quotient-sdp", opt.tol, "kernel witness failed re-verification");
  }
  if (res.infeasible && res.dual.size() > 0) {
    const double by = b.rhs_dot(res.dual);
    if (by > 0.0) {
      const CMatrix z = b.adjoint(res.dual / by, x);
      const double lam = max_eig(z);
      CMatrix w = -z;
      const CMatrix rho_n = kron(CMatrix(CMatrix::Identity(n, n)), q.state_density);
      if (lam > 0.0) w += (lam / min_eig(q.state_density)) * rho_n;
      w = hermitian_part(w);
      const double pos = min_eig(w);
      const double val = hs_inner(w, r).real();
      double leak = 0.0;
      for (const auto& d : dirs) leak = std::max(leak, std::abs(hs_inner(w, d).real()) / d.norm());
      if (pos >= -10.0 * opt.tol && val < -opt.tol && leak <= 10.0 * opt.tol * std::max(1.0, w.norm())) {
        v.answer = Answer::NotMember;
        v.cert.kind = CertKind::SeparatingFunctional;
        v.cert.matrices = {w};
        v.cert.value = val;
        v.cert.slack = leak;
        v.cert.detail = "W PSD, orthogonal to M_n(J), <W, rep> < 0";
        return v;
      }
    }
    return undecided("quotient-sdp", opt.tol, "separating functional failed re-verification");
  }
  return undecided("quotient-sdp", opt.tol, "SDP stalled");
}

double quotient_gap(const LevelElement& u, const ConeOptions& opt) {
  const auto& q = *u.system;
  const auto& p = realized_parent(q);
  const std::size_t n = u.level, nd = n * p.ambient_dim;
  const CMatrix r = hermitian_part(realize(representative(u)));
  auto dirs = level_dirs(kernel_matrices(p, q.kernel), n);
  dirs.push_back(CMatrix::Identity(nd, nd));
  const CMatrix rho_n = kron(CMatrix(CMatrix::Identity(n, n)), q.state_density);
  SdpBuilder b;
  const auto x = b.add_psd(nd);
  b.add_affine(x, r, dirs);
  b.set_objective({{x, rho_n}}, {});
  const auto res = b.solve(sdp_options(opt.tol));
  if (!res.feasible) return std::nan("");
  // <rho_n, j> = 0, so <rho_n, P - R> = t tr(rho_n) = t n.
  return (res.raw.objective - hs_inner(rho_n, r).real()) / static_cast<double>(n);
}

SystemPtr direct_sum(const SystemPtr& s, const SystemPtr& t) {
  if (!s->realized() || !t->realized()) throw InputError("direct sum: both summands need a spatial realization");
  for (const auto* x : {s.get(), t.get()})
    if (std::abs(x->unit(0) - cplx(1.0)) > 1e-12 || x->unit.tail(x->dim - 1).norm() > 1e-12)
      throw InputError("direct sum: the unit must be the first basis element");
  const std::size_t d1 = s->ambient_dim, d2 = t->ambient_dim;
  const CMatrix z1 = CMatrix::Zero(d1, d1), z2 = CMatrix::Zero(d2, d2);
  std::vector<CMatrix> basis;
  basis.push_back(direct_sum(s->basis[0], t->basis[0]));
  for (std::size_t i = 1; i < s->dim; ++i) basis.push_back(direct_sum(s->basis[i], z2));
  for (std::size_t j = 1; j < t->dim; ++j) basis.push_back(direct_sum(z1, t->basis[j]));
  basis.push_back(direct_sum(s->basis[0], CMatrix(-t->basis[0])));
  auto sys = make_concrete(s->name + "+" + t->name, d1 + d2, basis);
  auto out = std::make_shared<OperatorSystem>(*sys);
  out->parents = {s, t};
  out->provenance = "direct sum";
  return out;
}

SystemPtr coproduct(const SystemPtr& s, const SystemPtr& t) {
  const auto ds = direct_sum(s, t);
  CVector g = CVector::Zero(ds->dim);
  g(ds->dim - 1) = 1.0;
  const std::size_t d1 = s->ambient_dim, d2 = t->ambient_dim;
  const CMatrix rho = direct_sum(CMatrix(CMatrix::Identity(d1, d1) / (2.0 * d1)),
                                 CMatrix(CMatrix::Identity(d2, d2) / (2.0 * d2)));
  ConeOptions opt;
  auto q = build_quotient(make_subspace(ds, {g}), &rho, opt);
  q->kind = SystemKind::Coproduct;
  q->name = s->name + "(+)1" + t->name;
  q->parents = {ds, s, t};
  q->provenance = "coproduct: direct sum modulo span{(e,-e)}; faithful state averages the summand traces";
  return q;
}

LinearMap coproduct_embedding(const SystemPtr& cop, int which) {
  if (cop->kind != SystemKind::Coproduct) throw InputError("coproduct_embedding: not a coproduct");
  const auto& ds = *cop->parents[0];
  const auto& src = cop->parents[which == 0 ? 1 : 2];
  const std::size_t d1 = cop->parents[1]->ambient_dim, d2 = cop->parents[2]->ambient_dim;
  LinearMap m{src, cop, {}};
  for (const auto& b : src->basis) {
    const CMatrix big = which == 0 ? direct_sum(CMatrix(2.0 * b), CMatrix(CMatrix::Zero(d2, d2)))
                                   : direct_sum(CMatrix(CMatrix::Zero(d1, d1)), CMatrix(2.0 * b));
    m.images.push_back(quotient_coords(*cop, coordinates(ds, big).coeffs));
  }
  return m;
}

LinearMap coproduct_universal(const SystemPtr& cop, const LinearMap& phi, const LinearMap& psi) {
  if (cop->kind != SystemKind::Coproduct) throw InputError("coproduct_universal: not a coproduct");
  const auto& ds = *cop->parents[0];
  const auto& s = *cop->parents[1];
  const auto& t = *cop->parents[2];
  if (phi.target->ambient_dim != psi.target->ambient_dim || !phi.target->realized())
    throw InputError("coproduct_universal: maps need a common realized target");
  const std::size_t d1 = s.ambient_dim, d2 = t.ambient_dim;
  std::vector<CMatrix> images;
  for (Eigen::Index i = 0; i < cop->reps.cols(); ++i) {
    const CMatrix m = realize(ds, cop->reps.col(i).cast<cplx>());
    const CVector cs = coordinates(s, m.topLeftCorner(d1, d1)).coeffs;
    const CVector ct = coordinates(t, m.bottomRightCorner(d2, d2)).coeffs;
    images.push_back((realize(*phi.target, apply(phi, cs)) + realize(*psi.target, apply(psi, ct))) / 2.0);
  }
  return map_from_matrices(cop, phi.target, images);
}

}  // namespace ostk
