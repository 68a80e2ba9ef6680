#include "ostk/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace ostk::sdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double frob_inner(const RMatrix& a, const RMatrix& b) { return a.cwiseProduct(b).sum(); }

// tr(a * k) for square a, k.
double trace_prod(const RMatrix& a, const RMatrix& k) { return a.cwiseProduct(k.transpose()).sum(); }

RMatrix sym(const RMatrix& m) { return (m + m.transpose()) / 2.0; }

std::size_t svec_len(std::size_t n) { return n * (n + 1) / 2; }

void svec_into(const RMatrix& m, RVector& out, Eigen::Index offset) {
  const double s2 = std::sqrt(2.0);
  Eigen::Index k = offset;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i) out(k++) = (i == j) ? m(i, i) : s2 * (m(i, j) + m(j, i)) / 2.0;
}

RMatrix smat(const RVector& v, Eigen::Index offset, std::size_t n) {
  const double s2 = std::sqrt(2.0);
  RMatrix m(n, n);
  Eigen::Index k = offset;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const double x = v(k++);
      if (i == j) {
        m(i, i) = x;
      } else {
        m(i, j) = x / s2;
        m(j, i) = x / s2;
      }
    }
  return m;
}

// Largest alpha with m + alpha * d PSD, given m positive definite.
double max_step(const RMatrix& m, const RMatrix& d) {
  Eigen::LLT<RMatrix> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  const RMatrix linv_d = llt.matrixL().solve(d);
  const RMatrix z = llt.matrixL().solve(linv_d.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(z), Eigen::EigenvaluesOnly);
  const double lam = es.eigenvalues()(0);
  return lam >= 0.0 ? kInf : -1.0 / lam;
}

double scalar_step(double v, double dv) { return dv >= 0.0 ? kInf : -v / dv; }

struct Entry {
  std::size_t con;
  RMatrix a;
};

// Normalized, full-row-rank copy of the problem the interior point iterates on.
struct Reduced {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Entry>> per_block;
  std::vector<RMatrix> c;
  RVector b;
  std::vector<std::size_t> kept;  // original index of each reduced row
  RVector row_scale;              // reduced row = original row * row_scale
  double b_scale = 1.0;
  double c_scale = 1.0;
  std::optional<RVector> inconsistent;  // exact Farkas vector from dependent rows
};

RMatrix vectorize_constraints(const Problem& p, const std::vector<std::size_t>& offsets, std::size_t n_total) {
  RMatrix a = RMatrix::Zero(p.constraints.size(), n_total);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    RVector row = RVector::Zero(n_total);
    for (const auto& t : p.constraints[i].terms) svec_into(t.coeff, row, offsets[t.block]);
    a.row(i) = row.transpose();
  }
  return a;
}

Reduced reduce(const Problem& p) {
  Reduced r;
  r.dims = p.blocks;
  const std::size_t nb = p.blocks.size();
  std::vector<std::size_t> offsets(nb, 0);
  std::size_t n_total = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    offsets[b] = n_total;
    n_total += svec_len(p.blocks[b]);
  }
  const std::size_t m = p.constraints.size();
  RVector bvec(m);
  for (std::size_t i = 0; i < m; ++i) bvec(i) = p.constraints[i].rhs;

  const RMatrix avec = vectorize_constraints(p, offsets, n_total);
  RVector norms(m);
  for (std::size_t i = 0; i < m; ++i) norms(i) = avec.row(i).norm();

  // Independent rows via pivoted QR of A^T (rows normalized first).
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < m; ++i)
    if (norms(i) > 1e-14) nonzero.push_back(i);

  std::vector<std::size_t> kept;
  if (!nonzero.empty()) {
    RMatrix at(n_total, nonzero.size());
    for (std::size_t k = 0; k < nonzero.size(); ++k) at.col(k) = avec.row(nonzero[k]).transpose() / norms(nonzero[k]);
    Eigen::ColPivHouseholderQR<RMatrix> qr(at);
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    for (Eigen::Index k = 0; k < rank; ++k) kept.push_back(nonzero[qr.colsPermutation().indices()(k)]);
    std::sort(kept.begin(), kept.end());
  }

  // Consistency of the dropped rows.
  {
    RMatrix ak(n_total, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) ak.col(k) = avec.row(kept[k]).transpose();
    Eigen::ColPivHouseholderQR<RMatrix> qr(ak);
    double worst = 0.0;
    std::optional<RVector> cert;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
      RVector coef = kept.empty() ? RVector() : RVector(qr.solve(RVector(avec.row(i).transpose())));
      double predicted = 0.0;
      for (std::size_t k = 0; k < kept.size(); ++k) predicted += coef(k) * bvec(kept[k]);
      const double mismatch = bvec(i) - predicted;
      const double rel = std::abs(mismatch) / (1.0 + std::abs(bvec(i)) + std::abs(predicted));
      if (rel > 1e-9 && rel > worst) {
        worst = rel;
        RVector y = RVector::Zero(m);
        y(i) = 1.0;
        for (std::size_t k = 0; k < kept.size(); ++k) y(kept[k]) -= coef(k);
        y /= mismatch;  // b'y = 1
        cert = y;
      }
    }
    r.inconsistent = cert;
  }

  r.kept = kept;
  r.row_scale = RVector(kept.size());
  r.b = RVector(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    r.row_scale(k) = 1.0 / norms(kept[k]);
    r.b(k) = bvec(kept[k]) * r.row_scale(k);
  }
  r.b_scale = std::max(1.0, r.b.size() > 0 ? r.b.cwiseAbs().maxCoeff() : 0.0);
  r.b /= r.b_scale;

  r.per_block.assign(nb, {});
  for (std::size_t k = 0; k < kept.size(); ++k)
    for (const auto& t : p.constraints[kept[k]].terms)
      if (t.coeff.cwiseAbs().maxCoeff() > 0.0) r.per_block[t.block].push_back({k, t.coeff * r.row_scale(k)});

  double cnorm = 0.0;
  r.c.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    r.c[b] = p.objective.empty() ? RMatrix::Zero(p.blocks[b], p.blocks[b]) : sym(p.objective[b]);
    cnorm = std::max(cnorm, r.c[b].cwiseAbs().maxCoeff());
  }
  r.c_scale = std::max(1.0, cnorm);
  for (auto& c : r.c) c /= r.c_scale;
  return r;
}

struct Iterate {
  std::vector<RMatrix> x, s;
  RVector y;
  double tau = 1.0, kappa = 1.0;
};

struct Direction {
  std::vector<RMatrix> dx, ds;
  RVector dy;
  double dtau = 0.0, dkappa = 0.0;
};

class Ipm {
 public:
  Ipm(const Reduced& r, const Options& opt) : r_(r), opt_(opt), m_(r.b.size()) {
    for (auto d : r_.dims) nu_ += static_cast<double>(d);
  }

  RVector amap(const std::vector<RMatrix>& x) const {
    RVector out = RVector::Zero(m_);
    for (std::size_t b = 0; b < r_.dims.size(); ++b)
      for (const auto& e : r_.per_block[b]) out(e.con) += frob_inner(e.a, x[b]);
    return out;
  }

  RMatrix aadj(const RVector& y, std::size_t b) const {
    RMatrix out = RMatrix::Zero(r_.dims[b], r_.dims[b]);
    for (const auto& e : r_.per_block[b]) out += y(e.con) * e.a;
    return out;
  }

  double cdot(const std::vector<RMatrix>& x) const {
    double v = 0.0;
    for (std::size_t b = 0; b < x.size(); ++b) v += frob_inner(r_.c[b], x[b]);
    return v;
  }

  Solution run(Iterate& it);

 private:
  const Reduced& r_;
  const Options& opt_;
  std::size_t m_;
  double nu_ = 0.0;
};

Solution Ipm::run(Iterate& it) {
  const std::size_t nb = r_.dims.size();
  Solution sol;
  it.x.clear();
  it.s.clear();
  for (auto d : r_.dims) {
    it.x.push_back(RMatrix::Identity(d, d));
    it.s.push_back(RMatrix::Identity(d, d));
  }
  it.y = RVector::Zero(m_);
  it.tau = 1.0;
  it.kappa = 1.0;

  const double bnorm = r_.b.size() > 0 ? r_.b.cwiseAbs().maxCoeff() : 0.0;
  double cnorm = 0.0;
  for (const auto& c : r_.c) cnorm = std::max(cnorm, c.norm());

  for (int iter = 0; iter < opt_.max_iter; ++iter) {
    sol.iterations = iter;
    const RVector ax = amap(it.x);
    const RVector rp = r_.b * it.tau - ax;
    std::vector<RMatrix> rd(nb);
    for (std::size_t b = 0; b < nb; ++b) rd[b] = aadj(it.y, b) + it.s[b] - r_.c[b] * it.tau;
    const double cx = cdot(it.x);
    const double by = r_.b.dot(it.y);
    const double rg = it.kappa + cx - by;
    double xs = 0.0;
    for (std::size_t b = 0; b < nb; ++b) xs += frob_inner(it.x[b], it.s[b]);
    const double mu = (xs + it.tau * it.kappa) / (nu_ + 1.0);

    // Convergence on the de-homogenized iterate.
    {
      const double pres = (m_ > 0 ? (rp / it.tau).cwiseAbs().maxCoeff() : 0.0) / (1.0 + bnorm);
      double dres = 0.0;
      for (std::size_t b = 0; b < nb; ++b) dres = std::max(dres, (rd[b] / it.tau).norm());
      dres /= (1.0 + cnorm);
      const double gap = std::abs(cx - by) / it.tau / (1.0 + std::abs(cx / it.tau) + std::abs(by / it.tau));
      if (pres <= opt_.tol && dres <= opt_.tol && gap <= opt_.tol) {
        sol.status = Status::Optimal;
        return sol;
      }
    }
    // Infeasibility rays.
    if (by > 0.0) {
      double lam = -kInf;
      for (std::size_t b = 0; b < nb; ++b) lam = std::max(lam, max_eig(RMatrix(aadj(it.y, b))));
      if (lam <= opt_.tol * by) {
        sol.status = Status::Infeasible;
        return sol;
      }
    }
    if (cx < 0.0) {
      bool psd = true;
      for (std::size_t b = 0; b < nb; ++b) psd = psd && min_eig(it.x[b]) >= 0.0;
      const double viol = m_ > 0 ? ax.cwiseAbs().maxCoeff() : 0.0;
      if (psd && viol <= opt_.tol * (-cx)) {
        sol.status = Status::Unbounded;
        return sol;
      }
    }
    if (mu < 1e-30 || !std::isfinite(mu)) break;

    // Schur complement data.
    std::vector<RMatrix> sinv(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      Eigen::LLT<RMatrix> llt(it.s[b]);
      sinv[b] = llt.solve(RMatrix::Identity(r_.dims[b], r_.dims[b]));
      sinv[b] = sym(sinv[b]);
    }
    RMatrix schur = RMatrix::Zero(m_, m_);
    RVector u = RVector::Zero(m_), v = RVector::Zero(m_);
    double w = 0.0, z = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& entries = r_.per_block[b];
      std::vector<RMatrix> k(entries.size());
      for (std::size_t j = 0; j < entries.size(); ++j) k[j] = it.x[b] * entries[j].a * sinv[b];
      for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i; j < entries.size(); ++j) {
          const double val = trace_prod(entries[i].a, k[j]);
          schur(entries[i].con, entries[j].con) += val;
          if (i != j) schur(entries[j].con, entries[i].con) += val;
        }
      const RMatrix kc = it.x[b] * r_.c[b] * sinv[b];
      const RMatrix kr = it.x[b] * rd[b] * sinv[b];
      for (const auto& e : entries) {
        u(e.con) += trace_prod(e.a, kc);
        v(e.con) += trace_prod(e.a, kr);
      }
      w += trace_prod(r_.c[b], kc);
      z += trace_prod(r_.c[b], kr);
    }
    schur = (schur + schur.transpose()) / 2.0;
    Eigen::LDLT<RMatrix> fact;
    if (m_ > 0) {
      const double reg = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      fact.compute(schur + reg * RMatrix::Identity(m_, m_));
    }
    auto msolve = [&](const RVector& rhs) -> RVector { return m_ > 0 ? RVector(fact.solve(rhs)) : RVector(); };
    const RVector qv = msolve(u + r_.b);

    auto direction = [&](const std::vector<RMatrix>& g, double rkappa, double eta) {
      Direction d;
      const RVector h = amap(g);
      const double cg = cdot(g);
      const RVector r1 = eta * rp - h - eta * v;
      const double r2 = -eta * rg - rkappa / it.tau - cg - eta * z;
      const RVector pv = msolve(r1);
      const double denom = (m_ > 0 ? (u - r_.b).dot(qv) : 0.0) - (w + it.kappa / it.tau);
      d.dtau = (r2 - (m_ > 0 ? (u - r_.b).dot(pv) : 0.0)) / denom;
      d.dy = m_ > 0 ? RVector(pv + qv * d.dtau) : RVector();
      d.dx.resize(nb);
      d.ds.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        d.ds[b] = -aadj(d.dy, b) + r_.c[b] * d.dtau - eta * rd[b];
        d.dx[b] = g[b] - sym(it.x[b] * d.ds[b] * sinv[b]);
      }
      d.dkappa = (rkappa - it.kappa * d.dtau) / it.tau;
      return d;
    };
    auto step_to_boundary = [&](const Direction& d) {
      double a = kInf;
      for (std::size_t b = 0; b < nb; ++b) {
        a = std::min(a, max_step(it.x[b], d.dx[b]));
        a = std::min(a, max_step(it.s[b], d.ds[b]));
      }
      a = std::min(a, scalar_step(it.tau, d.dtau));
      a = std::min(a, scalar_step(it.kappa, d.dkappa));
      return a;
    };

    // Predictor.
    std::vector<RMatrix> g(nb);
    for (std::size_t b = 0; b < nb; ++b) g[b] = -it.x[b];
    const Direction aff = direction(g, -it.tau * it.kappa, 1.0);
    const double a_aff = std::min(1.0, step_to_boundary(aff));
    double xs_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b)
      xs_aff += frob_inner(it.x[b] + a_aff * aff.dx[b], it.s[b] + a_aff * aff.ds[b]);
    const double mu_aff =
        (xs_aff + (it.tau + a_aff * aff.dtau) * (it.kappa + a_aff * aff.dkappa)) / (nu_ + 1.0);
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (std::size_t b = 0; b < nb; ++b)
      g[b] = sigma * mu * sinv[b] - it.x[b] - sym(aff.dx[b] * aff.ds[b] * sinv[b]);
    const double rk = sigma * mu - it.tau * it.kappa - aff.dtau * aff.dkappa;
    Direction d = direction(g, rk, 1.0 - sigma);
    double amax = step_to_boundary(d);
    if (!std::isfinite(d.dtau) || amax <= 1e-12) {
      // Fall back to a pure centering step.
      for (std::size_t b = 0; b < nb; ++b) g[b] = mu * sinv[b] - it.x[b];
      d = direction(g, mu - it.tau * it.kappa, 0.0);
      amax = step_to_boundary(d);
      if (!std::isfinite(d.dtau) || amax <= 1e-12) break;
    }
    const double alpha = std::min(1.0, 0.98 * amax);
    for (std::size_t b = 0; b < nb; ++b) {
      it.x[b] = sym(it.x[b] + alpha * d.dx[b]);
      it.s[b] = sym(it.s[b] + alpha * d.ds[b]);
    }
    if (m_ > 0) it.y += alpha * d.dy;
    it.tau += alpha * d.dtau;
    it.kappa += alpha * d.dkappa;
    if (it.tau <= 0.0 || it.kappa <= 0.0) break;
  }
  sol.status = Status::Stalled;
  return sol;
}

}  // namespace

std::size_t Problem::total_dim() const {
  std::size_t n = 0;
  for (auto d : blocks) n += d;
  return n;
}

void Problem::validate() const {
  if (!objective.empty() && objective.size() != blocks.size())
    throw InputError("sdp: objective must have one matrix per block");
  for (std::size_t b = 0; b < objective.size(); ++b)
    if (static_cast<std::size_t>(objective[b].rows()) != blocks[b] ||
        static_cast<std::size_t>(objective[b].cols()) != blocks[b])
      throw InputError("sdp: objective block dimension mismatch");
  for (const auto& c : constraints)
    for (const auto& t : c.terms) {
      if (t.block >= blocks.size()) throw InputError("sdp: constraint refers to unknown block");
      if (static_cast<std::size_t>(t.coeff.rows()) != blocks[t.block] ||
          static_cast<std::size_t>(t.coeff.cols()) != blocks[t.block])
        throw InputError("sdp: constraint block dimension mismatch");
    }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "OPTIMAL";
    case Status::Infeasible: return "INFEASIBLE";
    case Status::Unbounded: return "UNBOUNDED";
    case Status::Stalled: return "STALLED";
  }
  return "?";
}

double constraint_residual(const Problem& p, const std::vector<RMatrix>& x) {
  double worst = 0.0;
  for (const auto& c : p.constraints) {
    double lhs = 0.0, norm2 = 0.0;
    for (const auto& t : c.terms) {
      lhs += frob_inner(t.coeff, x[t.block]);
      norm2 += t.coeff.squaredNorm();
    }
    worst = std::max(worst, std::abs(lhs - c.rhs) / (1.0 + std::sqrt(norm2)));
  }
  return worst;
}

double min_block_eig(const std::vector<RMatrix>& x) {
  double lam = kInf;
  for (const auto& b : x)
    if (b.size() > 0) lam = std::min(lam, min_eig(b));
  return lam;
}

std::vector<RMatrix> adjoint_map(const Problem& p, const RVector& y) {
  std::vector<RMatrix> out;
  for (auto d : p.blocks) out.push_back(RMatrix::Zero(d, d));
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    for (const auto& t : p.constraints[i].terms) out[t.block] += y(i) * t.coeff;
  return out;
}

double farkas_violation(const Problem& p, const RVector& y) {
  double by = 0.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) by += y(i) * p.constraints[i].rhs;
  if (by <= 0.0) return kInf;
  double lam = -kInf;
  for (const auto& blk : adjoint_map(p, y))
    if (blk.size() > 0) lam = std::max(lam, max_eig(sym(blk)));
  return lam / by;
}

namespace {

Solution solve_reduced(const Problem& p, const Reduced& r, const Options& opt) {
  const std::size_t m = p.constraints.size();
  Solution sol;
  Iterate it;
  Ipm ipm(r, opt);
  sol = ipm.run(it);

  // Map reduced dual back to original constraint indexing.
  auto expand = [&](const RVector& yr) {
    RVector y = RVector::Zero(m);
    for (std::size_t k = 0; k < r.kept.size(); ++k) y(r.kept[k]) = yr(k) * r.row_scale(k);
    return y;
  };

  if (sol.status == Status::Optimal || sol.status == Status::Stalled) {
    const double tau = it.tau > 0.0 ? it.tau : 1.0;
    sol.primal.clear();
    sol.slack.clear();
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      sol.primal.push_back(it.x[b] * (r.b_scale / tau));
      sol.slack.push_back(it.s[b] * (r.c_scale / tau));
    }
    sol.dual = expand(it.y) * (r.c_scale / tau);
    double obj = 0.0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
      if (!p.objective.empty()) obj += frob_inner(p.objective[b], sol.primal[b]);
    double dobj = 0.0;
    for (std::size_t i = 0; i < m; ++i) dobj += sol.dual(i) * p.constraints[i].rhs;
    sol.objective = obj;
    sol.dual_objective = dobj;
    sol.residuals.primal = constraint_residual(p, sol.primal);
    const auto aty = adjoint_map(p, sol.dual);
    double dres = 0.0, cn = 0.0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      const RMatrix c = p.objective.empty() ? RMatrix::Zero(p.blocks[b], p.blocks[b]) : p.objective[b];
      dres = std::max(dres, (c - aty[b] - sol.slack[b]).norm());
      cn = std::max(cn, c.norm());
    }
    sol.residuals.dual = dres / (1.0 + cn);
    sol.residuals.gap = std::abs(obj - dobj) / (1.0 + std::abs(obj) + std::abs(dobj));
    if (sol.status == Status::Stalled) sol.message = "interior-point iteration stalled";
  } else if (sol.status == Status::Infeasible) {
    RVector y = expand(it.y);
    double by = 0.0;
    for (std::size_t i = 0; i < m; ++i) by += y(i) * p.constraints[i].rhs;
    y /= by;
    sol.farkas = y;
    sol.dual = y;
    sol.message = "primal infeasible";
  } else {
    sol.primal.clear();
    for (std::size_t b = 0; b < p.blocks.size(); ++b) sol.primal.push_back(it.x[b]);
    sol.message = "dual infeasible (primal unbounded or infeasible)";
  }
  return sol;
}

}  // namespace

Solution solve(const Problem& p, const Options& opt) {
  p.validate();
  if (!(opt.tol > 0.0)) throw InputError("sdp: tolerance must be positive");
  if (p.total_dim() > opt.max_dim)
    throw InputError("sdp: total variable dimension " + std::to_string(p.total_dim()) + " exceeds cap " +
                     std::to_string(opt.max_dim));

  const Reduced r = reduce(p);
  Solution sol;
  if (r.inconsistent) {
    sol.status = Status::Infeasible;
    sol.farkas = r.inconsistent;
    sol.dual = *r.inconsistent;
    sol.message = "linearly dependent constraints with inconsistent right-hand sides";
    return sol;
  }
  // The stopping test runs on the rescaled problem; tighten it until the
  // residuals in original coordinates meet the requested tolerance.
  Options inner = opt;
  for (int attempt = 0; attempt < 4; ++attempt, inner.tol /= 10.0) {
    Solution next = solve_reduced(p, r, inner);
    if (attempt > 0 && next.status != Status::Optimal) break;
    sol = std::move(next);
    if (sol.status != Status::Optimal) break;
    const auto& res = sol.residuals;
    if (std::max({res.primal, res.dual, res.gap}) <= opt.tol) break;
  }

  return sol;
}

namespace {

// Alternating projections between the affine constraint set and the PSD cone.
std::optional<std::vector<RMatrix>> alternating_projection(const Problem& p, const Options& opt,
                                                           const std::vector<RMatrix>* start) {
  const std::size_t nb = p.blocks.size();
  std::vector<std::size_t> offsets(nb, 0);
  std::size_t n_total = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    offsets[b] = n_total;
    n_total += svec_len(p.blocks[b]);
  }
  const RMatrix a = vectorize_constraints(p, offsets, n_total);
  RVector bvec(p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) bvec(i) = p.constraints[i].rhs;
  const auto cod = a.completeOrthogonalDecomposition();

  RVector x = RVector::Zero(n_total);
  if (start) {
    for (std::size_t b = 0; b < nb; ++b) svec_into((*start)[b], x, offsets[b]);
  }
  std::vector<RMatrix> blocks(nb);
  for (int k = 0; k < opt.projection_iters; ++k) {
    if (a.rows() > 0) x -= cod.solve(RVector(a * x - bvec));
    double worst_neg = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const RMatrix m = smat(x, offsets[b], p.blocks[b]);
      Eigen::SelfAdjointEigenSolver<RMatrix> es(m);
      worst_neg = std::min(worst_neg, es.eigenvalues()(0));
      blocks[b] = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() * es.eigenvectors().transpose();
      svec_into(blocks[b], x, offsets[b]);
    }
    if (worst_neg >= -opt.tol && constraint_residual(p, blocks) <= opt.tol) return blocks;
  }
  return std::nullopt;
}

}  // namespace

Feasibility feasibility(const Problem& p, const Options& opt) {
  Problem q = p;
  q.objective.clear();
  Feasibility f;
  f.raw = solve(q, opt);
  if (f.raw.status == Status::Optimal) {
    f.feasible = true;
    f.witness = f.raw.primal;
    return f;
  }
  if (f.raw.status == Status::Infeasible) {
    f.infeasible = true;
    f.certificate = f.raw.farkas;
    return f;
  }
  auto ap = alternating_projection(q, opt, f.raw.primal.empty() ? nullptr : &f.raw.primal);
  if (ap) {
    f.feasible = true;
    f.witness = *ap;
  }
  return f;
}

void write_text(std::ostream& os, const Problem& p) {
  os << std::setprecision(17);
  os << "blocks " << p.blocks.size() << "\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b) os << (b ? " " : "") << p.blocks[b];
  os << "\n";
  auto write_matrix = [&](const RMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
      os << "\n";
    }
  };
  os << "objective\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    os << "block " << b << "\n";
    write_matrix(p.objective.empty() ? RMatrix::Zero(p.blocks[b], p.blocks[b]) : p.objective[b]);
  }
  os << "constraints " << p.constraints.size() << "\n";
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    os << "constraint " << i << " rhs " << p.constraints[i].rhs << "\n";
    for (const auto& t : p.constraints[i].terms) {
      os << "block " << t.block << "\n";
      write_matrix(t.coeff);
    }
  }
}

}  // namespace ostk::sdp
