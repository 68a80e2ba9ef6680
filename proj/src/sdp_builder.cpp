#include "ostk/sdp_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace ostk {

std::size_t SdpBuilder::add_psd(std::size_t dim) {
  if (dim == 0) throw InputError("SdpBuilder: PSD variable of dimension 0");
  psd_dims_.push_back(dim);
  psd_block_.push_back(nblocks_++);
  return psd_dims_.size() - 1;
}

std::size_t SdpBuilder::add_scalar(bool nonneg) {
  ScalarBlocks sb{nblocks_++, -1};
  if (!nonneg) sb.neg = static_cast<std::ptrdiff_t>(nblocks_++);
  scalar_blocks_.push_back(sb);
  return scalar_blocks_.size() - 1;
}

std::size_t SdpBuilder::add_eq(const std::vector<HTerm>& h, const std::vector<STerm>& s, double rhs) {
  Row r;
  for (const auto& t : h) {
    if (t.var >= psd_dims_.size()) throw InputError("SdpBuilder: unknown PSD variable");
    if (static_cast<std::size_t>(t.coeff.rows()) != psd_dims_[t.var] ||
        static_cast<std::size_t>(t.coeff.cols()) != psd_dims_[t.var])
      throw InputError("SdpBuilder: coefficient dimension mismatch");
    r.h.push_back({t.var, hermitian_part(t.coeff)});
  }
  for (const auto& t : s) {
    if (t.scalar >= scalar_blocks_.size()) throw InputError("SdpBuilder: unknown scalar variable");
    r.s.push_back(t);
  }
  r.rhs = rhs;
  rows_.push_back(std::move(r));
  return rows_.size() - 1;
}

void SdpBuilder::add_complex_eq(const std::vector<HTerm>& m, cplx rhs) {
  std::vector<HTerm> re, im;
  for (const auto& t : m) {
    re.push_back({t.var, t.coeff});
    im.push_back({t.var, CMatrix(cplx(0.0, -1.0) * t.coeff)});
  }
  add_eq(re, {}, rhs.real());
  add_eq(im, {}, rhs.imag());
}

void SdpBuilder::add_affine(std::size_t var, const CMatrix& offset, const std::vector<CMatrix>& directions) {
  const std::size_t d = psd_dims_.at(var);
  RMatrix w(d * d, directions.size());
  for (std::size_t k = 0; k < directions.size(); ++k) w.col(k) = herm_to_vec(hermitian_part(directions[k]));
  RMatrix comp = orth_complement(w);
  comp = comp.unaryExpr([](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; });
  const CMatrix off = hermitian_part(offset);
  for (Eigen::Index k = 0; k < comp.cols(); ++k) {
    const CMatrix b = vec_to_herm(comp.col(k), d);
    add_eq({{var, b}}, {}, hs_inner(b, off).real());
  }
}

void SdpBuilder::set_objective(const std::vector<HTerm>& h, const std::vector<STerm>& s) {
  obj_h_.clear();
  for (const auto& t : h) obj_h_.push_back({t.var, hermitian_part(t.coeff)});
  obj_s_ = s;
}

sdp::Problem SdpBuilder::problem() const {
  sdp::Problem p;
  p.blocks.assign(nblocks_, 1);
  for (std::size_t v = 0; v < psd_dims_.size(); ++v) p.blocks[psd_block_[v]] = 2 * psd_dims_[v];

  auto compile = [&](const std::vector<HTerm>& h, const std::vector<STerm>& s) {
    std::map<std::size_t, RMatrix> acc;
    auto add = [&](std::size_t block, const RMatrix& m) {
      auto it = acc.find(block);
      if (it == acc.end())
        acc.emplace(block, m);
      else
        it->second += m;
    };
    for (const auto& t : h) add(psd_block_[t.var], realify(t.coeff) / 2.0);
    for (const auto& t : s) {
      const auto& sb = scalar_blocks_[t.scalar];
      add(sb.pos, RMatrix::Constant(1, 1, t.coeff));
      if (sb.neg >= 0) add(static_cast<std::size_t>(sb.neg), RMatrix::Constant(1, 1, -t.coeff));
    }
    return acc;
  };

  if (!obj_h_.empty() || !obj_s_.empty()) {
    p.objective.clear();
    for (auto b : p.blocks) p.objective.push_back(RMatrix::Zero(b, b));
    for (auto& [block, m] : compile(obj_h_, obj_s_)) p.objective[block] = m;
  }
  for (const auto& r : rows_) {
    sdp::Constraint c;
    for (auto& [block, m] : compile(r.h, r.s)) c.terms.push_back({block, m});
    c.rhs = r.rhs;
    p.constraints.push_back(std::move(c));
  }
  return p;
}

SdpBuilder::Result SdpBuilder::extract(const sdp::Solution& sol) const {
  Result r;
  r.raw = sol;
  if (!sol.primal.empty()) {
    for (std::size_t v = 0; v < psd_dims_.size(); ++v) r.psd.push_back(complexify(sol.primal[psd_block_[v]]));
    for (const auto& sb : scalar_blocks_) {
      double t = sol.primal[sb.pos](0, 0);
      if (sb.neg >= 0) t -= sol.primal[static_cast<std::size_t>(sb.neg)](0, 0);
      r.scalars.push_back(t);
    }
  }
  if (sol.farkas)
    r.dual = *sol.farkas;
  else
    r.dual = sol.dual;
  return r;
}

SdpBuilder::Result SdpBuilder::solve(const sdp::Options& opt) const {
  Result r = extract(sdp::solve(problem(), opt));
  r.feasible = r.raw.status == sdp::Status::Optimal;
  r.infeasible = r.raw.status == sdp::Status::Infeasible;
  return r;
}

SdpBuilder::Result SdpBuilder::feasibility(const sdp::Options& opt) const {
  const auto f = sdp::feasibility(problem(), opt);
  sdp::Solution sol = f.raw;
  if (f.feasible) sol.primal = f.witness;
  Result r = extract(sol);
  r.feasible = f.feasible;
  r.infeasible = f.infeasible;
  if (f.certificate) r.dual = *f.certificate;
  return r;
}

CMatrix SdpBuilder::adjoint(const RVector& y, std::size_t var) const {
  const std::size_t d = psd_dims_.at(var);
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& t : rows_[i].h)
      if (t.var == var) out += y(i) * t.coeff;
  return out;
}

double SdpBuilder::adjoint_scalar(const RVector& y, std::size_t scalar) const {
  double out = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& t : rows_[i].s)
      if (t.scalar == scalar) out += y(i) * t.coeff;
  return out;
}

double SdpBuilder::rhs_dot(const RVector& y) const {
  double out = 0.0;
  for (std::size_t i = 0; i < rows_.size(); ++i) out += y(i) * rows_[i].rhs;
  return out;
}

double SdpBuilder::residual(const std::vector<CMatrix>& psd, const std::vector<double>& scalars) const {
  double worst = 0.0;
  for (const auto& r : rows_) {
    double lhs = 0.0, norm2 = 0.0;
    for (const auto& t : r.h) {
      lhs += hs_inner(t.coeff, psd.at(t.var)).real();
      norm2 += t.coeff.squaredNorm();
    }
    for (const auto& t : r.s) {
      lhs += t.coeff * scalars.at(t.scalar);
      norm2 += t.coeff * t.coeff;
    }
    worst = std::max(worst, std::abs(lhs - r.rhs) / (1.0 + std::sqrt(norm2)));
  }
  return worst;
}

double SdpBuilder::farkas_violation(const RVector& y) const {
  const double by = rhs_dot(y);
  if (!(by > 0.0)) return std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < psd_dims_.size(); ++v) worst = std::max(worst, max_eig(adjoint(y, v)));
  for (std::size_t s = 0; s < scalar_blocks_.size(); ++s) {
    const double a = adjoint_scalar(y, s);
    worst = std::max(worst, scalar_blocks_[s].neg >= 0 ? std::abs(a) : a);
  }
  return worst / by;
}

}  // namespace ostk
