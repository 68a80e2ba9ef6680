#include "search_util.hpp"

#include "ostk/sdp_builder.hpp"

namespace ostk::detail {

sdp::Options sdp_options(double tol) {
  sdp::Options o;
  o.tol = std::min(tol, 1e-9);
  return o;
}

std::vector<CMatrix> span_basis(const OperatorSystem& s, std::size_t m) {
  const auto dirs = level_herm_basis(s, m);
  const std::size_t nd = m * s.ambient_dim;
  RMatrix w(nd * nd, dirs.size());
  for (std::size_t k = 0; k < dirs.size(); ++k) w.col(k) = herm_to_vec(dirs[k]);
  const RMatrix q = orth_range(w);
  std::vector<CMatrix> out;
  for (Eigen::Index k = 0; k < q.cols(); ++k) out.push_back(vec_to_herm(q.col(k), nd));
  return out;
}

std::vector<CMatrix> full_span(std::size_t n) { return herm_basis(n); }

CMatrix project(const CMatrix& x, const std::vector<CMatrix>& basis) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const auto& b : basis) out += hs_inner(b, x).real() * b;
  return out;
}

CMatrix random_in_span(const std::vector<CMatrix>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix out = CMatrix::Zero(basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) out += g(rng) * b;
  return out;
}

CMatrix random_boundary(const std::vector<CMatrix>& basis, std::mt19937_64& rng) {
  const CMatrix h = random_in_span(basis, rng);
  const std::size_t nd = h.rows();
  const double lam = min_eig(h);
  if (lam >= 0.0) return CMatrix::Identity(nd, nd);
  return CMatrix::Identity(nd, nd) + h / (-lam);
}

CMatrix random_extreme(const std::vector<CMatrix>& span, std::mt19937_64& rng, double tol) {
  const std::size_t nd = span[0].rows();
  SdpBuilder b;
  const auto x = b.add_psd(nd);
  b.add_affine(x, CMatrix::Zero(nd, nd), span);
  b.add_eq({{x, CMatrix::Identity(nd, nd)}}, {}, 1.0);
  b.set_objective({{x, random_in_span(span, rng)}}, {});
  const auto r = b.solve(sdp_options(tol));
  if (!r.feasible) return CMatrix::Identity(nd, nd);
  return project(hermitian_part(r.psd[0]), span) * static_cast<double>(nd);
}

Step min_slack_step(const CMatrix& target, std::size_t nvars, const std::vector<CMatrix>& span,
                    const std::function<CMatrix(const CMatrix&, std::size_t)>& image, double tol) {
  const std::size_t nt = target.rows(), nd = span[0].rows(), ns = span.size();
  std::vector<RMatrix> cols(nvars, RMatrix(nt * nt, ns));
  for (std::size_t i = 0; i < nvars; ++i)
    for (std::size_t a = 0; a < ns; ++a) cols[i].col(a) = herm_to_vec(image(span[a], i));
  const RVector vi = herm_to_vec(CMatrix::Identity(nt, nt));
  const RVector vu = herm_to_vec(target);
  RMatrix all(nt * nt, nvars * ns + 2);
  for (std::size_t i = 0; i < nvars; ++i) all.middleCols(i * ns, ns) = cols[i];
  all.col(all.cols() - 2) = vi;
  all.col(all.cols() - 1) = vu;
  const RMatrix range = orth_range(all);

  SdpBuilder b;
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < nvars; ++i) {
    vars.push_back(b.add_psd(nd));
    b.add_affine(vars.back(), CMatrix::Zero(nd, nd), span);
  }
  const auto t = b.add_scalar(true);
  for (Eigen::Index r = 0; r < range.cols(); ++r) {
    const RVector w = range.col(r);
    std::vector<HTerm> terms;
    for (std::size_t i = 0; i < nvars; ++i) {
      const RVector g = cols[i].transpose() * w;
      CMatrix gm = CMatrix::Zero(nd, nd);
      for (std::size_t a = 0; a < ns; ++a) gm += g(a) * span[a];
      terms.push_back({vars[i], gm});
    }
    b.add_eq(terms, {{t, -w.dot(vi)}}, w.dot(vu));
  }
  b.set_objective({}, {{t, 1.0}});
  const auto res = b.solve(sdp_options(tol));
  Step st;
  if (!res.feasible) return st;
  st.ok = true;
  st.t = res.scalars[0];
  for (std::size_t i = 0; i < nvars; ++i) st.vars.push_back(project(hermitian_part(res.psd[i]), span));
  return st;
}

CMatrix apply_choi(const CMatrix& c, const CMatrix& x, std::size_t k) {
  const std::size_t d = x.rows();
  CMatrix out = CMatrix::Zero(k, k);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (x(i, j) != cplx(0.0)) out += x(i, j) * c.block(i * k, j * k, k, k);
  return out;
}

}  // namespace ostk::detail
