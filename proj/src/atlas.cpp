#include "ostk/atlas.hpp"

#include <regex>

#include "ostk/quotient.hpp"

namespace ostk {

namespace {

const cplx kI(0.0, 1.0);

std::vector<CMatrix> diag_differences(std::size_t n) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1));
  return out;
}

void push_offdiag(std::vector<CMatrix>& out, std::size_t n, std::size_t i, std::size_t j) {
  const CMatrix e = unit_matrix(n, i, j);
  out.push_back(e + e.transpose());
  out.push_back(kI * (e - e.transpose()));
}

SystemPtr with_name(const SystemPtr& s, const std::string& name, const std::string& prov) {
  auto out = std::make_shared<OperatorSystem>(*s);
  out->name = name;
  out->provenance = prov;
  return out;
}

}  // namespace

SystemPtr full_algebra(std::size_t n) {
  if (n == 0) throw InputError("full_algebra: n must be positive");
  std::vector<CMatrix> basis{CMatrix::Identity(n, n)};
  for (auto& m : diag_differences(n)) basis.push_back(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) push_offdiag(basis, n, i, j);
  return make_concrete("M" + std::to_string(n), n, basis);
}

SystemPtr diag_algebra(std::size_t n) {
  if (n == 0) throw InputError("diag_algebra: n must be positive");
  std::vector<CMatrix> basis{CMatrix::Identity(n, n)};
  for (auto& m : diag_differences(n)) basis.push_back(m);
  return make_concrete("D" + std::to_string(n), n, basis);
}

SystemPtr tridiagonal(std::size_t n) {
  if (n == 0) throw InputError("tridiagonal: n must be positive");
  std::vector<CMatrix> basis{CMatrix::Identity(n, n)};
  for (auto& m : diag_differences(n)) basis.push_back(m);
  for (std::size_t i = 0; i + 1 < n; ++i) push_offdiag(basis, n, i, i + 1);
  return make_concrete("T" + std::to_string(n), n, basis);
}

RMatrix traceless_diagonal_kernel(const OperatorSystem& parent) {
  const std::size_t n = parent.ambient_dim;
  if (!parent.realized() || parent.dim < n) throw InputError("traceless_diagonal_kernel: parent too small");
  RMatrix k = RMatrix::Zero(parent.dim, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) k(i + 1, i) = 1.0;
  return k;
}

SystemPtr snd(std::size_t n) {
  if (n == 0) throw InputError("snd: n must be positive");
  const std::size_t d = 2 * n;
  std::vector<CMatrix> basis{CMatrix::Identity(d, d)};
  for (std::size_t i = 0; i < n; ++i) push_offdiag(basis, d, 2 * i, 2 * i + 1);
  return make_concrete("S" + std::to_string(n) + "d", d, basis);
}

std::vector<CMatrix> gamma_images(std::size_t n) {
  const std::size_t d = 2 * n;
  std::vector<CMatrix> out{CMatrix::Identity(d, d)};
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix e = unit_matrix(d, 2 * i, 2 * i + 1);
    out.push_back(e);
    out.push_back(e.transpose());
  }
  return out;
}

CVector snd_generator(std::size_t n, std::size_t i, bool star) {
  if (i >= n) throw InputError("snd_generator: index out of range");
  CVector c = CVector::Zero(1 + 2 * n);
  c(1 + 2 * i) = 0.5;
  c(2 + 2 * i) = star ? 0.5 * kI : -0.5 * kI;
  return c;
}

SystemPtr canonical(const std::string& name) {
  static const std::regex pat(R"(^(full|diag|T|Snd|M)\((\d+)\)(/J\((\d+)\))?$)");
  if (name == "S2d") return with_name(snd(2), "S2d", "canonical S2d in M_2 (+) M_2");
  std::smatch m;
  if (!std::regex_match(name, m, pat)) throw InputError("unknown canonical system: " + name);
  const std::string kind = m[1];
  const std::size_t n = std::stoul(m[2]);
  if (n == 0 || n > 64) throw InputError("canonical: size out of range in " + name);
  const bool quot = m[3].matched;
  if (quot) {
    if (std::stoul(m[4]) != n || (kind != "M" && kind != "T"))
      throw InputError("unknown canonical system: " + name);
    const SystemPtr parent = kind == "M" ? full_algebra(n) : tridiagonal(n);
    if (n < 2) throw InputError("canonical: J(1) is trivial");
    Subspace j{parent, traceless_diagonal_kernel(*parent)};
    auto q = std::const_pointer_cast<OperatorSystem>(quotient_system(j));
    q->name = name;
    q->provenance = "canonical " + name + ": quotient by the trace-zero diagonal matrices";
    return q;
  }
  if (kind == "full" || kind == "M") return with_name(full_algebra(n), name, "canonical full matrix algebra");
  if (kind == "diag") return with_name(diag_algebra(n), name, "canonical diagonal algebra");
  if (kind == "T") return with_name(tridiagonal(n), name, "canonical tridiagonal system");
  return with_name(snd(n), name, "canonical Snd realized block-diagonally");
}

}  // namespace ostk
