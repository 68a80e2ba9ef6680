#pragma once

#include <cstddef>
#include <vector>

#include "ostk/matcore.hpp"
#include "ostk/sdp.hpp"

namespace ostk {

/// Re tr(coeff * X_var). Only the Hermitian part of coeff matters.
struct HTerm {
  std::size_t var;
  CMatrix coeff;
};

struct STerm {
  std::size_t scalar;
  double coeff;
};

/// Complex Hermitian SDP front end over the real engine. PSD variables of
/// complex dimension d become real blocks of dimension 2d.
class SdpBuilder {
 public:
  std::size_t add_psd(std::size_t dim);
  /// Nonnegative scalar, or a free one (split into two nonnegative parts).
  std::size_t add_scalar(bool nonneg);

  /// sum Re tr(N X) + sum c t = rhs. Returns the row index.
  std::size_t add_eq(const std::vector<HTerm>& h, const std::vector<STerm>& s, double rhs);
  /// tr(M X) = rhs with complex data: two rows (real part, imaginary part).
  void add_complex_eq(const std::vector<HTerm>& m, cplx rhs);
  /// X_var - offset lies in the real span of the Hermitian directions.
  void add_affine(std::size_t var, const CMatrix& offset, const std::vector<CMatrix>& directions);

  /// Minimize sum Re tr(N X) + sum c t.
  void set_objective(const std::vector<HTerm>& h, const std::vector<STerm>& s);

  struct Result {
    sdp::Solution raw;
    bool feasible = false;
    bool infeasible = false;
    std::vector<CMatrix> psd;
    std::vector<double> scalars;
    /// Per-row dual values (Farkas ray when infeasible, normalized to b'y = 1).
    RVector dual;
  };

  Result solve(const sdp::Options& opt = {}) const;
  /// Ignores the objective; alternating projections back up a stalled solve.
  Result feasibility(const sdp::Options& opt = {}) const;

  /// sum_r y_r herm(N_{r,var}).
  CMatrix adjoint(const RVector& y, std::size_t var) const;
  double adjoint_scalar(const RVector& y, std::size_t scalar) const;
  double rhs_dot(const RVector& y) const;

  std::size_t rows() const { return rows_.size(); }
  std::size_t psd_dim(std::size_t var) const { return psd_dims_[var]; }
  std::size_t psd_count() const { return psd_dims_.size(); }
  std::size_t scalar_count() const { return scalar_blocks_.size(); }

  /// Real-form problem (built on demand).
  sdp::Problem problem() const;

  /// Independent re-check of a candidate complex solution.
  double residual(const std::vector<CMatrix>& psd, const std::vector<double>& scalars) const;
  /// Largest violation of the Farkas inequalities: for every PSD variable
  /// lambda_max(adjoint) and for every scalar the sign condition, divided by b'y.
  double farkas_violation(const RVector& y) const;

 private:
  struct Row {
    std::vector<HTerm> h;  // Hermitian coefficients
    std::vector<STerm> s;
    double rhs;
  };
  std::vector<std::size_t> psd_dims_;
  std::vector<std::size_t> psd_block_;
  struct ScalarBlocks {
    std::size_t pos;
    std::ptrdiff_t neg;  // -1 when nonnegative
  };
  std::vector<ScalarBlocks> scalar_blocks_;
  std::size_t nblocks_ = 0;
  std::vector<Row> rows_;
  std::vector<HTerm> obj_h_;
  std::vector<STerm> obj_s_;

  Result extract(const sdp::Solution& sol) const;
};

}  // namespace ostk
