#pragma once

// Quantum channel representation: a Kraus list together with the derived
// superoperator (column-stacking convention) and Choi matrix.  Values are
// computed once at construction and immutable afterwards.

#include "mbqc/linalg.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace mbqc {

class ChannelRepr {
 public:
  explicit ChannelRepr(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty())
      throw std::invalid_argument("ChannelRepr: empty Kraus list");
    d_out_ = static_cast<int>(kraus_.front().rows());
    d_in_ = static_cast<int>(kraus_.front().cols());
    for (const Matrix& k : kraus_)
      if (k.rows() != d_out_ || k.cols() != d_in_)
        throw std::invalid_argument("ChannelRepr: inconsistent Kraus shapes");

    // Superoperator with vec(.) stacking columns: vec(K A K^dag) =
    // (conj(K) (x) K) vec(A).
    superop_ = Matrix::Zero(d_out_ * d_out_, d_in_ * d_in_);
    for (const Matrix& k : kraus_) superop_ += kron(k.conjugate(), k);

    // Choi matrix C = sum_ij E_ij (x) Lambda(E_ij); CP iff C is PSD and
    // Tr C = d_in for a trace-preserving map.
    choi_ = Matrix::Zero(d_in_ * d_out_, d_in_ * d_out_);
    for (int i = 0; i < d_in_; ++i)
      for (int j = 0; j < d_in_; ++j) {
        Matrix eij = Matrix::Zero(d_in_, d_in_);
        eij(i, j) = 1.0;
        choi_ += kron(eij, apply(eij));
      }
  }

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& superoperator() const { return superop_; }
  const Matrix& choi() const { return choi_; }

  /// Action on an arbitrary (not necessarily Hermitian) matrix, by linearity.
  Matrix apply(const Matrix& a) const {
    if (a.rows() != d_in_ || a.cols() != d_in_)
      throw std::invalid_argument("ChannelRepr::apply: wrong input dimension");
    Matrix out = Matrix::Zero(d_out_, d_out_);
    for (const Matrix& k : kraus_) out += k * a * k.adjoint();
    return out;
  }

 private:
  std::vector<Matrix> kraus_;
  int d_in_ = 0;
  int d_out_ = 0;
  Matrix superop_;
  Matrix choi_;
};

struct ChannelValidation {
  bool trace_preserving = false;
  bool completely_positive = false;
  double completeness_deviation = 0.0;  // max-norm of sum K^dag K - I
  double min_choi_eigenvalue = 0.0;
  bool ok() const { return trace_preserving && completely_positive; }
};

inline ChannelValidation validate_channel(const ChannelRepr& ch,
                                          double tolerance = tol::channel) {
  ChannelValidation v;
  Matrix acc = Matrix::Zero(ch.d_in(), ch.d_in());
  for (const Matrix& k : ch.kraus()) acc += k.adjoint() * k;
  v.completeness_deviation = max_abs(acc - identity(ch.d_in()));
  v.trace_preserving = v.completeness_deviation <= tolerance;

  const Matrix herm = 0.5 * (ch.choi() + ch.choi().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  v.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  v.completely_positive = v.min_choi_eigenvalue >= -tolerance &&
                          max_abs(ch.choi() - herm) <= tolerance;
  return v;
}

}  // namespace mbqc
