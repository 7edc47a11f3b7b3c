#include "lawson/phi.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace lawson {

namespace {

// Higham (2005) coefficients for the [13/13] Pade approximant.
constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                              1187353796428800.0,  129060195264000.0,   10559470521600.0,
                              670442572800.0,      33522128640.0,       1323241920.0,
                              40840800.0,          960960.0,            16380.0,
                              182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

int squarings_for(double norm, double target) {
  if (!(norm > target)) return 0;
  return std::max(0, static_cast<int>(std::ceil(std::log2(norm / target))));
}

}  // namespace

Eigen::MatrixXd expm_pade(const Eigen::MatrixXd& Z) {
  if (Z.rows() != Z.cols()) throw std::invalid_argument("expm_pade: matrix must be square");
  if (!Z.allFinite()) throw std::invalid_argument("expm_pade: non-finite entries");
  const Eigen::Index n = Z.rows();
  const double norm1 = Z.cwiseAbs().colwise().sum().maxCoeff();
  const int s = squarings_for(norm1, kTheta13);
  const Eigen::MatrixXd A = Z / std::ldexp(1.0, s);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd A2 = A * A;
  const Eigen::MatrixXd A4 = A2 * A2;
  const Eigen::MatrixXd A6 = A4 * A2;
  const double* b = kPade13;
  Eigen::MatrixXd inner = b[13] * A6 + b[11] * A4 + b[9] * A2;
  Eigen::MatrixXd U = A * (A6 * inner + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  inner = b[12] * A6 + b[10] * A4 + b[8] * A2;
  Eigen::MatrixXd V = A6 * inner + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Eigen::MatrixXd E = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) E = E * E;
  return E;
}

std::vector<Eigen::MatrixXd> phi_matrices(const Eigen::MatrixXd& Z, int max_index) {
  if (max_index < 0 || max_index > kMaxPhiIndex) throw std::out_of_range("phi_matrices: index must lie in [0, 4]");
  if (Z.rows() != Z.cols()) throw std::invalid_argument("phi_matrices: matrix must be square");
  if (!Z.allFinite()) throw std::invalid_argument("phi_matrices: non-finite entries");
  const Eigen::Index n = Z.rows();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(max_index + 1);
  out.push_back(expm_pade(Z));
  if (max_index == 0) return out;

  const double norm1 = Z.cwiseAbs().colwise().sum().maxCoeff();
  const int s = squarings_for(norm1, 0.5);
  const Eigen::MatrixXd X = Z / std::ldexp(1.0, s);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

  // Taylor: phi_j(X) = sum_m X^m / (m+j)!, Horner form, 24 terms for ||X|| <= 1/2.
  constexpr int kTerms = 24;
  std::vector<Eigen::MatrixXd> ph(max_index + 1);
  for (int j = 0; j <= max_index; ++j) {
    Eigen::MatrixXd acc = I / detail::factorial(kTerms + j);
    for (int m = kTerms - 1; m >= 0; --m) acc = X * acc + I / detail::factorial(m + j);
    ph[j] = std::move(acc);
  }
  // 2^j phi_j(2X) = phi_0(X) phi_j(X) + sum_{i=1}^{j} phi_i(X) / (j-i)!
  for (int level = 0; level < s; ++level) {
    std::vector<Eigen::MatrixXd> next(max_index + 1);
    for (int j = 0; j <= max_index; ++j) {
      Eigen::MatrixXd acc = ph[0] * ph[j];
      for (int i = 1; i <= j; ++i) acc += ph[i] / detail::factorial(j - i);
      next[j] = acc / std::ldexp(1.0, j);
    }
    ph = std::move(next);
  }
  for (int j = 1; j <= max_index; ++j) out.push_back(std::move(ph[j]));
  return out;
}

Eigen::VectorXd phi_augmented(const Eigen::MatrixXd& M, double tau, int j, const Eigen::VectorXd& v) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n || v.size() != n) throw std::invalid_argument("phi_augmented: dimension mismatch");
  if (n > kAugmentedOracleMaxSize) throw std::invalid_argument("phi_augmented: matrix too large for the oracle");
  if (j < 0 || j > kMaxPhiIndex) throw std::out_of_range("phi_augmented: index must lie in [0, 4]");
  if (j == 0) {
    Eigen::MatrixXd Z = tau * M;
    Eigen::MatrixXd E = Z.exp();
    return E * v;
  }
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n + j, n + j);
  big.topLeftCorner(n, n) = tau * M;
  big.block(0, n, n, 1) = v;
  for (int i = 0; i + 1 < j; ++i) big(n + i, n + i + 1) = 1.0;
  Eigen::MatrixXd E = big.exp();
  return E.block(0, n + j - 1, n, 1);
}

}  // namespace lawson
