#include "sdq/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "sdq/errors.hpp"

namespace sdq {

namespace {

constexpr double kExactIntLimit = 9007199254740992.0;  // 2^53
constexpr double kRankTolerance = 1e-12;               // relative

void check_order(int r) {
  if (r < 1) throw DomainError("order r must be >= 1");
  if (r > 60) throw DomainError("order r too large: " + std::to_string(r));
}

Eigen::MatrixXd to_eigen(const Matrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(i, j) = a(i, j);
  return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
  Matrix a(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return a;
}

void require_finite(const Matrix& a, const char* who) {
  if (a.empty()) throw DomainError(std::string(who) + ": empty matrix");
  if (!a.all_finite()) throw DomainError(std::string(who) + ": non-finite entries");
}

}  // namespace

Matrix difference_matrix(std::size_t m) {
  if (m < 1) throw DomainError("difference_matrix: m must be >= 1");
  Matrix d(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    d(i, i) = 1.0;
    if (i > 0) d(i, i - 1) = -1.0;
  }
  return d;
}

Matrix difference_power(std::size_t m, int r) {
  if (m < 1) throw DomainError("difference_power: m must be >= 1");
  check_order(r);
  // band of alternating binomials: (D^r)_{ij} = (-1)^{i-j} C(r, i-j)
  std::vector<double> binom(static_cast<std::size_t>(r) + 1, 0.0);
  binom[0] = 1.0;
  for (int n = 1; n <= r; ++n)
    for (int j = n; j >= 1; --j) binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j - 1)];
  Matrix d(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l <= std::min<std::size_t>(i, static_cast<std::size_t>(r)); ++l)
      d(i, i - l) = (l % 2 == 0 ? 1.0 : -1.0) * binom[l];
  return d;
}

Matrix inverse_difference_power(std::size_t m, int r) {
  if (m < 1) throw DomainError("inverse_difference_power: m must be >= 1");
  check_order(r);
  // First column of D^{-r} by iterated prefix sums of all-ones. The sums stay
  // exact while every value is below 2^53; the band is monotone so checking
  // the last entry per pass suffices.
  std::vector<double> band(m, 1.0);
  for (int pass = 1; pass < r; ++pass) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      acc += band[i];
      band[i] = acc;
    }
    if (band[m - 1] > kExactIntLimit)
      throw CapacityError("inverse_difference_power: entries exceed exact integer range at m=" +
                          std::to_string(m) + ", r=" + std::to_string(r));
  }
  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = band[i - j];
  return a;
}

SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  Eigen::BDCSVD<Eigen::MatrixXd> solver(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                                  static_cast<Eigen::Index>(a.cols()));
    const auto sv = solver.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) sigma(i, i) = sv(i);
    const double residual =
        (solver.matrixU() * sigma * solver.matrixV().transpose() - to_eigen(a)).norm();
    throw NumericalError("svd did not converge", residual);
  }
  SvdResult out;
  out.u = from_eigen(solver.matrixU());
  out.vt = from_eigen(solver.matrixV().transpose());
  const auto sv = solver.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  require_finite(a, "singular_values");
  Eigen::BDCSVD<Eigen::MatrixXd> solver(to_eigen(a));
  if (solver.info() != Eigen::Success) throw NumericalError("svd did not converge");
  const auto sv = solver.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

double smallest_singular_value(const Matrix& a) {
  const auto sv = singular_values(a);
  return sv.back();
}

double operator_norm(const Matrix& a) {
  const auto sv = singular_values(a);
  return sv.front();
}

Matrix pseudo_inverse(const Matrix& a) {
  require_finite(a, "pseudo_inverse");
  if (a.rows() < a.cols())
    throw DomainError("pseudo_inverse: left inverse needs rows >= cols");
  Eigen::JacobiSVD<Eigen::MatrixXd> solver(to_eigen(a),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = solver.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > kRankTolerance * sv(0)))
    throw SingularityError("pseudo_inverse: rank-deficient input (sigma_min = " +
                               std::to_string(smin) + ")",
                           smin);
  Eigen::VectorXd inv = sv.cwiseInverse();
  Eigen::MatrixXd pinv = solver.matrixV() * inv.asDiagonal() * solver.matrixU().transpose();
  return from_eigen(pinv);
}

Matrix apply_inverse_difference(Matrix a, int r) {
  check_order(r);
  for (int pass = 0; pass < r; ++pass) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        acc += a(i, j);
        a(i, j) = acc;
      }
    }
  }
  return a;
}

std::vector<double> apply_inverse_difference(std::vector<double> v, int r) {
  check_order(r);
  for (int pass = 0; pass < r; ++pass) {
    double acc = 0.0;
    for (double& x : v) {
      acc += x;
      x = acc;
    }
  }
  return v;
}

Matrix apply_inverse_difference_right(Matrix a, int r) {
  check_order(r);
  for (int pass = 0; pass < r; ++pass) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double acc = 0.0;
      for (std::size_t j = a.cols(); j-- > 0;) {
        acc += a(i, j);
        a(i, j) = acc;
      }
    }
  }
  return a;
}

Matrix sobolev_dual(const Matrix& e, int r) {
  require_finite(e, "sobolev_dual");
  check_order(r);
  if (e.rows() < e.cols()) throw DomainError("sobolev_dual: frame needs rows >= cols");
  const Matrix b = apply_inverse_difference(e, r);  // D^{-r} E
  return apply_inverse_difference_right(pseudo_inverse(b), r);
}

}  // namespace sdq
