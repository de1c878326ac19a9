#include "pentagram/projective_core.hpp"

#include <algorithm>
#include <cmath>

namespace pentagram {

Matrix<double> normalize_monodromy(const Matrix<double>& M) {
  const int size = static_cast<int>(M.rows());
  const double det = determinant(M);
  if (det == 0.0 || !std::isfinite(det)) throw Error(ErrorCode::Degenerate, "monodromy is singular");
  double factor = std::pow(std::abs(det), -1.0 / size);
  if (det < 0.0) {
    if (size % 2 == 0) throw Error(ErrorCode::Degenerate, "no real SL lift of a monodromy with negative determinant");
    factor = -factor;
  }
  Matrix<double> out = M;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) *= factor;
  return out;
}

LiftedPolygon<double> lift_and_normalize(const TwistedPolygon<double>& poly) {
  const int n = poly.n;
  const int N = poly.N;
  if (static_cast<int>(poly.points.size()) != N)
    throw Error(ErrorCode::InputError, "point count differs from N");
  require_coprime(N, n + 1);
  double hadamard = 1.0;
  for (std::size_t c = 0; c < poly.monodromy.cols(); ++c) hadamard *= norm2(poly.monodromy.column(c));
  if (std::abs(determinant(poly.monodromy) - 1.0) > 1e-12 * std::max(1.0, hadamard))
    throw Error(ErrorCode::InputError, "monodromy must have determinant 1 (see normalize_monodromy)");

  const LiftedPolygon<double> raw(n, poly.points, poly.monodromy);
  std::vector<double> log_rhs(N);
  std::vector<int> sign_rhs(N);
  for (long k = 0; k < N; ++k) {
    const Matrix<double> window = raw.frame(k);
    double scale = 1.0;
    for (int c = 0; c <= n; ++c) scale *= norm2(window.column(c));
    const double w = determinant(window);
    if (scale == 0.0 || w == 0.0 || !std::isfinite(w))
      throw Error(ErrorCode::Degenerate, "window " + std::to_string(k) + " is singular");
    log_rhs[k] = -std::log(std::abs(w));
    sign_rhs[k] = w < 0.0 ? 1 : 0;
  }
  const std::vector<double> log_c = solve_cyclic_window_sum(log_rhs, n + 1);
  const auto sign_c = solve_cyclic_window_parity(sign_rhs, n + 1);
  if (!sign_c)
    throw Error(ErrorCode::SignUnsolvable,
                "no real normalised lift for this monodromy lift (product of window determinants is negative)");

  std::vector<Vector<double>> lifts(poly.points);
  for (int k = 0; k < N; ++k) {
    const double c = ((*sign_c)[k] ? -1.0 : 1.0) * std::exp(log_c[k]);
    for (double& x : lifts[k]) x *= c;
  }
  if (n % 2 == 1) {
    double lead = 0.0;
    for (double x : lifts[0]) {
      if (x != 0.0) {
        lead = x;
        break;
      }
    }
    if (lead < 0.0)
      for (auto& v : lifts)
        for (double& x : v) x = -x;
  }
  return LiftedPolygon<double>(n, std::move(lifts), poly.monodromy);
}

}  // namespace pentagram
