#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/cyclic_system.hpp"
#include "pentagram/matrix.hpp"
#include "pentagram/projective_core.hpp"

namespace pentagram {

// The map on invariants. With T(V_k) = lambda_k rho_k r_k, the new invariants
// solve  N_k (+-1, T(a_k))^T = lambda_{k+n+1} F_{k+n+1}  with
// N_k = (lambda_k F_k, ..., lambda_{k+n} F_{k+n}), so by Cramer
//   T(a_k^i) = (lambda_{k+n+1}/lambda_{k+i}) D_k^i / D_k.
// Only lambda ratios enter, and those are rational in the D's.

// n = 2s:   (1, 0, a^2, 0, ..., 0, a^{2s})
// n = 2s+1: (0, a^1, 0, a^3, ..., 0, a^{2s+1})
template <Scalar T>
Vector<T> r_vector(const InvariantField<T>& inv, long k) {
  const int n = inv.n();
  Vector<T> r(n + 1, T(0));
  if (n % 2 == 0) {
    r[0] = T(1);
    for (int i = 2; i <= n; i += 2) r[i] = inv(k, i);
  } else {
    for (int i = 1; i <= n; i += 2) r[i] = inv(k, i);
  }
  return r;
}

// Complement of r in the last column of K_k: r_k + p_k = ((-1)^n, a_k^1..a_k^n).
template <Scalar T>
Vector<T> p_vector(const InvariantField<T>& inv, long k) {
  const int n = inv.n();
  Vector<T> p(n + 1, T(0));
  if (n % 2 == 0) {
    for (int i = 1; i < n; i += 2) p[i] = inv(k, i);
  } else {
    p[0] = T(-1);
    for (int i = 2; i < n; i += 2) p[i] = inv(k, i);
  }
  return p;
}

// F_k, F_{k+1}, ..., F_{k+count-1} with F_{k+j} = K_k ... K_{k+j-1} r_{k+j}.
template <Scalar T>
std::vector<Vector<T>> f_vectors(const InvariantField<T>& inv, long k, int count) {
  std::vector<Vector<T>> out;
  out.reserve(count);
  Matrix<T> prefix = Matrix<T>::identity(inv.n() + 1);
  for (int j = 0; j < count; ++j) {
    out.push_back(prefix * r_vector(inv, k + j));
    if (j + 1 < count) prefix = prefix * mc_matrix(inv, k + j);
  }
  return out;
}

template <Scalar T>
Vector<T> f_vector(const InvariantField<T>& inv, long k, int j) {
  if (j < 0) throw Error(ErrorCode::InputError, "F-vector offset must be >= 0");
  return f_vectors(inv, k, j + 1).back();
}

// (F_k, F_{k+1}, ..., F_{k+n}); its determinant is D_k in both parities
// because F_k = r_k.
template <Scalar T>
Matrix<T> cramer_matrix(const InvariantField<T>& inv, long k) {
  const auto F = f_vectors(inv, k, inv.n() + 1);
  return Matrix<T>::from_columns(F);
}

template <Scalar T>
T cramer_denominator(const InvariantField<T>& inv, long k) {
  return determinant(cramer_matrix(inv, k));
}

// D_k^i: column i of the Cramer matrix replaced by F_{k+n+1}. i ranges over
// 1..n; i = 0 gives the column paired with the fixed (-1)^n entry.
template <Scalar T>
T cramer_numerator(const InvariantField<T>& inv, long k, int i) {
  const int n = inv.n();
  if (i < 0 || i > n) throw Error(ErrorCode::InputError, "Cramer column out of range");
  auto F = f_vectors(inv, k, n + 2);
  F[i] = F[n + 1];
  F.pop_back();
  return determinant(Matrix<T>::from_columns(F));
}

// mu_j = lambda_j / lambda_0 for j = 0..N-1, from lambda_{j+n+1}/lambda_j = D_j/D_{j+1}.
template <Scalar T>
std::vector<T> lambda_ratios_from_denominators(const std::vector<T>& D, int n) {
  return cyclic_window_product_ratios<T>(D, n + 1);
}

template <Scalar T>
std::vector<T> cramer_denominators(const InvariantField<T>& inv) {
  std::vector<T> D;
  D.reserve(inv.N());
  for (long k = 0; k < inv.N(); ++k) D.push_back(cramer_denominator(inv, k));
  return D;
}

// lambda_{k+n+1} / lambda_{k+i}, exact for rationals.
template <Scalar T>
T lambda_ratio(const InvariantField<T>& inv, long k, int i) {
  require_coprime(inv.N(), inv.n() + 1);
  const auto mu = lambda_ratios_from_denominators(cramer_denominators(inv), inv.n());
  const T num = mu[floor_mod(k + inv.n() + 1, inv.N())];
  const T den = mu[floor_mod(k + i, inv.N())];
  return num / den;
}

// lambda_k themselves: eta = ln|lambda| from sum_{r=0}^{n} eta_{k+r} = -ln|D_k|,
// signs from the Z/2 system. For n odd the solution with lambda_0 > 0 is
// returned; NoRealSolution if the sign system is inconsistent.
template <Scalar T>
std::vector<double> lambda_solve_float(const InvariantField<T>& inv) {
  const int n = inv.n();
  const int N = inv.N();
  require_coprime(N, n + 1);
  std::vector<double> log_rhs(N);
  std::vector<int> sign_rhs(N);
  for (long k = 0; k < N; ++k) {
    const T d = cramer_denominator(inv, k);
    if (is_zero(d)) throw Error(ErrorCode::ZeroDenominator, "D_" + std::to_string(k) + " = 0");
    log_rhs[k] = -std::log(std::abs(to_double(d)));
    sign_rhs[k] = sign(d) < 0 ? 1 : 0;
  }
  const auto eta = solve_cyclic_window_sum(log_rhs, n + 1);
  const auto sgn = solve_cyclic_window_parity(sign_rhs, n + 1);
  if (!sgn) throw Error(ErrorCode::NoRealSolution, "product of D_k is negative; lambda has no real solution");
  std::vector<double> lambda(N);
  for (int k = 0; k < N; ++k) lambda[k] = ((*sgn)[k] ? -1.0 : 1.0) * std::exp(eta[k]);
  return lambda;
}

namespace detail {

template <Scalar T>
struct CramerSolution {
  T denominator;
  Vector<T> x;  // x_i = D_k^i / D_k, i = 0..n
};

template <Scalar T>
CramerSolution<T> cramer_solve(const InvariantField<T>& inv, long k) {
  const int n = inv.n();
  auto F = f_vectors(inv, k, n + 2);
  const Vector<T> rhs = F.back();
  F.pop_back();
  const Matrix<T> A = Matrix<T>::from_columns(F);
  T D = determinant(A);
  if (is_zero(D)) throw Error(ErrorCode::ZeroDenominator, "D_" + std::to_string(k) + " = 0");
  auto x = solve(A, rhs);
  if (!x) throw Error(ErrorCode::ZeroDenominator, "Cramer system singular at k=" + std::to_string(k));
  return {std::move(D), std::move(*x)};
}

template <Scalar T>
InvariantField<T> map_invariants(const InvariantField<T>& inv, bool parallel) {
  const int n = inv.n();
  const int N = inv.N();
  require_coprime(N, n + 1);
  std::vector<std::optional<CramerSolution<T>>> solutions(N);
  std::vector<std::string> errors(N);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < N; ++k) {
    try {
      solutions[k] = cramer_solve(inv, k);
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  }
  for (int k = 0; k < N; ++k)
    if (!errors[k].empty()) throw Error(ErrorCode::ZeroDenominator, errors[k]);

  std::vector<T> D;
  D.reserve(N);
  for (const auto& s : solutions) D.push_back(s->denominator);
  const std::vector<T> mu = lambda_ratios_from_denominators(D, n);

  InvariantField<T> out(n, N);
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < N; ++k) {
    const T& top = mu[floor_mod(k + n + 1, N)];
    for (int i = 1; i <= n; ++i) out(k, i) = top / mu[floor_mod(k + i, N)] * solutions[k]->x[i];
  }
  return out;
}

}  // namespace detail

// T on invariants; per-k Cramer solves run under OpenMP.
template <Scalar T>
InvariantField<T> pentagram_map_invariants(const InvariantField<T>& inv) {
  return detail::map_invariants(inv, true);
}

template <Scalar T>
InvariantField<T> pentagram_map_invariants_serial(const InvariantField<T>& inv) {
  return detail::map_invariants(inv, false);
}

// F_{k+j} = sum_m alpha_m F_{k+m} + residual, built by the recursion
// F_{k+j} = K_k sigma(F_{k+j-1}): a residual R with last entry c maps to
// c F_k + (c p_k + [R]^1), a residual with zero last entry maps to [R]^1,
// and existing terms shift by one offset. Odd j yields a "hat" residual
// (last entry zero, support on p's slots); even j a plain one (r's slots).
template <Scalar T>
struct Decomposition {
  int offset = 0;                       // j
  std::vector<std::pair<int, T>> terms;  // (m, alpha_m^j), ascending m
  Vector<T> residual;
  bool hat = false;
};

namespace detail {

template <Scalar T>
Vector<T> shift_down(const Vector<T>& v) {
  Vector<T> out(v.size(), T(0));
  for (std::size_t i = 1; i < v.size(); ++i) out[i] = v[i - 1];
  return out;
}

}  // namespace detail

template <Scalar T>
Decomposition<T> f_decomposition(const InvariantField<T>& inv, long k, int j) {
  if (j < 0) throw Error(ErrorCode::InputError, "decomposition offset must be >= 0");
  if (j == 0) return Decomposition<T>{0, {}, r_vector(inv, k), false};
  Decomposition<T> sub = f_decomposition(inv, k + 1, j - 1);
  Decomposition<T> out;
  out.offset = j;
  if (sub.hat) {
    out.residual = detail::shift_down(sub.residual);
    out.hat = false;
  } else {
    const T c = sub.residual.back();
    out.terms.emplace_back(0, c);
    out.residual = detail::shift_down(sub.residual);
    const Vector<T> p = p_vector(inv, k);
    for (std::size_t i = 0; i < p.size(); ++i) out.residual[i] += c * p[i];
    out.hat = true;
  }
  for (auto& [m, alpha] : sub.terms) out.terms.emplace_back(m + 1, std::move(alpha));
  return out;
}

}  // namespace pentagram
