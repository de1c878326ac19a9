#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pentagram/matrix.hpp"
#include "pentagram/pentagram_invariant.hpp"
#include "pentagram/projective_core.hpp"

namespace pentagram {

// Scaling exponents of a^i in the parameter u.
//   n odd:  u = t,        a^{odd} -> u a^{odd},  a^{even} unchanged.
//   n = 2s: u = t^{1/s},  a^{2l+1} -> u^{l-s} a^{2l+1} (l = 0..s-1),
//                         a^{2l}   -> u^{l}   a^{2l}   (l = 1..s).
struct DegreeTable {
  int n = 0;
  int s = 0;
  int t_root = 1;             // u = t^{1/t_root}
  std::vector<int> exponent;  // exponent[i-1] = u-degree of a^i

  int degree(int i) const { return exponent.at(static_cast<std::size_t>(i - 1)); }
};

DegreeTable scaling_degrees(int n);

// u-degrees of the Cramer determinants implied by the homogeneity theorems:
// D_k: n+1 (n odd), 0 (n even).  D_k^i: n+2 / n+1 for i odd / even (n odd);
// the degree of a^i itself (n even).
int denominator_degree(int n);
int numerator_degree(int n, int i);

template <Scalar T>
InvariantField<T> apply_scaling(const InvariantField<T>& inv, const T& u) {
  if (is_zero(u)) throw Error(ErrorCode::ZeroParameter, "scaling parameter u = 0");
  const DegreeTable table = scaling_degrees(inv.n());
  std::vector<T> factor;
  for (int i = 1; i <= inv.n(); ++i) factor.push_back(power(u, table.degree(i)));
  InvariantField<T> out = inv;
  for (long k = 0; k < inv.N(); ++k)
    for (int i = 1; i <= inv.n(); ++i) out(k, i) *= factor[i - 1];
  return out;
}

// K_k(u): the Maurer-Cartan matrix of the scaled invariants.
template <Scalar T>
Matrix<T> scaled_mc_matrix(const InvariantField<T>& inv, long k, const T& u) {
  if (is_zero(u)) throw Error(ErrorCode::ZeroParameter, "scaling parameter u = 0");
  const DegreeTable table = scaling_degrees(inv.n());
  Matrix<T> K = mc_matrix(inv, k);
  for (int i = 1; i <= inv.n(); ++i) K(i, inv.n()) *= power(u, table.degree(i));
  return K;
}

// Coefficients c_1..c_m of det(x I - A) = x^m + c_1 x^{m-1} + ... + c_m
// (Faddeev-LeVerrier; exact over the rationals).
template <Scalar T>
std::vector<T> characteristic_polynomial(const Matrix<T>& A) {
  const std::size_t m = A.rows();
  std::vector<T> c(m, T(0));
  Matrix<T> M(m, m);  // M_0 = 0
  for (std::size_t k = 1; k <= m; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I,  c_k = -tr(A M_k)/k
    Matrix<T> next = A * M;
    const T prev = k == 1 ? T(1) : c[k - 2];
    for (std::size_t i = 0; i < m; ++i) next(i, i) += prev;
    const Matrix<T> AM = A * next;
    T trace(0);
    for (std::size_t i = 0; i < m; ++i) trace += AM(i, i);
    c[k - 1] = -trace / T(static_cast<long>(k));
    M = std::move(next);
  }
  return c;
}

// Characteristic-polynomial coefficients of K_0(u) K_1(u) ... K_{N-1}(u).
template <Scalar T>
std::vector<T> spectral_invariants(const InvariantField<T>& inv, const T& u) {
  Matrix<T> P = Matrix<T>::identity(inv.n() + 1);
  for (long k = 0; k < inv.N(); ++k) P = P * scaled_mc_matrix(inv, k, u);
  return characteristic_polynomial(P);
}

struct EntryMismatch {
  long k = 0;
  int i = 0;
  std::string lhs;
  std::string rhs;
};

struct CommutationReport {
  bool pass = false;
  std::optional<EntryMismatch> first_failure;
  double max_discrepancy = 0.0;
};

// T(scale_u(a)) == scale_u(T(a)) entrywise, exactly.
CommutationReport check_scaling_commutes(const InvariantField<Rational>& inv, const Rational& u);

struct DegreeReport {
  bool pass = false;
  std::string first_failure;  // empty when pass
};

// Q(scale_u(a)) = u^{d(Q)} Q(a) exactly for Q in {D_k, D_k^i, prod of lambda
// over a window (= 1/D_k)} at every k.
DegreeReport check_degrees(const InvariantField<Rational>& inv, const Rational& u);

struct LaxFrame {
  Matrix<double> K;     // K_k
  Matrix<double> Nmat;  // N_k = (lambda_k F_k, ..., lambda_{k+n} F_{k+n})
};

LaxFrame lax_frames(const InvariantField<double>& inv, std::span<const double> lambda, long k);
// F-vectors formed exactly, then scaled by the float lambdas.
LaxFrame lax_frames(const InvariantField<Rational>& inv, std::span<const double> lambda, long k);
LaxFrame lax_frames(const InvariantField<double>& inv, long k);

// max_k ||T(K_k) - N_k^{-1} K_k N_{k+1}||_inf, with T(K_k) = mc_matrix(T(a), k).
// F_k^{-1} K_k F^{(k+1)} is formed exactly; only the diagonal lambda factors
// (from lambda_solve_float) enter in doubles.
double zero_curvature_residual(const InvariantField<Rational>& inv);

struct ConservationReport {
  std::string check = "spectral_conservation";
  int n = 0;
  int N = 0;
  int samples = 0;  // (step, u) evaluations compared against step 0
  double max_drift = 0.0;
  bool pass = false;
  int steps_completed = 0;
  std::optional<int> aborted_at;
  std::string abort_reason;
};

// Iterates T and compares spectral invariants at every u with those of the
// initial field. Exact: drift must be 0. Float: T runs in doubles, the
// invariants of each iterate are evaluated exactly, relative drift < 1e-8.
ConservationReport conservation_report(const InvariantField<Rational>& inv, int iterations,
                                       std::span<const Rational> u_samples);
ConservationReport conservation_report_float(const InvariantField<double>& inv, int iterations,
                                             std::span<const double> u_samples);

}  // namespace pentagram
