#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/cyclic_system.hpp"
#include "pentagram/error.hpp"
#include "pentagram/matrix.hpp"
#include "pentagram/rational.hpp"

namespace pentagram {

inline long floor_mod(long k, long N) {
  const long r = k % N;
  return r < 0 ? r + N : r;
}

inline long floor_div(long k, long N) { return (k - floor_mod(k, N)) / N; }

// A twisted N-gon in RP^n given by homogeneous representatives x_0..x_{N-1}
// and a monodromy M in SL(n+1): x_{k+N} = M x_k.
template <Scalar T>
struct TwistedPolygon {
  int n = 0;
  int N = 0;
  std::vector<Vector<T>> points;
  Matrix<T> monodromy;
};

// Quasi-periodic sequence of lifts V_k in R^{n+1}, V_{k+N} = M V_k. The
// normalisation det(V_k..V_{k+n}) = 1 is what lift_and_normalize produces
// and extract_invariants checks; the container itself does not enforce it.
template <Scalar T>
class LiftedPolygon {
 public:
  LiftedPolygon() = default;

  LiftedPolygon(int n, std::vector<Vector<T>> lifts, Matrix<T> monodromy)
      : n_(n), lifts_(std::move(lifts)), monodromy_(std::move(monodromy)) {
    if (n_ < 1 || lifts_.empty())
      throw Error(ErrorCode::InputError, "lifted polygon needs n >= 1 and at least one vertex");
    for (const auto& v : lifts_)
      if (v.size() != static_cast<std::size_t>(n_ + 1))
        throw Error(ErrorCode::InputError, "lift has wrong dimension");
    if (monodromy_.rows() != static_cast<std::size_t>(n_ + 1) || monodromy_.cols() != monodromy_.rows())
      throw Error(ErrorCode::InputError, "monodromy has wrong shape");
    auto inv = inverse(monodromy_);
    if (!inv) throw Error(ErrorCode::Degenerate, "monodromy is singular");
    monodromy_inverse_ = std::move(*inv);
  }

  int n() const { return n_; }
  int N() const { return static_cast<int>(lifts_.size()); }
  const std::vector<Vector<T>>& lifts() const { return lifts_; }
  const Matrix<T>& monodromy() const { return monodromy_; }

  // V_j for any integer j, resolved through powers of the monodromy.
  Vector<T> vertex(long j) const {
    const long N = static_cast<long>(lifts_.size());
    long turns = floor_div(j, N);
    Vector<T> v = lifts_[static_cast<std::size_t>(floor_mod(j, N))];
    for (; turns > 0; --turns) v = monodromy_ * v;
    for (; turns < 0; ++turns) v = monodromy_inverse_ * v;
    return v;
  }

  // Moving frame rho_k = (V_k, ..., V_{k+n}).
  Matrix<T> frame(long k) const {
    Matrix<T> rho(n_ + 1, n_ + 1);
    for (int c = 0; c <= n_; ++c) rho.set_column(c, vertex(k + c));
    return rho;
  }

 private:
  int n_ = 0;
  std::vector<Vector<T>> lifts_;
  Matrix<T> monodromy_;
  Matrix<T> monodromy_inverse_;
};

// N-periodic array a_k^i, k in Z/N, i = 1..n.
template <Scalar T>
class InvariantField {
 public:
  InvariantField() = default;
  InvariantField(int n, int N) : n_(n), N_(N), values_(static_cast<std::size_t>(n) * N, T(0)) {
    if (n < 1 || N < 1) throw Error(ErrorCode::InputError, "invariant field needs n >= 1, N >= 1");
  }
  InvariantField(int n, int N, std::vector<T> values) : InvariantField(n, N) {
    if (values.size() != values_.size())
      throw Error(ErrorCode::InputError, "invariant field has wrong number of entries");
    values_ = std::move(values);
  }

  int n() const { return n_; }
  int N() const { return N_; }

  const T& operator()(long k, int i) const { return values_[index(k, i)]; }
  T& operator()(long k, int i) { return values_[index(k, i)]; }

  std::span<const T> row(long k) const {
    return std::span<const T>(values_).subspan(index(k, 1), static_cast<std::size_t>(n_));
  }
  const std::vector<T>& values() const { return values_; }

  friend bool operator==(const InvariantField&, const InvariantField&) = default;

 private:
  std::size_t index(long k, int i) const {
    return static_cast<std::size_t>(floor_mod(k, N_)) * n_ + static_cast<std::size_t>(i - 1);
  }

  int n_ = 0;
  int N_ = 0;
  std::vector<T> values_;
};

template <Scalar T>
InvariantField<double> to_double(const InvariantField<T>& inv) {
  std::vector<double> v;
  v.reserve(inv.values().size());
  for (const T& x : inv.values()) v.push_back(to_double(x));
  return InvariantField<double>(inv.n(), inv.N(), std::move(v));
}

template <Scalar T>
LiftedPolygon<double> to_double(const LiftedPolygon<T>& lp) {
  std::vector<Vector<double>> lifts;
  for (const auto& v : lp.lifts()) lifts.push_back(to_double(v));
  return LiftedPolygon<double>(lp.n(), std::move(lifts), to_double(lp.monodromy()));
}

template <Scalar T>
TwistedPolygon<T> as_twisted(const LiftedPolygon<T>& lp) {
  return TwistedPolygon<T>{lp.n(), lp.N(), lp.lifts(), lp.monodromy()};
}

inline int alternating_sign(int n) { return n % 2 == 0 ? 1 : -1; }

// det(V_k, ..., V_{k+n}) for k = 0..N-1.
template <Scalar T>
std::vector<T> window_determinants(const LiftedPolygon<T>& lp) {
  std::vector<T> d;
  d.reserve(lp.N());
  for (long k = 0; k < lp.N(); ++k) d.push_back(determinant(lp.frame(k)));
  return d;
}

// Maurer-Cartan matrix K_k = rho_k^{-1} rho_{k+1}: first row (0,..,0,(-1)^n),
// ones on the subdiagonal, last column ((-1)^n, a_k^1, ..., a_k^n).
template <Scalar T>
Matrix<T> mc_matrix(const InvariantField<T>& inv, long k) {
  const int n = inv.n();
  Matrix<T> K(n + 1, n + 1);
  K(0, n) = T(alternating_sign(n));
  for (int i = 1; i <= n; ++i) {
    K(i, i - 1) = T(1);
    K(i, n) += inv(k, i);
  }
  return K;
}

// K_0 K_1 ... K_{N-1}.
template <Scalar T>
Matrix<T> monodromy_product(const InvariantField<T>& inv) {
  Matrix<T> P = Matrix<T>::identity(inv.n() + 1);
  for (long k = 0; k < inv.N(); ++k) P = P * mc_matrix(inv, k);
  return P;
}

// Serret-Frenet propagation rho_{k+1} = rho_k K_k from rho_0.
template <Scalar T>
LiftedPolygon<T> reconstruct(const InvariantField<T>& inv, const Matrix<T>& rho0) {
  const int n = inv.n();
  if (rho0.rows() != static_cast<std::size_t>(n + 1) || rho0.cols() != rho0.rows())
    throw Error(ErrorCode::InputError, "initial frame has wrong shape");
  std::vector<Vector<T>> lifts;
  lifts.reserve(inv.N());
  Matrix<T> rho = rho0;
  for (long k = 0; k < inv.N(); ++k) {
    lifts.push_back(rho.column(0));
    rho = rho * mc_matrix(inv, k);
  }
  auto rho0_inv = inverse(rho0);
  if (!rho0_inv) throw Error(ErrorCode::Degenerate, "initial frame is singular");
  return LiftedPolygon<T>(n, std::move(lifts), rho * *rho0_inv);
}

// Solves rho_k x = V_{k+n+1} for every k. The V_k coefficient must be (-1)^n
// exactly (rationals) or within 1e-9 (doubles).
template <Scalar T>
InvariantField<T> extract_invariants(const LiftedPolygon<T>& lp) {
  const int n = lp.n();
  InvariantField<T> inv(n, lp.N());
  for (long k = 0; k < lp.N(); ++k) {
    auto x = solve(lp.frame(k), lp.vertex(k + n + 1));
    if (!x) throw Error(ErrorCode::Degenerate, "singular frame at k=" + std::to_string(k));
    const T expected(alternating_sign(n));
    bool broken;
    if constexpr (is_exact_v<T>) {
      broken = (*x)[0] != expected;
    } else {
      broken = std::abs((*x)[0] - expected) > 1e-9;
    }
    if (broken)
      throw Error(ErrorCode::NormalizationBroken,
                  "coefficient of V_k is " + std::to_string(to_double((*x)[0])) + " at k=" + std::to_string(k));
    for (int i = 1; i <= n; ++i) inv(k, i) = (*x)[i];
  }
  return inv;
}

// Invariants of a polygon from arbitrary (un-normalised) representatives W_k.
// With V_k = c_k W_k normalised, a_k^i = b_k^i c_{k+n+1}/c_{k+i} where b are
// the coefficients of W_{k+n+1} in the W-frame; those c-ratios are rational in
// the window determinants, so no (n+1)-th roots (and no sign choice) appear.
// Requires det M = 1 so that c is N-periodic.
template <Scalar T>
InvariantField<T> projective_invariants(const TwistedPolygon<T>& poly) {
  const int n = poly.n;
  require_coprime(poly.N, n + 1);
  if constexpr (is_exact_v<T>) {
    if (determinant(poly.monodromy) != T(1))
      throw Error(ErrorCode::InputError, "monodromy must have determinant 1");
  }
  const LiftedPolygon<T> raw(n, poly.points, poly.monodromy);
  const std::vector<T> w = window_determinants(raw);
  for (const T& d : w)
    if (is_zero(d)) throw Error(ErrorCode::Degenerate, "zero window determinant");
  // c_j / c_0 with prod_{r} c_{k+r} = 1 / w_k.
  const std::vector<T> c = cyclic_window_product_ratios<T>(w, n + 1);
  InvariantField<T> inv(n, poly.N);
  for (long k = 0; k < poly.N; ++k) {
    auto b = solve(raw.frame(k), raw.vertex(k + n + 1));
    if (!b) throw Error(ErrorCode::Degenerate, "singular frame at k=" + std::to_string(k));
    const T& top = c[floor_mod(k + n + 1, poly.N)];
    for (int i = 1; i <= n; ++i) inv(k, i) = (*b)[i] * top / c[floor_mod(k + i, poly.N)];
  }
  return inv;
}

// Scales M to determinant 1, preferring a positive factor; a negative factor
// is used only when det M < 0 and n+1 is odd. Throws Degenerate otherwise.
Matrix<double> normalize_monodromy(const Matrix<double>& M);

// Finds V_k = c_k W_k with all window determinants equal to 1. Magnitudes from
// the log-linear cyclic system, signs from its Z/2 analogue. For n odd the
// global sign is fixed by making the first nonzero coordinate of V_0 positive.
LiftedPolygon<double> lift_and_normalize(const TwistedPolygon<double>& poly);

}  // namespace pentagram
