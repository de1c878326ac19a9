#include "pentagram/integrability.hpp"

#include <algorithm>
#include <cmath>

namespace pentagram {

DegreeTable scaling_degrees(int n) {
  if (n < 2) throw Error(ErrorCode::InputError, "scaling table needs n >= 2");
  DegreeTable table;
  table.n = n;
  table.s = n / 2;
  if (n % 2 == 1) {
    table.t_root = 1;
    for (int i = 1; i <= n; ++i) table.exponent.push_back(i % 2 == 1 ? 1 : 0);
  } else {
    const int s = table.s;
    table.t_root = s;
    for (int i = 1; i <= n; ++i) table.exponent.push_back(i % 2 == 1 ? (i - 1) / 2 - s : i / 2);
  }
  return table;
}

int denominator_degree(int n) { return n % 2 == 1 ? n + 1 : 0; }

int numerator_degree(int n, int i) {
  if (n % 2 == 1) return i % 2 == 1 ? n + 2 : n + 1;
  return scaling_degrees(n).degree(i);
}

CommutationReport check_scaling_commutes(const InvariantField<Rational>& inv, const Rational& u) {
  const InvariantField<Rational> lhs = pentagram_map_invariants(apply_scaling(inv, u));
  const InvariantField<Rational> rhs = apply_scaling(pentagram_map_invariants(inv), u);
  CommutationReport report;
  report.pass = true;
  for (long k = 0; k < inv.N(); ++k) {
    for (int i = 1; i <= inv.n(); ++i) {
      if (lhs(k, i) == rhs(k, i)) continue;
      const Rational diff = abs(lhs(k, i) - rhs(k, i));
      report.max_discrepancy = std::max(report.max_discrepancy, diff.get_d());
      if (report.pass)
        report.first_failure = EntryMismatch{k, i, format_rational(lhs(k, i)), format_rational(rhs(k, i))};
      report.pass = false;
    }
  }
  return report;
}

DegreeReport check_degrees(const InvariantField<Rational>& inv, const Rational& u) {
  const int n = inv.n();
  const InvariantField<Rational> scaled = apply_scaling(inv, u);
  DegreeReport report;
  auto expect = [&](const Rational& after, const Rational& before, int degree, const std::string& what) {
    if (!report.first_failure.empty()) return;
    const Rational predicted = power(u, degree) * before;
    if (after != predicted)
      report.first_failure = what + ": got " + format_rational(after) + ", expected u^" + std::to_string(degree) +
                             " * " + format_rational(before);
  };
  for (long k = 0; k < inv.N(); ++k) {
    const std::string at = " at k=" + std::to_string(k);
    const Rational D = cramer_denominator(inv, k);
    const Rational Ds = cramer_denominator(scaled, k);
    expect(Ds, D, denominator_degree(n), "D" + at);
    for (int i = 1; i <= n; ++i)
      expect(cramer_numerator(scaled, k, i), cramer_numerator(inv, k, i), numerator_degree(n, i),
             "D^" + std::to_string(i) + at);
    // prod_{r=0}^{n} lambda_{k+r} = 1/D_k
    if (!is_zero(D) && !is_zero(Ds)) {
      const Rational window = Rational(1) / D;
      const Rational window_scaled = Rational(1) / Ds;
      expect(window_scaled, window, -denominator_degree(n), "lambda window product" + at);
    }
  }
  if (report.first_failure.empty() && coprime(inv.N(), n + 1)) {
    // lambda ratios carry degree 0 in both parities.
    for (long k = 0; k < inv.N(); ++k)
      for (int i = 0; i <= n; ++i)
        expect(lambda_ratio(scaled, k, i), lambda_ratio(inv, k, i), 0,
               "lambda ratio (" + std::to_string(i) + ") at k=" + std::to_string(k));
  }
  report.pass = report.first_failure.empty();
  return report;
}

namespace {

template <Scalar T>
LaxFrame lax_frames_impl(const InvariantField<T>& inv, std::span<const double> lambda, long k) {
  const int n = inv.n();
  const auto F = f_vectors(inv, k, n + 1);
  Matrix<double> Nmat(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    Vector<double> col = to_double(F[j]);
    const double l = lambda[floor_mod(k + j, inv.N())];
    for (double& x : col) x *= l;
    Nmat.set_column(j, col);
  }
  return LaxFrame{to_double(mc_matrix(inv, k)), std::move(Nmat)};
}

}  // namespace

LaxFrame lax_frames(const InvariantField<double>& inv, std::span<const double> lambda, long k) {
  return lax_frames_impl(inv, lambda, k);
}

LaxFrame lax_frames(const InvariantField<Rational>& inv, std::span<const double> lambda, long k) {
  return lax_frames_impl(inv, lambda, k);
}

LaxFrame lax_frames(const InvariantField<double>& inv, long k) {
  const auto lambda = lambda_solve_float(inv);
  return lax_frames(inv, lambda, k);
}

double zero_curvature_residual(const InvariantField<Rational>& inv) {
  const int n = inv.n();
  const long N = inv.N();
  const InvariantField<double> Ta = to_double(pentagram_map_invariants(inv));
  const std::vector<double> lambda = lambda_solve_float(inv);
  double worst = 0.0;
  for (long k = 0; k < N; ++k) {
    // N_k = F_k diag(lambda_k..), so N_k^{-1} K_k N_{k+1} =
    // diag(1/lambda) [F_k^{-1} K_k F_{k+1}] diag(lambda); the bracket is exact.
    const Matrix<Rational> Fk = cramer_matrix(inv, k);
    const Matrix<Rational> Fnext = cramer_matrix(inv, k + 1);
    auto core = solve(Fk, mc_matrix(inv, k) * Fnext);
    if (!core) throw Error(ErrorCode::Degenerate, "N_k is singular at k=" + std::to_string(k));
    const Matrix<double> TK = mc_matrix(Ta, k);
    for (int r = 0; r <= n; ++r)
      for (int c = 0; c <= n; ++c) {
        const double scale = lambda[floor_mod(k + 1 + c, N)] / lambda[floor_mod(k + r, N)];
        const double conj = scale * to_double((*core)(r, c));
        worst = std::max(worst, std::abs(TK(r, c) - conj));
      }
  }
  return worst;
}

namespace {

// Doubles are dyadic rationals, so a float field converts to an exact one
// without rounding. Evaluating spectral invariants exactly keeps the
// ill-conditioned companion product out of the float drift measurement.
InvariantField<Rational> exact_copy(const InvariantField<double>& inv) {
  std::vector<Rational> v;
  v.reserve(inv.values().size());
  for (double x : inv.values()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::Degenerate, "non-finite invariant along the float orbit");
    v.emplace_back(x);
  }
  return InvariantField<Rational>(inv.n(), inv.N(), std::move(v));
}

template <Scalar T>
std::vector<Rational> evaluate(const InvariantField<T>& inv, const T& u) {
  if constexpr (is_exact_v<T>) {
    return spectral_invariants(inv, u);
  } else {
    return spectral_invariants(exact_copy(inv), Rational(u));
  }
}

template <Scalar T>
ConservationReport conservation_impl(const InvariantField<T>& inv, int iterations, std::span<const T> u_samples) {
  ConservationReport report;
  report.n = inv.n();
  report.N = inv.N();
  std::vector<std::vector<Rational>> reference;
  for (const T& u : u_samples) reference.push_back(evaluate(inv, u));
  InvariantField<T> current = inv;
  double drift = 0.0;
  for (int step = 0; step < iterations; ++step) {
    try {
      current = pentagram_map_invariants(current);
      for (std::size_t s = 0; s < u_samples.size(); ++s) {
        const std::vector<Rational> now = evaluate(current, u_samples[s]);
        for (std::size_t c = 0; c < now.size(); ++c) {
          if (now[c] == reference[s][c]) continue;
          const double diff = Rational(abs(now[c] - reference[s][c])).get_d();
          if constexpr (is_exact_v<T>) {
            drift = std::max(drift, std::max(diff, 1e-300));
          } else {
            drift = std::max(drift, diff / std::max(1.0, std::abs(reference[s][c].get_d())));
          }
        }
        ++report.samples;
      }
    } catch (const Error& e) {
      report.aborted_at = step;
      report.abort_reason = e.what();
      break;
    }
    report.steps_completed = step + 1;
  }
  report.max_drift = drift;
  const bool within = is_exact_v<T> ? drift == 0.0 : drift < 1e-8;
  report.pass = !report.aborted_at && report.steps_completed == iterations && within;
  return report;
}

}  // namespace

ConservationReport conservation_report(const InvariantField<Rational>& inv, int iterations,
                                       std::span<const Rational> u_samples) {
  return conservation_impl<Rational>(inv, iterations, u_samples);
}

ConservationReport conservation_report_float(const InvariantField<double>& inv, int iterations,
                                             std::span<const double> u_samples) {
  auto report = conservation_impl<double>(inv, iterations, u_samples);
  report.check = "spectral_conservation_float";
  return report;
}

}  // namespace pentagram
