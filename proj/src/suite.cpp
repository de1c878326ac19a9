#include "pentagram/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pentagram/integrability.hpp"
#include "pentagram/pentagram_geometric.hpp"

namespace pentagram {

namespace {

constexpr int kRetryBudget = 100;
constexpr double kFloatTolerance = 1e-8;
constexpr double kZeroCurvatureTolerance = 1e-9;
constexpr double kHexagonTolerance = 1e-9;

double relative_gap(double x, double reference) {
  return std::abs(x - reference) / std::max(1.0, std::abs(reference));
}

// Errors that mean "no real normalised lift exists" rather than a bug.
bool no_real_lift(const Error& e) {
  return e.code() == ErrorCode::SignUnsolvable || e.code() == ErrorCode::NoRealSolution;
}

CheckResult start(std::string name, const std::vector<InvariantField<Rational>>& fields) {
  CheckResult r;
  r.check = std::move(name);
  if (!fields.empty()) {
    r.n = fields.front().n();
    r.N = fields.front().N();
  }
  r.pass = true;
  return r;
}

void fail(CheckResult& r, const std::string& why) {
  if (r.pass) r.detail = why;
  r.pass = false;
}

void note_skip(CheckResult& r, int skipped) {
  if (skipped > 0 && r.pass) r.detail = std::to_string(skipped) + " field(s) without a real normalised lift skipped";
}

}  // namespace

Pipeline parse_pipeline(const std::string& text) {
  if (text == "exact") return Pipeline::Exact;
  if (text == "float") return Pipeline::Float;
  throw Error(ErrorCode::InputError, "pipeline must be exact or float, got '" + text + "'");
}

std::string to_string(Pipeline p) { return p == Pipeline::Exact ? "exact" : "float"; }

void validate(const RunConfig& config) {
  if (config.n < 2) throw Error(ErrorCode::InputError, "n must be >= 2");
  if (config.N < 2) throw Error(ErrorCode::InputError, "N must be >= 2");
  require_coprime(config.N, config.n + 1);
  if (config.iterations < 0) throw Error(ErrorCode::InputError, "iterations must be >= 0");
  if (config.samples < 1) throw Error(ErrorCode::InputError, "samples must be >= 1");
  for (const Rational& u : config.u_samples)
    if (is_zero(u)) throw Error(ErrorCode::ZeroParameter, "u samples must be nonzero");
}

Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 18);  // 1..9 and -1..-9
  const int p = num(rng);
  const int d = den(rng);
  Rational q(p, d <= 9 ? d : 9 - d);
  q.canonicalize();
  return q;
}

Rational random_nonzero_rational(Rng& rng) {
  for (;;) {
    Rational q = random_rational(rng);
    if (!is_zero(q)) return q;
  }
}

InvariantField<Rational> random_field(int n, int N, Rng& rng) {
  InvariantField<Rational> inv(n, N);
  for (long k = 0; k < N; ++k)
    for (int i = 1; i <= n; ++i) inv(k, i) = random_rational(rng);
  return inv;
}

bool nondegenerate(const InvariantField<Rational>& inv) {
  for (long k = 0; k < inv.N(); ++k)
    if (is_zero(cramer_denominator(inv, k))) return false;
  return true;
}

Generated generate(int n, int N, Rng& rng) {
  require_coprime(N, n + 1);
  for (int attempt = 1; attempt <= kRetryBudget; ++attempt) {
    InvariantField<Rational> inv = random_field(n, N, rng);
    if (!nondegenerate(inv)) continue;
    LiftedPolygon<Rational> poly = reconstruct(inv, Matrix<Rational>::identity(n + 1));
    return Generated{std::move(inv), std::move(poly), attempt};
  }
  throw Error(ErrorCode::GenerationFailed, "no nondegenerate field in " + std::to_string(kRetryBudget) + " draws");
}

Generated generate(const RunConfig& config) {
  validate(config);
  Rng rng(config.seed);
  return generate(config.n, config.N, rng);
}

json to_json(const Generated& g) {
  json out = to_json(g.field);
  const json poly = to_json(g.polygon);
  out["lifts"] = poly.at("lifts");
  out["monodromy"] = poly.at("monodromy");
  return out;
}

TwistedPolygon<Rational> random_closed_polygon(int n, int N, Rng& rng) {
  std::uniform_int_distribution<int> coord(-9, 9);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    TwistedPolygon<Rational> poly{n, N, {}, Matrix<Rational>::identity(n + 1)};
    for (int k = 0; k < N; ++k) {
      Vector<Rational> p(n + 1);
      for (auto& x : p) x = coord(rng);
      poly.points.push_back(std::move(p));
    }
    try {
      if (nondegenerate(projective_invariants(poly))) return poly;
    } catch (const Error&) {
      // a vanishing window determinant; draw again
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no usable closed polygon in " + std::to_string(kRetryBudget) + " draws");
}

std::vector<Vector<double>> random_convex_hexagon(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(1.0, 2.0);
  for (;;) {
    std::vector<double> theta(6);
    for (double& t : theta) t = angle(rng);
    std::sort(theta.begin(), theta.end());
    std::vector<Vector<double>> pts;
    for (double t : theta) {
      const double r = radius(rng);
      pts.push_back({r * std::cos(t), r * std::sin(t), 1.0});
    }
    // Strict convexity, with a margin so no three vertices are nearly collinear.
    bool convex = true;
    for (int k = 0; k < 6 && convex; ++k) {
      const auto& a = pts[k];
      const auto& b = pts[(k + 1) % 6];
      const auto& c = pts[(k + 2) % 6];
      const double cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
      convex = cross > 1e-2;
    }
    if (convex) return pts;
  }
}

json to_json(const CheckResult& r) {
  json out{{"check", r.check}, {"n", r.n},          {"N", r.N},
           {"samples", r.samples}, {"max_drift", r.max_drift}, {"pass", r.pass}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

CheckResult check_round_trip(const std::vector<InvariantField<Rational>>& fields, Pipeline p) {
  CheckResult r = start("round_trip", fields);
  Rng scale_rng(0x5eed);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  for (const auto& a : fields) {
    const int n = a.n();
    try {
      const LiftedPolygon<Rational> lp = reconstruct(a, Matrix<Rational>::identity(n + 1));
      if (extract_invariants(lp) != a) fail(r, "extract_invariants(reconstruct(a)) != a");
      if (projective_invariants(as_twisted(lp)) != a) fail(r, "projective_invariants(reconstruct(a)) != a");
      if (p == Pipeline::Float) {
        // Rescale every representative, then recover lifts and invariants.
        TwistedPolygon<double> poly = as_twisted(to_double(lp));
        for (auto& v : poly.points) {
          const double c = scale(scale_rng) * (scale_rng() % 2 == 0 ? 1.0 : -1.0);
          for (double& x : v) x *= c;
        }
        const InvariantField<double> back = extract_invariants(lift_and_normalize(poly));
        for (long k = 0; k < a.N(); ++k)
          for (int i = 1; i <= n; ++i) r.max_drift = std::max(r.max_drift, relative_gap(back(k, i), to_double(a(k, i))));
      }
    } catch (const Error& e) {
      fail(r, e.what());
    }
    ++r.samples;
  }
  if (r.max_drift > kFloatTolerance) fail(r, "float round trip drift above 1e-8");
  return r;
}

CheckResult check_two_path(const std::vector<InvariantField<Rational>>& fields) {
  CheckResult r = start("two_path_intersection", fields);
  for (const auto& a : fields) {
    try {
      const LiftedPolygon<double> lp = to_double(reconstruct(a, Matrix<Rational>::identity(a.n() + 1)));
      for (long k = 0; k < a.N(); ++k) {
        const auto [A, B] = reduced_subspaces(lp, k);
        const double d = projective_distance(intersect_two_subspaces(A, B), hyperplane_intersection_oracle(lp, k));
        r.max_drift = std::max(r.max_drift, d);
      }
    } catch (const Error& e) {
      fail(r, e.what());
    }
    ++r.samples;
  }
  if (r.max_drift > kFloatTolerance) fail(r, "two-subspace and hyperplane intersections differ by more than 1e-8");
  return r;
}

// Exact invariants of float image points. Doubles are rationals, and the
// monodromy of the image is the (exact) monodromy of the source polygon.
InvariantField<Rational> exact_readout(const TwistedPolygon<double>& image, const Matrix<Rational>& monodromy) {
  TwistedPolygon<Rational> poly{image.n, image.N, {}, monodromy};
  for (const auto& v : image.points) {
    Vector<Rational> w;
    for (double x : v) w.emplace_back(x);
    poly.points.push_back(std::move(w));
  }
  return projective_invariants(poly);
}

CheckResult check_cross_pipeline(const std::vector<InvariantField<Rational>>& fields) {
  CheckResult r = start("cross_pipeline_map", fields);
  for (const auto& a : fields) {
    try {
      const InvariantField<Rational> exact = pentagram_map_invariants(a);
      const LiftedPolygon<Rational> lp = reconstruct(a, Matrix<Rational>::identity(a.n() + 1));
      const InvariantField<Rational> geo = exact_readout(pentagram_image_points(to_double(lp)), lp.monodromy());
      for (long k = 0; k < a.N(); ++k)
        for (int i = 1; i <= a.n(); ++i)
          r.max_drift = std::max(r.max_drift, relative_gap(to_double(geo(k, i)), to_double(exact(k, i))));
    } catch (const Error& e) {
      fail(r, e.what());
    }
    ++r.samples;
  }
  if (r.max_drift > kFloatTolerance) fail(r, "geometric and invariant maps differ by more than 1e-8 (relative)");
  return r;
}

std::string lemma_failure(const InvariantField<Rational>& inv, long k, int j) {
  const int n = inv.n();
  const Decomposition<Rational> dec = f_decomposition(inv, k, j);
  const auto F = f_vectors(inv, k, j + 1);
  const std::string at = " (k=" + std::to_string(k) + ", j=" + std::to_string(j) + ")";
  if (dec.offset != j) return "wrong offset" + at;
  if (dec.hat != (j % 2 == 1)) return "hat pattern broken" + at;
  Vector<Rational> sum = dec.residual;
  int previous = -1;
  for (const auto& [m, alpha] : dec.terms) {
    if (m <= previous || m >= j) return "term offsets out of order" + at;
    previous = m;
    for (int i = 0; i <= n; ++i) sum[i] += alpha * F[m][i];
  }
  if (sum != F[j]) return "nonzero reconstruction residual" + at;
  // plain residual lives on r's slots, hat residual on p's (last entry zero)
  for (int i = 0; i <= n; ++i) {
    const bool r_slot = (i % 2) == (n % 2);
    const bool allowed = dec.hat ? (!r_slot && i < n) : r_slot;
    if (!allowed && !is_zero(dec.residual[i])) return "residual outside its support" + at;
  }
  return {};
}

CheckResult check_lemma_decomposition(const std::vector<InvariantField<Rational>>& fields) {
  CheckResult r = start("lemma_decomposition", fields);
  for (const auto& a : fields) {
    for (long k = 0; k < a.N() && r.pass; ++k)
      for (int j = 0; j <= a.n() + 1; ++j) {
        const std::string why = lemma_failure(a, k, j);
        if (!why.empty()) {
          fail(r, why);
          break;
        }
      }
    ++r.samples;
  }
  return r;
}

CheckResult check_scaling_commutation(const std::vector<InvariantField<Rational>>& fields,
                                      const std::vector<Rational>& u) {
  CheckResult r = start("scaling_commutation", fields);
  for (const auto& a : fields)
    for (const Rational& t : u) {
      try {
        const CommutationReport rep = check_scaling_commutes(a, t);
        r.max_drift = std::max(r.max_drift, rep.max_discrepancy);
        if (!rep.pass)
          fail(r, "u=" + format_rational(t) + " k=" + std::to_string(rep.first_failure->k) +
                      " i=" + std::to_string(rep.first_failure->i) + ": " + rep.first_failure->lhs +
                      " != " + rep.first_failure->rhs);
      } catch (const Error& e) {
        fail(r, e.what());
      }
      ++r.samples;
    }
  return r;
}

CheckResult check_degree_table(const std::vector<InvariantField<Rational>>& fields, const std::vector<Rational>& u) {
  CheckResult r = start("degree_table", fields);
  for (const auto& a : fields)
    for (const Rational& t : u) {
      try {
        const DegreeReport rep = check_degrees(a, t);
        if (!rep.pass) fail(r, "u=" + format_rational(t) + ": " + rep.first_failure);
      } catch (const Error& e) {
        fail(r, e.what());
      }
      ++r.samples;
    }
  return r;
}

CheckResult check_zero_curvature(const std::vector<InvariantField<Rational>>& fields) {
  CheckResult r = start("zero_curvature", fields);
  int skipped = 0;
  for (const auto& a : fields) {
    try {
      r.max_drift = std::max(r.max_drift, zero_curvature_residual(a));
      ++r.samples;
    } catch (const Error& e) {
      if (no_real_lift(e)) {
        ++skipped;
      } else {
        fail(r, e.what());
        ++r.samples;
      }
    }
  }
  if (r.max_drift >= kZeroCurvatureTolerance) fail(r, "zero-curvature residual >= 1e-9");
  note_skip(r, skipped);
  return r;
}

CheckResult check_spectral_conservation(const InvariantField<Rational>& field, int iterations,
                                        const std::vector<Rational>& u, Pipeline p) {
  ConservationReport rep;
  if (p == Pipeline::Exact) {
    rep = conservation_report(field, iterations, u);
  } else {
    std::vector<double> uf;
    for (const Rational& x : u) uf.push_back(to_double(x));
    rep = conservation_report_float(to_double(field), iterations, uf);
  }
  CheckResult r;
  r.check = rep.check;
  r.n = rep.n;
  r.N = rep.N;
  r.samples = rep.samples;
  r.max_drift = rep.max_drift;
  r.pass = rep.pass;
  if (rep.aborted_at)
    r.detail = "orbit aborted at step " + std::to_string(*rep.aborted_at) + ": " + rep.abort_reason;
  else if (!rep.pass)
    r.detail = "spectral invariants drifted";
  return r;
}

CheckResult check_pentagon_identity(int count, Rng& rng) {
  CheckResult r;
  r.check = "pentagon identity: T(a) = a";
  r.n = 2;
  r.N = 5;
  r.pass = true;
  for (int c = 0; c < count; ++c) {
    try {
      const InvariantField<Rational> a = projective_invariants(random_closed_polygon(2, 5, rng));
      const InvariantField<Rational> Ta = pentagram_map_invariants(a);
      for (long k = 0; k < 5; ++k)
        for (int i = 1; i <= 2; ++i)
          if (Ta(k, i) != a(k - 1, i))
            fail(r, "T(a)_" + std::to_string(k) + "^" + std::to_string(i) + " = " + format_rational(Ta(k, i)) +
                        ", expected " + format_rational(a(k - 1, i)));
    } catch (const Error& e) {
      fail(r, e.what());
    }
    ++r.samples;
  }
  return r;
}

CheckResult check_hexagon_involution(int count, Rng& rng) {
  CheckResult r;
  r.check = "hexagon involution";
  r.n = 2;
  r.N = 6;
  r.pass = true;
  for (int c = 0; c < count; ++c) {
    try {
      const auto P = random_convex_hexagon(rng);
      const auto Q = pentagram_map_closed_planar(pentagram_map_closed_planar(P));
      std::vector<Vector<double>> src, dst;
      for (int k = 0; k < 4; ++k) {
        src.push_back(P[(k + 4) % 6]);
        dst.push_back(Q[k]);
      }
      const Matrix<double> H = fit_projective_transformation(src, dst);
      for (int k = 4; k < 6; ++k)
        r.max_drift = std::max(r.max_drift, projective_distance(H * P[(k + 4) % 6], Q[k]));
    } catch (const Error& e) {
      fail(r, e.what());
    }
    ++r.samples;
  }
  if (r.max_drift >= kHexagonTolerance) fail(r, "fit-on-4 residual on the remaining 2 vertices >= 1e-9");
  return r;
}

SuiteResult run_suite(const RunConfig& config, const InvariantField<Rational>* field) {
  validate(config);
  Rng rng(config.seed);
  std::vector<InvariantField<Rational>> fields;
  if (field != nullptr) {
    if (field->n() != config.n || field->N() != config.N)
      throw Error(ErrorCode::InputError, "field dimensions do not match the run configuration");
    if (!nondegenerate(*field)) throw Error(ErrorCode::InputError, "input field has D_k = 0; T is undefined");
    fields.push_back(*field);
  }
  while (static_cast<int>(fields.size()) < config.samples) fields.push_back(generate(config.n, config.N, rng).field);

  SuiteResult s;
  s.checks.push_back(check_round_trip(fields, config.pipeline));
  s.checks.push_back(check_two_path(fields));
  s.checks.push_back(check_cross_pipeline(fields));
  s.checks.push_back(check_lemma_decomposition(fields));
  s.checks.push_back(check_scaling_commutation(fields, config.u_samples));
  s.checks.push_back(check_degree_table(fields, config.u_samples));
  s.checks.push_back(check_zero_curvature(fields));
  s.checks.push_back(check_spectral_conservation(fields.front(), config.iterations, config.u_samples, config.pipeline));
  if (config.n == 2 && config.N == 5) s.checks.push_back(check_pentagon_identity(config.samples, rng));
  if (config.n == 2) s.checks.push_back(check_hexagon_involution(config.samples, rng));

  s.pass = true;
  for (const auto& c : s.checks)
    if (!c.pass && s.pass) {
      s.pass = false;
      s.first_failure = c.check;
    }
  return s;
}

json to_json(const SuiteResult& s, const RunConfig& config) {
  json checks = json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  json u = json::array();
  for (const Rational& x : config.u_samples) u.push_back(format_rational(x));
  return json{{"n", config.n},
              {"N", config.N},
              {"seed", config.seed},
              {"pipeline", to_string(config.pipeline)},
              {"iterations", config.iterations},
              {"u", std::move(u)},
              {"checks", std::move(checks)},
              {"pass", s.pass},
              {"first_failure", s.pass ? json(nullptr) : json(s.first_failure)}};
}

}  // namespace pentagram
