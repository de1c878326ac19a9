#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pentagram/json_io.hpp"
#include "pentagram/pentagram_invariant.hpp"
#include "pentagram/projective_core.hpp"

namespace pentagram {

enum class Pipeline { Exact, Float };

Pipeline parse_pipeline(const std::string& text);
std::string to_string(Pipeline p);

struct RunConfig {
  int n = 2;
  int N = 5;
  std::uint64_t seed = 1;
  Pipeline pipeline = Pipeline::Exact;
  int iterations = 20;
  std::vector<Rational> u_samples{Rational(1, 2), Rational(2), Rational(3)};
  std::string output;
  int samples = 3;  // random fields per suite check
};

// n >= 2, N >= 2, gcd(N, n+1) = 1, iterations >= 0, samples >= 1, u != 0.
// Throws NotCoprime / InputError.
void validate(const RunConfig& config);

using Rng = std::mt19937_64;

// Numerator uniform in [-9, 9], denominator uniform in [-9, 9] \ {0}.
Rational random_rational(Rng& rng);
Rational random_nonzero_rational(Rng& rng);

// One draw, no nondegeneracy check.
InvariantField<Rational> random_field(int n, int N, Rng& rng);

// True when every D_k is nonzero, i.e. T is defined at the field.
bool nondegenerate(const InvariantField<Rational>& inv);

struct Generated {
  InvariantField<Rational> field;
  LiftedPolygon<Rational> polygon;  // reconstruct(field, I)
  int attempts = 0;
};

// Rejection sampling, at most 100 draws; GenerationFailed beyond that.
Generated generate(int n, int N, Rng& rng);
Generated generate(const RunConfig& config);

json to_json(const Generated& g);

// Closed polygon (M = I) with random small-integer vertices whose invariants
// are defined and on which T is defined.
TwistedPolygon<Rational> random_closed_polygon(int n, int N, Rng& rng);

// Convex hexagon in the affine chart z = 1: sorted random angles, radii in [1, 2].
std::vector<Vector<double>> random_convex_hexagon(Rng& rng);

struct CheckResult {
  std::string check;
  int n = 0;
  int N = 0;
  int samples = 0;
  double max_drift = 0.0;
  bool pass = false;
  std::string detail;  // first failure or error, empty on pass
};

json to_json(const CheckResult& r);

// Exact invariants of float image points, using the exact source monodromy.
InvariantField<Rational> exact_readout(const TwistedPolygon<double>& image, const Matrix<Rational>& monodromy);

// Individual suite items, each over the given fields.
CheckResult check_round_trip(const std::vector<InvariantField<Rational>>& fields, Pipeline p);
CheckResult check_two_path(const std::vector<InvariantField<Rational>>& fields);
CheckResult check_cross_pipeline(const std::vector<InvariantField<Rational>>& fields);
CheckResult check_lemma_decomposition(const std::vector<InvariantField<Rational>>& fields);
CheckResult check_scaling_commutation(const std::vector<InvariantField<Rational>>& fields,
                                      const std::vector<Rational>& u);
CheckResult check_degree_table(const std::vector<InvariantField<Rational>>& fields, const std::vector<Rational>& u);
CheckResult check_zero_curvature(const std::vector<InvariantField<Rational>>& fields);
CheckResult check_spectral_conservation(const InvariantField<Rational>& field, int iterations,
                                        const std::vector<Rational>& u, Pipeline p);

// T(a)_k = a_{k-1} on closed pentagons: T is the identity on the projective
// equivalence class, and our indexing of T shifts labels by one.
CheckResult check_pentagon_identity(int count, Rng& rng);
// Under the labelling of pentagram_map_closed_planar, T^2(P)_k matches
// P_{k-2}. Fit on 4 pairs, test the other 2.
CheckResult check_hexagon_involution(int count, Rng& rng);

// Residual decomposition check for one (field, k, j); empty string on success.
std::string lemma_failure(const InvariantField<Rational>& inv, long k, int j);

struct SuiteResult {
  std::vector<CheckResult> checks;
  bool pass = false;
  std::string first_failure;
};

// Runs every check in the fixed order; fields come from generate() with the
// seeded generator (the first one may be supplied instead).
SuiteResult run_suite(const RunConfig& config, const InvariantField<Rational>* field = nullptr);

json to_json(const SuiteResult& s, const RunConfig& config);

// CSV rows step,k,i,value for the orbit a, T(a), ..., T^iters(a).
template <Scalar T>
std::string orbit_csv(const InvariantField<T>& start, int iterations) {
  std::string out = "step,k,i,value\n";
  InvariantField<T> current = start;
  for (int step = 0; step <= iterations; ++step) {
    if (step > 0) current = pentagram_map_invariants(current);
    for (long k = 0; k < current.N(); ++k)
      for (int i = 1; i <= current.n(); ++i) {
        out += std::to_string(step) + "," + std::to_string(k) + "," + std::to_string(i) + ",";
        if constexpr (is_exact_v<T>) {
          out += format_rational(current(k, i));
        } else {
          out += scalar_to_json(current(k, i)).dump();
        }
        out += "\n";
      }
  }
  return out;
}

}  // namespace pentagram
