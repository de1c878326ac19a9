// One line per acceptance criterion. Exit status 1 if any line says FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pentagram/integrability.hpp"
#include "pentagram/pentagram_geometric.hpp"
#include "pentagram/suite.hpp"

using namespace pentagram;

namespace {

struct Outcome {
  bool pass = false;
  std::string note;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    o.pass = false;
    o.note += " (over the " + std::to_string(budget_s) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d %-28s %s  %.2fs  %s\n", id, title, o.pass ? "PASS" : "FAIL", secs, o.note.c_str());
  std::fflush(stdout);
}

int small_N(int n) { return coprime(5, n + 1) ? 5 : 7; }

std::string drift(const CheckResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "samples=%d max=%.3g", r.samples, r.max_drift);
  return buf + (r.detail.empty() ? std::string() : " " + r.detail);
}

// Fields on which the float normalisation has a real solution.
std::vector<InvariantField<Rational>> real_lift_fields(int n, int N, int count, Rng& rng) {
  std::vector<InvariantField<Rational>> out;
  while (static_cast<int>(out.size()) < count) {
    auto a = generate(n, N, rng).field;
    try {
      lambda_solve_float(a);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoRealSolution || e.code() == ErrorCode::SignUnsolvable) continue;
      throw;
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

int main() {
  Rng rng(20240601);

  criterion(1, "pentagon identity", 1.0, [&] {
    const auto r = check_pentagon_identity(25, rng);
    return Outcome{r.pass && r.samples == 25, drift(r) + " (closed pentagons, T(a)_k = a_{k-1})"};
  });

  criterion(2, "hexagon involution", 1.0, [&] {
    const auto r = check_hexagon_involution(25, rng);
    return Outcome{r.pass && r.samples == 25, drift(r)};
  });

  criterion(3, "scaling commutes (exact)", 60.0, [&] {
    int pairs = 0;
    for (int n = 2; n <= 6; ++n)
      for (int N : {5, 7, 9, 11, 13}) {
        if (!coprime(N, n + 1)) continue;
        for (int t = 0; t < 50; ++t) {
          const auto a = generate(n, N, rng).field;
          const Rational u = random_nonzero_rational(rng);
          const auto rep = check_scaling_commutes(a, u);
          ++pairs;
          if (!rep.pass) return Outcome{false, "n=" + std::to_string(n) + " N=" + std::to_string(N) + " u=" + format_rational(u)};
        }
      }
    return Outcome{true, std::to_string(pairs) + " (a, u) pairs"};
  });

  criterion(4, "degree theorems", 0, [&] {
    for (int n = 2; n <= 6; ++n)
      for (int t = 0; t < 20; ++t) {
        const auto rep = check_degrees(generate(n, small_N(n), rng).field, random_nonzero_rational(rng));
        if (!rep.pass) return Outcome{false, "n=" + std::to_string(n) + ": " + rep.first_failure};
      }
    return Outcome{true, "20 (a, u) per n = 2..6"};
  });

  criterion(5, "F-vector decomposition", 0, [&] {
    for (int n : {3, 5, 2, 4})
      for (int t = 0; t < 100; ++t) {
        const auto a = random_field(n, 7, rng);
        for (long k = 0; k < a.N(); ++k)
          for (int j = 0; j <= n + 1; ++j) {
            const std::string why = lemma_failure(a, k, j);
            if (!why.empty()) return Outcome{false, "n=" + std::to_string(n) + ": " + why};
          }
      }
    return Outcome{true, "100 fields per n in {2,3,4,5}, all k, j <= n+1"};
  });

  criterion(6, "cross-oracle equivalence", 0, [&] {
    std::string note;
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      std::vector<InvariantField<Rational>> fields;
      for (int t = 0; t < 20; ++t) fields.push_back(generate(n, small_N(n), rng).field);
      const auto geo = check_cross_pipeline(fields);
      const auto two = check_two_path(fields);
      ok = ok && geo.pass && two.pass && geo.samples == 20 && two.samples == 20;
      char buf[80];
      std::snprintf(buf, sizeof buf, " n=%d:%.1e/%.1e", n, geo.max_drift, two.max_drift);
      note += buf;
      if (!geo.pass) note += " [" + geo.detail + "]";
      if (!two.pass) note += " [" + two.detail + "]";
    }
    return Outcome{ok, "map/intersection" + note};
  });

  criterion(7, "zero curvature", 0, [&] {
    std::string note;
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
      const auto r = check_zero_curvature(real_lift_fields(n, small_N(n), 20, rng));
      ok = ok && r.pass && r.samples == 20;
      char buf[48];
      std::snprintf(buf, sizeof buf, " n=%d:%.1e", n, r.max_drift);
      note += buf;
      if (!r.pass) note += " [" + r.detail + "]";
    }
    return Outcome{ok, "max residual" + note};
  });

  criterion(8, "spectral conservation", 60.0, [&] {
    const std::vector<Rational> u{Rational(1, 2), Rational(2), Rational(3)};
    std::string note;
    for (int n = 2; n <= 4; ++n) {
      const auto r = check_spectral_conservation(generate(n, small_N(n), rng).field, 20, u, Pipeline::Exact);
      if (!r.pass) return Outcome{false, "n=" + std::to_string(n) + ": " + drift(r)};
      note += " n=" + std::to_string(n) + ":" + std::to_string(r.samples);
    }
    return Outcome{true, "20 steps, u in {1/2,2,3}, exact; samples" + note};
  });

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return failures == 0 ? 0 : 1;
}
