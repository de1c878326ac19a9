#include <gtest/gtest.h>

#include "pentagram/json_io.hpp"
#include "pentagram/suite.hpp"
#include "test_support.hpp"

using namespace pentagram;

TEST(Json, InvariantFieldRoundTrip) {
  Rng rng(91);
  const auto a = random_field(3, 5, rng);
  const json j = to_json(a);
  EXPECT_EQ(j.at("n"), 3);
  EXPECT_EQ(j.at("N"), 5);
  EXPECT_TRUE(j.at("a")[0][0].is_string());
  EXPECT_EQ(field_from_json<Rational>(parse_json_text(j.dump())), a);

  const auto af = to_double(a);
  const json jf = to_json(af);
  EXPECT_TRUE(jf.at("a")[0][0].is_number());
  EXPECT_EQ(field_from_json<double>(jf), af);
}

TEST(Json, PolygonRoundTrip) {
  Rng rng(92);
  const auto g = generate(2, 5, rng);
  const json j = to_json(g.polygon);
  ASSERT_TRUE(j.contains("lifts"));
  const auto back = lifted_from_json<Rational>(j);
  EXPECT_EQ(back.lifts(), g.polygon.lifts());
  EXPECT_EQ(back.monodromy(), g.polygon.monodromy());

  TwistedPolygon<Rational> poly = as_twisted(g.polygon);
  const auto again = polygon_from_json<Rational>(to_json(poly));
  EXPECT_EQ(again.points, poly.points);
}

TEST(Json, ScalarRules) {
  EXPECT_EQ(scalar_from_json<Rational>(json("3/4")), Rational(3, 4));
  EXPECT_EQ(scalar_from_json<Rational>(json(7)), Rational(7));
  EXPECT_EQ(scalar_from_json<double>(json("1/4")), 0.25);
  EXPECT_THROW(scalar_from_json<Rational>(json(0.1)), Error);  // not exactly representable as intended
  EXPECT_THROW(scalar_from_json<Rational>(json::array()), Error);
}

TEST(Json, MalformedInput) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::GenerationFailed;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code_of([] { parse_json_text("{\"n\": 2, "); }), ErrorCode::InputError);
  EXPECT_EQ(code_of([] { field_from_json<Rational>(parse_json_text("{\"n\": 2}")); }), ErrorCode::InputError);
  EXPECT_EQ(code_of([] { field_from_json<Rational>(parse_json_text(R"({"n":2,"N":2,"a":[["1/2"]]})")); }),
            ErrorCode::InputError);
  EXPECT_EQ(code_of([] { field_from_json<Rational>(parse_json_text(R"({"n":1,"N":2,"a":[["1/0"],["1"]]})")); }),
            ErrorCode::InputError);
  EXPECT_EQ(code_of([] { read_json_file("/nonexistent/file.json"); }), ErrorCode::InputError);
}

TEST(Json, ReportFields) {
  ConservationReport rep;
  rep.n = 2;
  rep.N = 5;
  rep.samples = 3;
  rep.pass = true;
  const json j = to_json(rep);
  for (const char* key : {"check", "n", "N", "samples", "max_drift", "pass"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Suite, ConfigValidation) {
  RunConfig c;
  c.n = 2;
  c.N = 6;
  try {
    validate(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
  }
  c.N = 5;
  EXPECT_NO_THROW(validate(c));
  c.u_samples = {Rational(0)};
  EXPECT_THROW(validate(c), Error);
  EXPECT_THROW(parse_pipeline("double"), Error);
}

TEST(Suite, RandomRationalRange) {
  Rng rng(93);
  for (int t = 0; t < 2000; ++t) {
    const Rational x = random_rational(rng);
    EXPECT_LE(abs(x), Rational(9));
    EXPECT_LE(x.get_den(), 9);
  }
}

TEST(Suite, GenerateIsDeterministicAndNondegenerate) {
  RunConfig c;
  c.n = 4;
  c.N = 7;
  c.seed = 12345;
  const auto g1 = generate(c);
  const auto g2 = generate(c);
  EXPECT_EQ(to_json(g1).dump(), to_json(g2).dump());
  EXPECT_TRUE(nondegenerate(g1.field));
  EXPECT_EQ(extract_invariants(g1.polygon), g1.field);
  c.seed = 12346;
  EXPECT_NE(to_json(generate(c)).dump(), to_json(g1).dump());
}

TEST(Suite, GeneratedFieldsAlwaysNondegenerate) {
  Rng rng(94);
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 10; ++t) {
      const auto g = generate(n, coprime(5, n + 1) ? 5 : 7, rng);
      for (long k = 0; k < g.field.N(); ++k) EXPECT_FALSE(is_zero(cramer_denominator(g.field, k)));
    }
}

TEST(Suite, ConvexHexagon) {
  Rng rng(95);
  for (int t = 0; t < 20; ++t) {
    const auto P = random_convex_hexagon(rng);
    ASSERT_EQ(P.size(), 6u);
    for (int k = 0; k < 6; ++k) {
      const auto& a = P[k];
      const auto& b = P[(k + 1) % 6];
      const auto& c = P[(k + 2) % 6];
      EXPECT_GT((b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]), 0.0);
    }
  }
}

TEST(Suite, HexagonNegativeControl) {
  // A generic hexagon is not projectively equivalent to itself with labels
  // rotated by one; the fit-on-4 residual exposes that.
  Rng rng(96);
  const auto P = random_convex_hexagon(rng);
  std::vector<Vector<double>> src, dst;
  for (int k = 0; k < 4; ++k) {
    src.push_back(P[(k + 1) % 6]);
    dst.push_back(P[k]);
  }
  const auto H = fit_projective_transformation(src, dst);
  EXPECT_GT(projective_distance(H * P[5], P[4]), 1e-6);
}

TEST(Suite, RunSuitePentagonCase) {
  RunConfig c;
  c.n = 2;
  c.N = 5;
  c.seed = 7;
  c.iterations = 5;
  const auto s = run_suite(c);
  EXPECT_TRUE(s.pass) << s.first_failure;
  std::vector<std::string> names;
  for (const auto& r : s.checks) names.push_back(r.check);
  const std::vector<std::string> expected{"round_trip",         "two_path_intersection", "cross_pipeline_map",
                                          "lemma_decomposition", "scaling_commutation",  "degree_table",
                                          "zero_curvature",     "spectral_conservation", "pentagon identity: T(a) = a",
                                          "hexagon involution"};
  EXPECT_EQ(names, expected);
  const json j = to_json(s, c);
  EXPECT_EQ(j.at("pass"), true);
  EXPECT_TRUE(j.at("first_failure").is_null());
  EXPECT_EQ(j.dump(), to_json(run_suite(c), c).dump());  // byte-identical rerun
}

TEST(Suite, RunSuiteFloatPipeline) {
  RunConfig c;
  c.n = 3;
  c.N = 5;
  c.pipeline = Pipeline::Float;
  c.iterations = 10;
  const auto s = run_suite(c);
  EXPECT_TRUE(s.pass) << s.first_failure;
  EXPECT_EQ(s.checks[7].check, "spectral_conservation_float");
}

TEST(Suite, RunSuiteRejectsDegenerateInput) {
  RunConfig c;
  c.n = 3;
  c.N = 5;
  const InvariantField<Rational> zero(3, 5);
  EXPECT_THROW(run_suite(c, &zero), Error);
}

TEST(Suite, OrbitCsv) {
  Rng rng(97);
  const auto a = generate(2, 5, rng).field;
  const std::string csv = orbit_csv(a, 2);
  EXPECT_EQ(csv.rfind("step,k,i,value\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 5 * 2);
  EXPECT_NE(csv.find("\n0,0,1," + format_rational(a(0, 1)) + "\n"), std::string::npos);
  const std::string csvf = orbit_csv(to_double(a), 1);
  EXPECT_EQ(std::count(csvf.begin(), csvf.end(), '\n'), 1 + 2 * 5 * 2);
}
