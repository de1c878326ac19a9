// pentagram: command-line driver for the generalised pentagram map.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pentagram/integrability.hpp"
#include "pentagram/json_io.hpp"
#include "pentagram/pentagram_geometric.hpp"
#include "pentagram/suite.hpp"

using namespace pentagram;

namespace {

constexpr int kPass = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct Options {
  int n = 2;
  int N = 5;
  std::uint64_t seed = 1;
  std::string pipeline = "exact";
  int iterations = 20;
  std::vector<std::string> u;
  std::string out;
  std::string input;
  int samples = 3;
};

RunConfig make_config(const Options& o) {
  RunConfig c;
  c.n = o.n;
  c.N = o.N;
  c.seed = o.seed;
  c.pipeline = parse_pipeline(o.pipeline);
  c.iterations = o.iterations;
  c.output = o.out;
  c.samples = o.samples;
  if (!o.u.empty()) {
    c.u_samples.clear();
    for (const auto& s : o.u) c.u_samples.push_back(parse_rational(s));
  }
  validate(c);
  return c;
}

void emit(const Options& o, const json& j) { write_text(o.out, j.dump(2) + "\n"); }

// The input field: from the file when given (its n, N override the flags),
// otherwise generated from --n/--N/--seed.
InvariantField<Rational> load_field(Options& o) {
  if (o.input.empty()) return generate(make_config(o)).field;
  const json doc = read_json_file(o.input);
  InvariantField<Rational> inv;
  if (doc.contains("a")) {
    inv = field_from_json<Rational>(doc);
  } else {
    inv = projective_invariants(polygon_from_json<Rational>(doc));
  }
  o.n = inv.n();
  o.N = inv.N();
  make_config(o);
  return inv;
}

int cmd_generate(Options& o) {
  const RunConfig config = make_config(o);
  const Generated g = generate(config);
  json doc;
  if (config.pipeline == Pipeline::Exact) {
    doc = to_json(g);
  } else {
    doc = to_json(to_double(g.field));
    const json poly = to_json(to_double(g.polygon));
    doc["lifts"] = poly.at("lifts");
    doc["monodromy"] = poly.at("monodromy");
  }
  doc["seed"] = config.seed;
  doc["attempts"] = g.attempts;
  emit(o, doc);
  return kPass;
}

int cmd_invariants(Options& o) {
  if (o.input.empty()) throw Error(ErrorCode::InputError, "invariants needs an input polygon");
  const json doc = read_json_file(o.input);
  if (parse_pipeline(o.pipeline) == Pipeline::Exact) {
    emit(o, to_json(projective_invariants(polygon_from_json<Rational>(doc))));
  } else {
    const auto poly = polygon_from_json<double>(doc);
    require_coprime(poly.N, poly.n + 1);
    TwistedPolygon<double> scaled = poly;
    scaled.monodromy = normalize_monodromy(poly.monodromy);
    const LiftedPolygon<double> lp = lift_and_normalize(scaled);
    json out = to_json(extract_invariants(lp));
    out["lifts"] = to_json(lp).at("lifts");
    out["monodromy"] = to_json(lp).at("monodromy");
    emit(o, out);
  }
  return kPass;
}

int cmd_map(Options& o) {
  const Pipeline p = parse_pipeline(o.pipeline);
  if (p == Pipeline::Float && !o.input.empty()) {
    const json doc = read_json_file(o.input);
    if (doc.contains("lifts") && !doc.contains("a")) {
      // geometric map on explicit lifts
      const LiftedPolygon<double> image = pentagram_map_geometric(lifted_from_json<double>(doc));
      json out = to_json(extract_invariants(image));
      out["lifts"] = to_json(image).at("lifts");
      out["monodromy"] = to_json(image).at("monodromy");
      emit(o, out);
      return kPass;
    }
  }
  const InvariantField<Rational> a = load_field(o);
  if (p == Pipeline::Exact)
    emit(o, to_json(pentagram_map_invariants(a)));
  else
    emit(o, to_json(pentagram_map_invariants(to_double(a))));
  return kPass;
}

int cmd_iterate(Options& o) {
  const InvariantField<Rational> a = load_field(o);
  if (parse_pipeline(o.pipeline) == Pipeline::Exact)
    write_text(o.out, orbit_csv(a, o.iterations));
  else
    write_text(o.out, orbit_csv(to_double(a), o.iterations));
  return kPass;
}

int cmd_verify(Options& o) {
  std::optional<InvariantField<Rational>> field;
  if (!o.input.empty()) field = load_field(o);
  const RunConfig config = make_config(o);
  const SuiteResult s = run_suite(config, field ? &*field : nullptr);
  for (const auto& c : s.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.check << "  max_drift=" << c.max_drift
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  if (!s.pass) std::cerr << "first failing check: " << s.first_failure << "\n";
  emit(o, to_json(s, config));
  return s.pass ? kPass : kVerificationFailed;
}

int cmd_conserved(Options& o) {
  const InvariantField<Rational> a = load_field(o);
  const RunConfig config = make_config(o);
  const DegreeTable table = scaling_degrees(a.n());
  json values = json::array();
  for (const Rational& u : config.u_samples) {
    // u = t^{1/s} for even n, so t = u^s; for odd n t = u.
    const Rational t = power(u, table.t_root);
    values.push_back({{"u", format_rational(u)},
                      {"t", format_rational(t)},
                      {"coefficients", vector_to_json(spectral_invariants(a, u))}});
  }
  CheckResult r = check_spectral_conservation(a, config.iterations, config.u_samples, config.pipeline);
  json out = to_json(r);
  out["iterations"] = config.iterations;
  out["spectral_invariants"] = std::move(values);
  emit(o, out);
  return r.pass ? kPass : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalised pentagram map on twisted polygons in RP^n"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub, bool takes_input) {
    sub->add_option("--n", o.n, "dimension of RP^n")->capture_default_str();
    sub->add_option("--N", o.N, "polygon period, coprime to n+1")->capture_default_str();
    sub->add_option("--seed", o.seed, "generator seed")->capture_default_str();
    sub->add_option("--pipeline", o.pipeline, "exact | float")->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    sub->add_option("--iters", o.iterations, "iterations of T")->capture_default_str();
    sub->add_option("--u", o.u, "scaling parameter p/q (repeatable)");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--samples", o.samples, "random fields per suite check")->capture_default_str();
    if (takes_input) sub->add_option("input", o.input, "JSON input (field or polygon)");
  };

  std::vector<std::pair<CLI::App*, int (*)(Options&)>> commands = {
      {app.add_subcommand("generate", "random nondegenerate field and its polygon"), cmd_generate},
      {app.add_subcommand("invariants", "projective invariants of a polygon"), cmd_invariants},
      {app.add_subcommand("map", "one step of T"), cmd_map},
      {app.add_subcommand("iterate", "orbit trace as CSV step,k,i,value"), cmd_iterate},
      {app.add_subcommand("verify", "run the verification suite"), cmd_verify},
      {app.add_subcommand("conserved", "spectral invariants and their conservation"), cmd_conserved},
  };
  for (auto& [sub, fn] : commands) add_common(sub, sub->get_name() != "generate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
