#pragma once

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "pentagram/integrability.hpp"
#include "pentagram/projective_core.hpp"

// Shared file format (see README, "JSON schema"):
//   {"n": 2, "N": 5, "a": [["p/q", ...], ...]}                      invariant field
//   {"n": 2, "N": 5, "points"|"lifts": [[...], ...], "monodromy": [[...], ...]}
// Exact values are "p/q" strings, float values plain numbers. Readers accept
// both where the target pipeline can represent them.

namespace pentagram {

using json = nlohmann::json;

template <Scalar T>
json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) {
    return format_rational(x);
  } else {
    return x;
  }
}

// Strings parse as rationals. Numbers go to the float pipeline as is; the
// exact pipeline takes integral numbers only, so no binary fraction sneaks in.
template <Scalar T>
T scalar_from_json(const json& j) {
  if (j.is_string()) return from_rational<T>(parse_rational(j.get<std::string>()));
  if (!j.is_number()) throw Error(ErrorCode::InputError, "expected a number or \"p/q\" string, got " + j.dump());
  if constexpr (is_exact_v<T>) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    const double x = j.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) return Rational(static_cast<long>(x));
    throw Error(ErrorCode::InputError, "non-integral number " + j.dump() + " in exact pipeline; write it as \"p/q\"");
  } else {
    return j.get<double>();
  }
}

template <Scalar T>
json vector_to_json(const Vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <Scalar T>
json matrix_to_json(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

template <Scalar T>
Vector<T> vector_from_json(const json& j, std::size_t size, const std::string& what) {
  if (!j.is_array() || j.size() != size)
    throw Error(ErrorCode::InputError, what + ": expected an array of " + std::to_string(size) + " entries");
  Vector<T> v;
  v.reserve(size);
  for (const json& x : j) v.push_back(scalar_from_json<T>(x));
  return v;
}

template <Scalar T>
Matrix<T> matrix_from_json(const json& j, std::size_t size, const std::string& what) {
  if (!j.is_array() || j.size() != size)
    throw Error(ErrorCode::InputError, what + ": expected " + std::to_string(size) + " rows");
  Matrix<T> m(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    const Vector<T> row = vector_from_json<T>(j[r], size, what + " row " + std::to_string(r));
    for (std::size_t c = 0; c < size; ++c) m(r, c) = row[c];
  }
  return m;
}

// "n" and "N", checked for type and range.
std::pair<int, int> read_dimensions(const json& j);

template <Scalar T>
json to_json(const InvariantField<T>& inv) {
  json rows = json::array();
  for (long k = 0; k < inv.N(); ++k) {
    json row = json::array();
    for (int i = 1; i <= inv.n(); ++i) row.push_back(scalar_to_json(inv(k, i)));
    rows.push_back(std::move(row));
  }
  return json{{"n", inv.n()}, {"N", inv.N()}, {"a", std::move(rows)}};
}

template <Scalar T>
json to_json(const TwistedPolygon<T>& poly) {
  json pts = json::array();
  for (const auto& p : poly.points) pts.push_back(vector_to_json(p));
  return json{{"n", poly.n}, {"N", poly.N}, {"points", std::move(pts)}, {"monodromy", matrix_to_json(poly.monodromy)}};
}

template <Scalar T>
json to_json(const LiftedPolygon<T>& lp) {
  json lifts = json::array();
  for (const auto& v : lp.lifts()) lifts.push_back(vector_to_json(v));
  return json{{"n", lp.n()}, {"N", lp.N()}, {"lifts", std::move(lifts)}, {"monodromy", matrix_to_json(lp.monodromy())}};
}

template <Scalar T>
InvariantField<T> field_from_json(const json& j) {
  const auto [n, N] = read_dimensions(j);
  if (!j.contains("a")) throw Error(ErrorCode::InputError, "missing \"a\"");
  const json& rows = j.at("a");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(N))
    throw Error(ErrorCode::InputError, "\"a\" must have N rows");
  InvariantField<T> inv(n, N);
  for (int k = 0; k < N; ++k) {
    const Vector<T> row = vector_from_json<T>(rows[k], static_cast<std::size_t>(n), "a[" + std::to_string(k) + "]");
    for (int i = 1; i <= n; ++i) inv(k, i) = row[i - 1];
  }
  return inv;
}

// Reads "points" or "lifts" (whichever is present) plus "monodromy"; a missing
// monodromy means a closed polygon (identity).
template <Scalar T>
TwistedPolygon<T> polygon_from_json(const json& j) {
  const auto [n, N] = read_dimensions(j);
  const char* key = j.contains("points") ? "points" : j.contains("lifts") ? "lifts" : nullptr;
  if (key == nullptr) throw Error(ErrorCode::InputError, "missing \"points\" or \"lifts\"");
  const json& pts = j.at(key);
  if (!pts.is_array() || pts.size() != static_cast<std::size_t>(N))
    throw Error(ErrorCode::InputError, std::string("\"") + key + "\" must have N entries");
  TwistedPolygon<T> poly;
  poly.n = n;
  poly.N = N;
  const auto dim = static_cast<std::size_t>(n + 1);
  for (int k = 0; k < N; ++k)
    poly.points.push_back(vector_from_json<T>(pts[k], dim, std::string(key) + "[" + std::to_string(k) + "]"));
  poly.monodromy = j.contains("monodromy") ? matrix_from_json<T>(j.at("monodromy"), dim, "monodromy")
                                           : Matrix<T>::identity(dim);
  return poly;
}

template <Scalar T>
LiftedPolygon<T> lifted_from_json(const json& j) {
  TwistedPolygon<T> poly = polygon_from_json<T>(j);
  return LiftedPolygon<T>(poly.n, std::move(poly.points), std::move(poly.monodromy));
}

json to_json(const ConservationReport& report);

// Throws Error(InputError) for unreadable files and malformed JSON.
json read_json_file(const std::string& path);
json parse_json_text(const std::string& text);

// Writes to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace pentagram
