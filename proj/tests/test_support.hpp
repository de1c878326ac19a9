#pragma once

// Independent oracles for the tests: definitions evaluated the slow, obvious
// way, sharing nothing with the library code they check beyond the types.

#include <algorithm>
#include <numeric>
#include <vector>

#include "pentagram/matrix.hpp"
#include "pentagram/pentagram_geometric.hpp"
#include "pentagram/projective_core.hpp"
#include "pentagram/suite.hpp"

namespace oracle {

using pentagram::InvariantField;
using pentagram::LiftedPolygon;
using pentagram::Matrix;
using pentagram::Rational;
using pentagram::Vector;

// Leibniz expansion over all permutations.
template <class T>
T leibniz_determinant(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Matrix<Rational> random_matrix(std::size_t rows, std::size_t cols, pentagram::Rng& rng) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = pentagram::random_rational(rng);
  return m;
}

// Random element of SL(m, Q): unit lower times unit upper triangular.
inline Matrix<Rational> random_unimodular(std::size_t m, pentagram::Rng& rng) {
  Matrix<Rational> L = Matrix<Rational>::identity(m);
  Matrix<Rational> U = Matrix<Rational>::identity(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < r; ++c) {
      L(r, c) = pentagram::random_rational(rng);
      U(c, r) = pentagram::random_rational(rng);
    }
  return L * U;
}

// The one-dimensional kernel of the rows, exactly; empty if not 1-dimensional.
inline Vector<Rational> line_orthogonal_to(const std::vector<Vector<Rational>>& rows) {
  Matrix<Rational> m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  auto basis = pentagram::nullspace(m);
  return basis.size() == 1 ? basis.front() : Vector<Rational>{};
}

// Image vertex k of the map straight from its definition: the intersection of
// the n hyperplanes P_j = span{V_m : m in plane_vertex_indices(j)} around the
// centre the library's labelling attaches to k. Everything exact.
inline Vector<Rational> image_vertex_by_hyperplanes(const LiftedPolygon<Rational>& lp, long k) {
  const int n = lp.n();
  const int s = n / 2;
  const long centre = n % 2 == 0 ? k + s : k + s + 1;
  const long first = n % 2 == 0 ? centre - s + 1 : centre - s;
  std::vector<Vector<Rational>> normals;
  for (long j = first; j < first + n; ++j) {
    std::vector<Vector<Rational>> span;
    for (long m : pentagram::plane_vertex_indices(j, n)) span.push_back(lp.vertex(m));
    normals.push_back(line_orthogonal_to(span));
    if (normals.back().empty()) return {};
  }
  return line_orthogonal_to(normals);
}

// T on invariants via exact geometry: reconstruct, intersect hyperplanes,
// read off invariants of the image polygon (same monodromy).
inline InvariantField<Rational> map_by_hyperplanes(const InvariantField<Rational>& a) {
  const LiftedPolygon<Rational> lp = pentagram::reconstruct(a, Matrix<Rational>::identity(a.n() + 1));
  pentagram::TwistedPolygon<Rational> image{a.n(), a.N(), {}, lp.monodromy()};
  for (long k = 0; k < a.N(); ++k) image.points.push_back(image_vertex_by_hyperplanes(lp, k));
  return pentagram::projective_invariants(image);
}

// Dense solve of sum_{r<w} x_{k+r} = b_k (indices mod N), exact.
inline std::vector<Rational> dense_window_solve(const std::vector<Rational>& b, int w) {
  const std::size_t N = b.size();
  Matrix<Rational> A(N, N);
  for (std::size_t k = 0; k < N; ++k)
    for (int r = 0; r < w; ++r) A(k, (k + r) % N) += 1;
  return *pentagram::solve(A, Vector<Rational>(b));
}

}  // namespace oracle
