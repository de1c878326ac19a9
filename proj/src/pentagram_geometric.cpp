#include "pentagram/pentagram_geometric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace pentagram {

namespace {

Eigen::MatrixXd unit_columns(std::span<const Vector<double>> vectors, std::size_t rows) {
  Eigen::MatrixXd m(rows, vectors.size());
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    const double len = norm2(vectors[c]);
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = len == 0.0 ? 0.0 : vectors[c][r] / len;
  }
  return m;
}

struct Kernel {
  long dimension;
  Eigen::VectorXd vector;  // last right singular vector
};

Kernel kernel_of(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  long rank = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankThreshold * top) ++rank;
  return Kernel{static_cast<long>(m.cols()) - rank, svd.matrixV().col(m.cols() - 1)};
}

long matrix_rank(const Eigen::MatrixXd& m) {
  return static_cast<long>(m.cols()) - kernel_of(m).dimension;
}

Vector<double> normalized(Vector<double> v) {
  const double len = norm2(v);
  for (double& x : v) x /= len;
  return v;
}

SubspaceBasis stride_two(const LiftedPolygon<double>& lp, long first, long last) {
  SubspaceBasis b;
  for (long j = first; j <= last; j += 2) b.vectors.push_back(lp.vertex(j));
  return b;
}

long image_centre(long k, int n) {
  const int s = n / 2;
  return n % 2 == 0 ? k + s : k + s + 1;
}

}  // namespace

std::vector<long> plane_vertex_indices(long k, int n) {
  if (n < 2) throw Error(ErrorCode::InputError, "plane_vertex_indices needs n >= 2");
  const int s = n / 2;
  std::vector<long> idx;
  const long first = n % 2 == 0 ? k - 2 * s + 1 : k - 2 * s;
  for (int i = 0; i < n; ++i) idx.push_back(first + 2 * i);
  return idx;
}

std::pair<SubspaceBasis, SubspaceBasis> reduced_subspaces(const LiftedPolygon<double>& lp, long k) {
  const int n = lp.n();
  const int s = n / 2;
  std::pair<SubspaceBasis, SubspaceBasis> out;
  if (n % 2 == 0) {
    out = {stride_two(lp, k - s, k + s), stride_two(lp, k - s + 1, k + s + 1)};
  } else {
    out = {stride_two(lp, k - s, k + s), stride_two(lp, k - s - 1, k + s + 1)};
  }
  for (const SubspaceBasis* b : {&out.first, &out.second}) {
    if (matrix_rank(unit_columns(b->vectors, n + 1)) != static_cast<long>(b->dim()))
      throw Error(ErrorCode::Degenerate, "rank-deficient subspace family at k=" + std::to_string(k));
  }
  return out;
}

Vector<double> intersect_two_subspaces(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.dim() == 0 || b.dim() == 0) throw Error(ErrorCode::InputError, "empty subspace basis");
  const std::size_t ambient = a.vectors.front().size();
  if (a.dim() + b.dim() != ambient + 1)
    throw Error(ErrorCode::InputError, "dim A + dim B must equal the ambient dimension plus one");
  const Eigen::MatrixXd ea = unit_columns(a.vectors, ambient);
  const Eigen::MatrixXd eb = unit_columns(b.vectors, ambient);
  Eigen::MatrixXd system(ambient, a.dim() + b.dim());
  system << ea, -eb;
  const Kernel ker = kernel_of(system);
  if (ker.dimension == 0) throw Error(ErrorCode::NoIntersection, "subspaces meet only in 0");
  if (ker.dimension > 1) throw Error(ErrorCode::NotTransverse, "intersection has dimension > 1");
  const Eigen::VectorXd point = ea * ker.vector.head(static_cast<long>(a.dim()));
  Vector<double> out(point.data(), point.data() + point.size());
  return normalized(std::move(out));
}

Vector<double> generalized_cross_product(std::span<const Vector<double>> vectors) {
  const std::size_t n = vectors.size();
  const std::size_t dim = n + 1;
  Vector<double> normal(dim, 0.0);
  for (std::size_t skip = 0; skip < dim; ++skip) {
    Matrix<double> minor(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t r_out = 0;
      for (std::size_t r = 0; r < dim; ++r) {
        if (r == skip) continue;
        minor(r_out++, c) = vectors[c][r];
      }
    }
    const double cof = determinant(minor);
    normal[skip] = (skip % 2 == 0) ? cof : -cof;
  }
  return normal;
}

Vector<double> hyperplane_intersection_oracle(const LiftedPolygon<double>& lp, long k) {
  const int n = lp.n();
  const int s = n / 2;
  const long first = n % 2 == 0 ? k - s + 1 : k - s;
  Eigen::MatrixXd normals(n, n + 1);
  for (int h = 0; h < n; ++h) {
    std::vector<Vector<double>> span;
    for (long j : plane_vertex_indices(first + h, n)) span.push_back(normalized(lp.vertex(j)));
    const Vector<double> nv = generalized_cross_product(span);
    const double len = norm2(nv);
    if (len == 0.0) throw Error(ErrorCode::NotTransverse, "hyperplane vertices are dependent");
    for (int c = 0; c <= n; ++c) normals(h, c) = nv[c] / len;
  }
  const Kernel ker = kernel_of(normals);
  if (ker.dimension != 1) throw Error(ErrorCode::NotTransverse, "hyperplanes do not meet in a line");
  Vector<double> out(ker.vector.data(), ker.vector.data() + ker.vector.size());
  return normalized(std::move(out));
}

double projective_distance(std::span<const double> u, std::span<const double> v) {
  const double nu = norm2(u);
  const double nv = norm2(v);
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    plus += (u[i] / nu - v[i] / nv) * (u[i] / nu - v[i] / nv);
    minus += (u[i] / nu + v[i] / nv) * (u[i] / nu + v[i] / nv);
  }
  return std::sqrt(std::min(plus, minus));
}

namespace {

std::vector<Vector<double>> image_points(const LiftedPolygon<double>& lp, bool parallel) {
  const int N = lp.N();
  std::vector<Vector<double>> points(N);
  std::vector<std::string> errors(N);
  std::vector<ErrorCode> codes(N, ErrorCode::InputError);
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < N; ++k) {
    try {
      const auto [a, b] = reduced_subspaces(lp, image_centre(k, lp.n()));
      points[k] = intersect_two_subspaces(a, b);
    } catch (const Error& e) {
      errors[k] = e.what();
      codes[k] = e.code();
    }
  }
  for (int k = 0; k < N; ++k)
    if (!errors[k].empty()) throw Error(codes[k], "vertex " + std::to_string(k) + ": " + errors[k]);
  return points;
}

LiftedPolygon<double> map_impl(const LiftedPolygon<double>& lp, bool parallel) {
  require_coprime(lp.N(), lp.n() + 1);
  TwistedPolygon<double> image{lp.n(), lp.N(), image_points(lp, parallel), lp.monodromy()};
  return lift_and_normalize(image);
}

}  // namespace

TwistedPolygon<double> pentagram_image_points(const LiftedPolygon<double>& lp) {
  return TwistedPolygon<double>{lp.n(), lp.N(), image_points(lp, true), lp.monodromy()};
}

LiftedPolygon<double> pentagram_map_geometric(const LiftedPolygon<double>& lp) { return map_impl(lp, true); }

LiftedPolygon<double> pentagram_map_geometric_serial(const LiftedPolygon<double>& lp) {
  return map_impl(lp, false);
}

std::vector<Vector<double>> pentagram_map_closed_planar(std::span<const Vector<double>> points) {
  const long N = static_cast<long>(points.size());
  if (N < 5) throw Error(ErrorCode::InputError, "need at least 5 vertices");
  for (const auto& p : points)
    if (p.size() != 3) throw Error(ErrorCode::InputError, "planar map needs homogeneous coordinates in R^3");
  auto at = [&](long j) { return points[static_cast<std::size_t>(floor_mod(j, N))]; };
  std::vector<Vector<double>> out;
  out.reserve(points.size());
  for (long k = 0; k < N; ++k) {
    const SubspaceBasis chord1{{at(k - 1), at(k + 1)}};
    const SubspaceBasis chord2{{at(k), at(k + 2)}};
    out.push_back(intersect_two_subspaces(chord1, chord2));
  }
  return out;
}

Matrix<double> fit_projective_transformation(std::span<const Vector<double>> src,
                                             std::span<const Vector<double>> dst) {
  if (src.empty() || src.size() != dst.size() || src.size() != src.front().size() + 1)
    throw Error(ErrorCode::InputError, "need n+2 point pairs in RP^n");
  const std::size_t dim = src.front().size();
  // Columns of P scaled so that they sum to the last point; H maps one such
  // frame onto the other.
  auto frame = [dim](std::span<const Vector<double>> pts) {
    const Matrix<double> basis = Matrix<double>::from_columns(pts.first(dim));
    auto coeff = solve(basis, pts[dim]);
    if (!coeff) throw Error(ErrorCode::Degenerate, "points are not in general position");
    Matrix<double> scaled = basis;
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= (*coeff)[c];
    return scaled;
  };
  const Matrix<double> from = frame(src);
  const Matrix<double> to = frame(dst);
  auto from_inv = inverse(from);
  if (!from_inv) throw Error(ErrorCode::Degenerate, "points are not in general position");
  return to * *from_inv;
}

}  // namespace pentagram
