#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pentagram/matrix.hpp"
#include "pentagram/projective_core.hpp"

namespace pentagram {

struct SubspaceBasis {
  std::vector<Vector<double>> vectors;
  std::size_t dim() const { return vectors.size(); }
};

// Relative rank threshold for every float kernel computation in this module.
inline constexpr double kRankThreshold = 1e-10;

// Vertex offsets (relative to k) spanning the hyperplane P_k:
// n = 2s: k-2s+1, k-2s+3, ..., k+2s-1;  n = 2s+1: k-2s, k-2s+2, ..., k+2s.
std::vector<long> plane_vertex_indices(long k, int n);

// The two subspaces whose intersection is the lifted image of vertex k:
// n = 2s:   {V_{k-s}, V_{k-s+2}, ..., V_{k+s}} and {V_{k-s+1}, ..., V_{k+s+1}}
// n = 2s+1: {V_{k-s}, ..., V_{k+s}} (s+1) and {V_{k-s-1}, ..., V_{k+s+1}} (s+2).
std::pair<SubspaceBasis, SubspaceBasis> reduced_subspaces(const LiftedPolygon<double>& lp, long k);

// Spanning vector (unit length, arbitrary sign) of span(A) ∩ span(B); requires
// dim A + dim B = ambient + 1.
Vector<double> intersect_two_subspaces(const SubspaceBasis& a, const SubspaceBasis& b);

// Normal of the hyperplane spanned by n vectors in R^{n+1} (cofactor expansion).
Vector<double> generalized_cross_product(std::span<const Vector<double>> vectors);

// Intersection of the n lifted hyperplanes Pi_j, j = k-s+1..k+s (n even) or
// k-s..k+s (n odd), computed from stacked normals. Same line as the reduced
// two-subspace intersection at k.
Vector<double> hyperplane_intersection_oracle(const LiftedPolygon<double>& lp, long k);

// Chordal distance between the lines spanned by u and v: min |u/|u| ± v/|v||,
// which is the angle between them to first order.
double projective_distance(std::span<const double> u, std::span<const double> v);

// Generalised pentagram map on lifts, indexed so that the new V_k is
// proportional to rho_k r_k, then renormalised with lift_and_normalize.
// The OpenMP version parallelises the per-vertex intersections.
LiftedPolygon<double> pentagram_map_geometric(const LiftedPolygon<double>& lp);
LiftedPolygon<double> pentagram_map_geometric_serial(const LiftedPolygon<double>& lp);

// The image vertices before renormalisation: unit representatives, same
// monodromy. Their invariants can be read without the float lift step.
TwistedPolygon<double> pentagram_image_points(const LiftedPolygon<double>& lp);

// Classical map on a closed planar polygon in homogeneous coordinates:
// T(x)_k = (x_{k-1} x_{k+1}) ∩ (x_k x_{k+2}). No lifts, no coprimality.
std::vector<Vector<double>> pentagram_map_closed_planar(std::span<const Vector<double>> points);

// Projective transformation H of RP^n with H src_i ∝ dst_i for the n+2 given
// pairs (points in general position).
Matrix<double> fit_projective_transformation(std::span<const Vector<double>> src,
                                             std::span<const Vector<double>> dst);

}  // namespace pentagram
