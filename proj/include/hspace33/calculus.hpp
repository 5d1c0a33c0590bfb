#pragma once

// Levi-Civita calculus on a MetricField. Everything that needs the inverse
// metric is evaluated exactly per point; only partial derivatives are symbolic.
//
// Curvature convention:
//   R^i_jkl = d_k Gamma^i_jl - d_l Gamma^i_jk + Gamma^i_mk Gamma^m_jl - Gamma^i_ml Gamma^m_jk
// so that constant curvature reads R^i_jkl = K (delta^i_k g_jl - delta^i_l g_jk).

#include <array>
#include <vector>

#include "hspace33/tensor.hpp"

namespace h33 {

PointMatrix metric_at(const MetricField& g, const Point& p);
PointMatrix inverse_at(const PointMatrix& m);

PointwiseField christoffel(const MetricField& g);
PointwiseField riemann(const MetricField& g);
// b_ij;k = d_k b_ij - Gamma^m_ik b_mj - Gamma^m_jk b_im
PointwiseField covariant_derivative_02(const TensorField& b, const MetricField& g);
// f;jl = d_j d_l f - Gamma^m_jl d_m f
PointwiseField covariant_hessian(const Expr& f, const MetricField& g);
// (L_xi g)_ij = xi^m d_m g_ij + g_mj d_i xi^m + g_im d_j xi^m
TensorField lie_derivative_metric(const TensorField& xi, const MetricField& g);

// Jet-level kernels, for callers that evaluate several quantities at one point.
PointTensor riemann_at(const MetricJet& jet);
PointTensor covariant_derivative_at(const PointTensor& b, const PointTensor& db, const MetricJet& jet);
PointMatrix covariant_hessian_at(const std::array<Rational, kDimension>& df, const PointMatrix& ddf,
                                 const MetricJet& jet);

// Symbolic partials of a scalar / a (0,2) field, in the layouts the kernels take.
std::array<Expr, kDimension> gradient(const Expr& f);
std::array<std::array<Expr, kDimension>, kDimension> second_partials(const Expr& f);
TensorField partials_02(const TensorField& b);  // (0,3): out(k, i, j) = d_k b_ij

// The endomorphism g^-1 b at p (rows: upper index).
PointMatrix endomorphism_at(const TensorField& b, const MetricField& g, const Point& p);
// Coefficients (ascending in lambda) of det(g^-1 b - lambda I).
std::vector<Rational> char_poly_at(const TensorField& b, const MetricField& g, const Point& p);
// Ranks of (g^-1 b - lambda I)^k for k = 1, 2, 3.
std::array<std::size_t, 3> rank_profile_at(const TensorField& b, const MetricField& g, const Rational& lambda,
                                           const Point& p);

}  // namespace h33
