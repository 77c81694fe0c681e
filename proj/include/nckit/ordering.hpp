#pragma once

#include <span>
#include <vector>

#include "nckit/kernels.hpp"

namespace nckit {

// Transforms from normal ordering (s = 1) to s-ordering for a field with M
// effective modes. Lowering s adds thermal noise of mean (1 - s)/2 per mode.

/// Coefficient linking the normally ordered intensity moment of order i' to
/// the s-ordered moment of order i: C(i, i') Gamma(i+M)/Gamma(i'+M) mu^(i-i').
double intensity_transform_coefficient(int i, int iprime, double s, double modes);

/// Coefficient linking p(i') to the s-ordered probability p_s(i). Evaluated
/// as a sum of nonnegative terms; entries lie in [0, 1] and every column sums
/// to one over i. Requires -1 < s <= 1.
double probability_transform_coefficient(int i, int iprime, double s, double modes);

/// The same coefficient from the alternating-sign series. Loses accuracy
/// quickly as i, i' grow; kept as a cross-check.
double probability_transform_coefficient_alternating(int i, int iprime, double s, double modes);

/// rows x cols matrix of probability_transform_coefficient, built by a
/// positive recurrence in O(rows * cols). Identity block when s = 1.
Matrix probability_transform_matrix(int rows, int cols, double s, double modes);

/// w(n) = sum_{i'} S_W(i, i') n!/(n - i')! for n = 0..count-1, so that the
/// s-ordered moment of order i equals sum_n w(n) p(n).
std::vector<double> ordered_moment_weights(int order, int count, double s, double modes);

/// <W^i>_s from the normally ordered moments <W^0>..<W^i>.
double s_transform_W(int order, std::span<const double> moments, double s, double modes);

/// p_s(i) from p(0)..p(K-1); the sum over i' stops at K.
double s_transform_p(int index, std::span<const double> probs, double s, double modes);

}  // namespace nckit
