#pragma once

#include <vector>

#include "geometry.hpp"
#include "graph.hpp"

namespace spx {

// Per-vertex gradient rows; same shape as the layout.
using Grad = std::vector<Vec2>;

// Sum over vertex pairs of w_ij * (||C_i - C_j|| - d_ij)^2.
double stress_value(const Layout& l, const DistanceMatrix& dm);

// Analytic stress gradient. Exactly coincident vertex pairs get a
// deterministic 1e-9 displacement (derived from the pair indices) before
// differentiation; each displaced vertex bumps *jitter_count when provided.
Grad stress_gradient(const Layout& l, const DistanceMatrix& dm, int* jitter_count = nullptr);

// Majorization descent: each iteration solves the weighted-Laplacian system
// for the coordinate update, which never increases stress. The layout is
// re-centered at the origin every iteration to fix the translation gauge.
// Stops after max_iters or once the relative stress decrease drops below tol.
// When given, *stress_trace receives the stress before the first update and
// after every update.
Layout stress_majorize(const Graph& g, const DistanceMatrix& dm, const Layout& init,
                       int max_iters = 300, double tol = 1e-6,
                       std::vector<double>* stress_trace = nullptr);

} // namespace spx
