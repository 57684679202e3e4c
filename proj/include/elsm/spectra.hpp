#pragma once

#include <vector>

#include "elsm/types.hpp"

namespace elsm {

// Vertical wavenumber sqrt(k^2 - xi^2) on the branch with Im >= 0.
complex gamma_branch(double k, double xi);

struct ProjectionPair {
  Mat2c p;  // compressional part, range span{(xi, gamma_p)}
  Mat2c s;  // shear part, range span{(gamma_s, -xi)}
};

// Spectral projections splitting an upward-radiating plane-wave amplitude
// into compressional and shear constituents: p + s = I, p^2 = p, s^2 = s,
// p s = s p = 0. Throws std::domain_error if |xi^2 + gamma_p gamma_s| < 1e-12
// (never reached for real xi with a valid medium).
ProjectionPair projection_matrices(double xi, const ElasticMedium& med);

// Symbol of the Dirichlet-to-Neumann map on a horizontal line.
Mat2c dtn_symbol(double xi, const ElasticMedium& med);

// Field samples on the line x2 = height: values[m] at x1 = x1_start + m*spacing.
struct LineField {
  double height = 0.0;
  double x1_start = 0.0;
  double spacing = 0.0;
  std::vector<Vec2c> values;
};

struct PropagationDiagnostics {
  double edge_ratio = 0.0;  // max(|first|, |last|) / max over all samples
  bool window_warning = false;
};

// Propagates an upward-radiating field given on a horizontal line to targets
// strictly above it, via the semidiscrete angular-spectrum transform. The
// quadrature in the spectral variable refines around the branch points
// +-kp, +-ks with a square-root substitution. Targets at or below the line
// height are rejected. A window warning is recorded in diag when the edge
// samples are not negligible against the peak.
std::vector<Vec2c> angular_spectrum_propagate(const LineField& line,
                                              const ElasticMedium& med,
                                              const std::vector<Point2>& targets,
                                              PropagationDiagnostics* diag = nullptr,
                                              double edge_warn_threshold = 1e-8);

}  // namespace elsm
