#pragma once

#include <cstdint>

#include "wakeradon/types.hpp"

namespace wakeradon {

/// Discrete Radon transform. The value at bin (r, theta) is the integral of
/// the image along the line x*cos(theta) + y*sin(theta) = r, sampled at
/// unit-pixel steps with bilinear interpolation; samples outside the image
/// contribute zero. Exactly linear in the image.
///
/// Throws DimensionError for a non-square image (unreachable through Image)
/// and ConfigurationError for a degenerate grid.
RadonImage radon_forward(const Image& img, const RadonGrid& grid);

/// Inverse Radon transform by filtered backprojection: each theta column is
/// ramp-filtered along r (frequency-domain |f| response of the band-limited
/// ramp kernel, with a raised-cosine rolloff reaching zero at Nyquist), then
/// backprojected with linear interpolation in r and scaled by pi / n_theta.
/// Output side comes from the grid. Exactly linear in the input.
Image radon_inverse(const RadonImage& rimg);

/// Exact adjoint of radon_inverse as a linear map: for all x, y,
/// <C x, y>_image == <x, C^T y>_radon up to floating-point roundoff.
/// Implemented as the backprojection gather run in reverse (scatter over the
/// same interpolation weights) followed by the self-adjoint ramp filter.
RadonImage radon_inverse_adjoint(const Image& img, const RadonGrid& grid);

struct LipschitzEstimate {
    double value = 0.0;      ///< L = 2 * sigma_max(C)^2
    double sigma_max = 0.0;  ///< estimated largest singular value of C
    int iterations = 0;
    bool converged = false;
};

/// Power iteration on C^T C from a fixed-seed random start (seed 0), stopping
/// when the Rayleigh quotient changes by less than `tol` relative or after
/// `iters` products. Deterministic; returns the last estimate with
/// converged = false when the budget runs out.
LipschitzEstimate estimate_lipschitz(const RadonGrid& grid, int side, int iters = 200,
                                     double tol = 1e-6);

}  // namespace wakeradon
