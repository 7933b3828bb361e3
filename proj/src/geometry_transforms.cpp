#include "wakeradon/geometry_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fft_radix2.hpp"
#include "wakeradon/parallel.hpp"
#include "wakeradon/rng.hpp"

namespace wakeradon {
namespace {

// Frequency response of the band-limited ramp kernel (unit sample spacing)
// times a raised-cosine window that reaches zero at Nyquist. Real and
// symmetric, so the column filter it defines is exactly self-adjoint.
std::vector<double> ramp_response(std::size_t n_fft) {
    std::vector<std::complex<double>> kernel(n_fft, 0.0);
    kernel[0] = 0.25;
    for (std::size_t k = 1; k <= n_fft / 2; ++k) {
        const double v = (k % 2 == 1) ? -1.0 / (kPi * kPi * static_cast<double>(k * k)) : 0.0;
        kernel[k] = v;
        kernel[n_fft - k] = v;
    }
    detail::fft_radix2(kernel, false);
    std::vector<double> response(n_fft);
    for (std::size_t k = 0; k < n_fft; ++k) {
        // f in cycles/sample, folded to [-1/2, 1/2); window = cos^2(pi f)
        const double f = (k <= n_fft / 2 ? static_cast<double>(k)
                                         : static_cast<double>(k) - static_cast<double>(n_fft)) /
                         static_cast<double>(n_fft);
        const double w = 0.5 * (1.0 + std::cos(2.0 * kPi * f));
        response[k] = kernel[k].real() * w;
    }
    return response;
}

// Ramp-filters every theta column of `values` (n_r x n_theta) in place.
void filter_columns(std::vector<double>& values, int n_r, int n_theta) {
    const std::size_t n_fft = detail::next_pow2(2 * static_cast<std::size_t>(n_r));
    const std::vector<double> response = ramp_response(n_fft);
    parallel_for(n_theta, [&](int j_begin, int j_end) {
        std::vector<std::complex<double>> buf(n_fft);
        for (int j = j_begin; j < j_end; ++j) {
            std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
            for (int i = 0; i < n_r; ++i) buf[i] = values[static_cast<std::size_t>(i) * n_theta + j];
            detail::fft_radix2(buf, false);
            for (std::size_t k = 0; k < n_fft; ++k) buf[k] *= response[k];
            detail::fft_radix2(buf, true);
            for (int i = 0; i < n_r; ++i)
                values[static_cast<std::size_t>(i) * n_theta + j] = buf[i].real();
        }
    });
}

struct Trig {
    std::vector<double> cos_t;
    std::vector<double> sin_t;
    explicit Trig(const RadonGrid& grid) : cos_t(grid.n_theta), sin_t(grid.n_theta) {
        for (int j = 0; j < grid.n_theta; ++j) {
            cos_t[j] = std::cos(grid.theta_of_rad(j));
            sin_t[j] = std::sin(grid.theta_of_rad(j));
        }
    }
};

}  // namespace

RadonImage radon_forward(const Image& img, const RadonGrid& grid) {
    grid.validate();
    if (img.side() <= 0) throw DimensionError("radon_forward: empty image");
    const int side = img.side();
    const double center = 0.5 * (side - 1);
    const Trig trig(grid);
    // sample span covering the full diagonal
    const int t_max = static_cast<int>(std::ceil(side * std::sqrt(2.0) / 2.0));

    RadonImage out(grid);
    parallel_for(grid.n_theta, [&](int j_begin, int j_end) {
        for (int j = j_begin; j < j_end; ++j) {
            const double ct = trig.cos_t[j];
            const double st = trig.sin_t[j];
            for (int i = 0; i < grid.n_r; ++i) {
                const double r = grid.r_of(i);
                double acc = 0.0;
                for (int t = -t_max; t <= t_max; ++t) {
                    const double px = r * ct - t * st + center;
                    const double py = r * st + t * ct + center;
                    const int x0 = static_cast<int>(std::floor(px));
                    const int y0 = static_cast<int>(std::floor(py));
                    if (x0 < -1 || x0 >= side || y0 < -1 || y0 >= side) continue;
                    const double ax = px - x0;
                    const double ay = py - y0;
                    double v = 0.0;
                    if (x0 >= 0 && y0 >= 0) v += (1.0 - ax) * (1.0 - ay) * img.at(y0, x0);
                    if (x0 + 1 < side && y0 >= 0) v += ax * (1.0 - ay) * img.at(y0, x0 + 1);
                    if (x0 >= 0 && y0 + 1 < side) v += (1.0 - ax) * ay * img.at(y0 + 1, x0);
                    if (x0 + 1 < side && y0 + 1 < side) v += ax * ay * img.at(y0 + 1, x0 + 1);
                    acc += v;
                }
                out.at(i, j) = acc;
            }
        }
    });
    return out;
}

Image radon_inverse(const RadonImage& rimg) {
    const RadonGrid& grid = rimg.grid();
    grid.validate();
    if (static_cast<std::size_t>(grid.n_r) * grid.n_theta != rimg.size())
        throw DimensionError("radon_inverse: value buffer does not match grid");

    std::vector<double> filtered = rimg.values();
    filter_columns(filtered, grid.n_r, grid.n_theta);

    const int side = grid.side;
    const double center = 0.5 * (side - 1);
    const double r_min = -grid.r_max;
    const double inv_dr = 1.0 / grid.r_spacing();
    const double scale = kPi / grid.n_theta;
    const Trig trig(grid);

    Image out(side);
    parallel_for(side, [&](int row_begin, int row_end) {
        for (int row = row_begin; row < row_end; ++row) {
            const double y = row - center;
            for (int col = 0; col < side; ++col) {
                const double x = col - center;
                double acc = 0.0;
                for (int j = 0; j < grid.n_theta; ++j) {
                    const double r = x * trig.cos_t[j] + y * trig.sin_t[j];
                    const double fi = (r - r_min) * inv_dr;
                    const int i0 = static_cast<int>(std::floor(fi));
                    if (i0 < 0 || i0 + 1 >= grid.n_r) continue;
                    const double a = fi - i0;
                    acc += (1.0 - a) * filtered[static_cast<std::size_t>(i0) * grid.n_theta + j] +
                           a * filtered[static_cast<std::size_t>(i0 + 1) * grid.n_theta + j];
                }
                out.at(row, col) = acc * scale;
            }
        }
    });
    return out;
}

RadonImage radon_inverse_adjoint(const Image& img, const RadonGrid& grid) {
    grid.validate();
    if (img.side() != grid.side)
        throw DimensionError("radon_inverse_adjoint: image side does not match grid");

    const int side = img.side();
    const double center = 0.5 * (side - 1);
    const double r_min = -grid.r_max;
    const double inv_dr = 1.0 / grid.r_spacing();
    const double scale = kPi / grid.n_theta;
    const Trig trig(grid);

    RadonImage out(grid);
    std::vector<double>& acc = out.values();
    // scatter of the backprojection weights, one theta column per task so
    // accumulation order is fixed regardless of worker count
    parallel_for(grid.n_theta, [&](int j_begin, int j_end) {
        for (int j = j_begin; j < j_end; ++j) {
            const double ct = trig.cos_t[j];
            const double st = trig.sin_t[j];
            for (int row = 0; row < side; ++row) {
                const double y = row - center;
                for (int col = 0; col < side; ++col) {
                    const double x = col - center;
                    const double r = x * ct + y * st;
                    const double fi = (r - r_min) * inv_dr;
                    const int i0 = static_cast<int>(std::floor(fi));
                    if (i0 < 0 || i0 + 1 >= grid.n_r) continue;
                    const double a = fi - i0;
                    const double v = img.at(row, col) * scale;
                    acc[static_cast<std::size_t>(i0) * grid.n_theta + j] += (1.0 - a) * v;
                    acc[static_cast<std::size_t>(i0 + 1) * grid.n_theta + j] += a * v;
                }
            }
        }
    });
    filter_columns(acc, grid.n_r, grid.n_theta);
    return out;
}

LipschitzEstimate estimate_lipschitz(const RadonGrid& grid, int side, int iters, double tol) {
    grid.validate();
    if (iters < 10) throw ConfigurationError("estimate_lipschitz: iters must be >= 10");
    if (side != grid.side)
        throw DimensionError("estimate_lipschitz: side does not match grid");

    RadonImage v(grid);
    for (std::size_t k = 0; k < v.size(); ++k)
        v.values()[k] = rng::normal(/*seed=*/0, /*stream=*/0, k);
    {
        const double nv = frobenius_norm(v);
        for (double& x : v.values()) x /= nv;
    }

    LipschitzEstimate est;
    double lambda_prev = 0.0;
    for (int it = 1; it <= iters; ++it) {
        const Image cv = radon_inverse(v);
        // Rayleigh quotient of C^T C at the unit iterate is just ||C v||^2
        double lambda = 0.0;
        for (double x : cv.pixels()) lambda += x * x;
        est.sigma_max = std::sqrt(lambda);
        est.value = 2.0 * lambda;
        est.iterations = it;
        if (lambda == 0.0) {
            est.converged = true;
            return est;
        }
        if (it > 1 && std::abs(lambda - lambda_prev) < tol * lambda) {
            est.converged = true;
            return est;
        }
        lambda_prev = lambda;
        RadonImage w = radon_inverse_adjoint(cv, grid);
        const double norm_w = frobenius_norm(w);
        for (double& x : w.values()) x /= norm_w;
        v = std::move(w);
    }
    est.converged = false;
    return est;
}

}  // namespace wakeradon
