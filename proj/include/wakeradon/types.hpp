#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wakeradon {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DetectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Square grayscale image, row-major, origin convention: the geometric
/// center of the grid is coordinate (0, 0). Pixel (row, col) has centered
/// coordinates x = col - (M-1)/2, y = row - (M-1)/2.
class Image {
  public:
    Image() = default;
    explicit Image(int side, double fill = 0.0)
        : side_(side), pixels_(static_cast<std::size_t>(side) * side, fill) {
        if (side <= 0) throw DimensionError("Image: side must be positive");
    }

    int side() const { return side_; }
    std::size_t size() const { return pixels_.size(); }

    double& at(int row, int col) { return pixels_[static_cast<std::size_t>(row) * side_ + col]; }
    double at(int row, int col) const { return pixels_[static_cast<std::size_t>(row) * side_ + col]; }

    double* data() { return pixels_.data(); }
    const double* data() const { return pixels_.data(); }
    std::vector<double>& pixels() { return pixels_; }
    const std::vector<double>& pixels() const { return pixels_; }

    /// Centered x coordinate of column `col` (and y of row, same formula).
    double centered(int idx) const { return idx - 0.5 * (side_ - 1); }

    bool all_finite() const {
        for (double v : pixels_)
            if (!std::isfinite(v)) return false;
        return true;
    }

  private:
    int side_ = 0;
    std::vector<double> pixels_;
};

/// Sampling grid of the Radon domain: n_theta angle bins covering
/// [0, 180) degrees uniformly and n_r offset bins covering [-r_max, +r_max]
/// uniformly, with r_max = ceil(M * sqrt(2) / 2) pixels for an M x M image.
/// `side` records the image side the grid was built for, so the inverse
/// transform knows its output dimensions.
struct RadonGrid {
    int side = 0;
    int n_r = 0;
    int n_theta = 0;
    double r_max = 0.0;

    /// Default grid for an M x M image: unit offset spacing, 1 degree bins.
    static RadonGrid for_image(int side, int n_theta = 180) {
        if (side <= 0) throw DimensionError("RadonGrid::for_image: side must be positive");
        const int r_max = static_cast<int>(std::ceil(side * std::sqrt(2.0) / 2.0));
        RadonGrid g{side, 2 * r_max + 1, n_theta, static_cast<double>(r_max)};
        g.validate();
        return g;
    }

    void validate() const {
        if (n_r < 2 || n_theta < 2)
            throw ConfigurationError("RadonGrid: n_r and n_theta must both be >= 2");
        if (r_max <= 0.0) throw ConfigurationError("RadonGrid: r_max must be positive");
        if (side <= 0) throw ConfigurationError("RadonGrid: image side must be positive");
    }

    double theta_spacing_deg() const { return 180.0 / n_theta; }
    double r_spacing() const { return 2.0 * r_max / (n_r - 1); }

    /// Bin centers. theta_of(0) = 0 degrees; r_of runs -r_max .. +r_max.
    double theta_of_deg(int j) const { return j * theta_spacing_deg(); }
    double theta_of_rad(int j) const { return deg_to_rad(theta_of_deg(j)); }
    double r_of(int i) const { return -r_max + i * r_spacing(); }

    /// Nearest bin indices for physical line parameters.
    int nearest_r_bin(double r) const {
        int i = static_cast<int>(std::lround((r + r_max) / r_spacing()));
        return i < 0 ? 0 : (i >= n_r ? n_r - 1 : i);
    }
    int nearest_theta_bin(double theta_deg) const {
        int j = static_cast<int>(std::lround(theta_deg / theta_spacing_deg())) % n_theta;
        return j < 0 ? j + n_theta : j;
    }

    bool operator==(const RadonGrid& o) const {
        return side == o.side && n_r == o.n_r && n_theta == o.n_theta && r_max == o.r_max;
    }
};

/// Image over a RadonGrid, indexed (r bin, theta bin), row-major in r.
class RadonImage {
  public:
    RadonImage() = default;
    explicit RadonImage(const RadonGrid& grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<std::size_t>(grid.n_r) * grid.n_theta, fill) {}

    const RadonGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n_theta + j]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n_theta + j]; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

  private:
    RadonGrid grid_;
    std::vector<double> values_;
};

// Small dense-vector helpers shared by the solver and the tests.

inline double frobenius_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double frobenius_norm(const Image& img) { return frobenius_norm(img.pixels()); }
inline double frobenius_norm(const RadonImage& r) { return frobenius_norm(r.values()); }

/// Mean and population standard deviation of the pixel values.
struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

inline MeanStd mean_std(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

/// Zero-mean unit-variance copy; a constant image is only recentered.
inline Image standardize(const Image& img, MeanStd* stats = nullptr) {
    MeanStd ms = mean_std(img.pixels());
    Image out(img.side());
    const double scale = ms.std > 0.0 ? 1.0 / ms.std : 1.0;
    for (std::size_t i = 0; i < img.size(); ++i)
        out.pixels()[i] = (img.pixels()[i] - ms.mean) * scale;
    if (stats) *stats = ms;
    return out;
}

}  // namespace wakeradon
