#pragma once

#include <array>
#include <string>

#include "wakeradon/types.hpp"
#include "wakeradon/wake_detection.hpp"

namespace wakeradon {

/// Loads a square grayscale image. Formats by content sniffing:
/// PNG (8/16-bit gray), binary PGM (P5, 8/16-bit), and raw 32-bit
/// little-endian floats behind a one-line text header "M <side>".
/// Throws IoError with a format diagnosis.
Image load_image(const std::string& path);

/// Writes the raw float format ("M <side>\n" + side*side little-endian f32,
/// row-major). Lossless enough for detection round trips.
void save_image_raw(const std::string& path, const Image& img);

/// Writes an 8-bit grayscale PNG, linearly rescaled to the image min/max.
void save_image_png(const std::string& path, const Image& img);

/// Writes the image as an 8-bit RGB PNG with confirmed wakes drawn as
/// colored half-lines: yellow turbulent, green narrow-V, red Kelvin.
void save_overlay_png(const std::string& path, const Image& img, const WakeReport& report,
                      const ShipMaskSpec& resolved_mask);

}  // namespace wakeradon
