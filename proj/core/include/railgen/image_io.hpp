#pragma once

#include <string>

#include "railgen/image.hpp"

namespace railgen {

/// Reads a PNG or binary PPM (P6, maxval 255) file; format picked by
/// extension (.png / .ppm, case-insensitive).
/// Throws FileAccessError when the file cannot be opened, DecodeError on
/// malformed headers or truncated pixel data, ConfigError on an unknown
/// extension.
RgbImage read_image(const std::string& path);

/// Writes PNG (8-bit RGB) or PPM P6. The PPM writer emits exactly
/// "P6\n{w} {h}\n255\n" followed by the pixel bytes, so fixture files are
/// bit-reproducible.
void write_image(const RgbImage& img, const std::string& path);

} // namespace railgen
