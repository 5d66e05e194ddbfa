#include "railgen/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace railgen {

namespace {

std::string lower_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

// --- PPM (P6, maxval 255) ---------------------------------------------------

// Skips whitespace and '#' comment lines, then reads one unsigned decimal token.
bool next_ppm_token(std::istream& in, std::string& token) {
    token.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        token.push_back(static_cast<char>(c));
        c = in.get();
    }
    return !token.empty();
}

RgbImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileAccessError("cannot open file: " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '6')
        throw DecodeError("malformed header: not a P6 PPM: " + path);

    std::string tok;
    long w = 0, h = 0, maxval = 0;
    try {
        if (!next_ppm_token(in, tok)) throw DecodeError("");
        w = std::stol(tok);
        if (!next_ppm_token(in, tok)) throw DecodeError("");
        h = std::stol(tok);
        if (!next_ppm_token(in, tok)) throw DecodeError("");
        maxval = std::stol(tok);
    } catch (const std::exception&) {
        throw DecodeError("malformed header: bad PPM dimensions: " + path);
    }
    if (w <= 0 || h <= 0) throw DecodeError("malformed header: bad PPM dimensions: " + path);
    if (maxval != 255) throw DecodeError("malformed header: PPM maxval must be 255: " + path);
    // next_ppm_token consumed the single whitespace byte after maxval.

    RgbImage img(static_cast<int>(w), static_cast<int>(h));
    auto& bytes = img.bytes();
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size())
        throw DecodeError("truncated pixel data: " + path);
    return img;
}

void write_ppm(const RgbImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileAccessError("cannot open file for writing: " + path);
    out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.bytes().data()),
              static_cast<std::streamsize>(img.bytes().size()));
    if (!out) throw IoError("write failed: " + path);
}

// --- PNG (via libpng) -------------------------------------------------------

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

RgbImage read_png(const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw FileAccessError("cannot open file: " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw DecodeError("malformed header: not a PNG: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng initialization failed");
    }

    RgbImage img;
    std::vector<png_bytep> rows;
    // libpng reports errors through longjmp; everything that must be cleaned
    // up lives outside this scope or is trivially destructible.
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("truncated pixel data or corrupt PNG: " + path);
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize everything to 8-bit RGB.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (png_get_rowbytes(png, info) != static_cast<std::size_t>(w) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("unsupported PNG layout: " + path);
    }

    img = RgbImage(static_cast<int>(w), static_cast<int>(h));
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = img.bytes().data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_png(const RgbImage& img, const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw FileAccessError("cannot open file for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG write failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
                 static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(img.height());
    for (int y = 0; y < img.height(); ++y)
        rows[y] = const_cast<png_bytep>(img.bytes().data() +
                                        static_cast<std::size_t>(y) * img.width() * 3);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

RgbImage read_image(const std::string& path) {
    const std::string ext = lower_extension(path);
    if (ext == "ppm") return read_ppm(path);
    if (ext == "png") return read_png(path);
    throw ConfigError("unsupported image extension: " + path);
}

void write_image(const RgbImage& img, const std::string& path) {
    if (img.width() <= 0 || img.height() <= 0) throw ConfigError("cannot write empty image");
    const std::string ext = lower_extension(path);
    if (ext == "ppm") {
        write_ppm(img, path);
    } else if (ext == "png") {
        write_png(img, path);
    } else {
        throw ConfigError("unsupported image extension: " + path);
    }
}

} // namespace railgen
