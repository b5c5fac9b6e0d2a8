#include "maskpath/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

namespace maskpath {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

ImageU8 read_png(const std::string& path, bool rgb) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw Error(ErrorCode::MaskLoadError, "cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error(ErrorCode::MaskLoadError, "libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error(ErrorCode::MaskLoadError, "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::MaskLoadError, "invalid PNG: " + path);
    }
    png_init_io(png, file.get());
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (rgb) {
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
            png_set_gray_to_rgb(png);
        }
    } else {
        if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
            color_type == PNG_COLOR_TYPE_PALETTE) {
            png_set_rgb_to_gray_fixed(png, 1, -1, -1);
        }
    }
    png_read_update_info(png, info);

    ImageU8 out;
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.channels = rgb ? 3 : 1;
    out.data.resize(static_cast<std::size_t>(out.height) * out.width * out.channels);

    std::vector<png_bytep> rows(out.height);
    for (int r = 0; r < out.height; ++r) {
        rows[r] = out.data.data() + static_cast<std::size_t>(r) * out.width * out.channels;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void write_png(const std::string& path, const ImageU8& image, bool rgb) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw Error(ErrorCode::IoError, "cannot write " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error(ErrorCode::IoError, "libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error(ErrorCode::IoError, "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::IoError, "PNG write failed: " + path);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
                 rgb ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(image.height);
    for (int r = 0; r < image.height; ++r) {
        rows[r] = const_cast<png_bytep>(image.data.data() + static_cast<std::size_t>(r) * image.width * image.channels);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace

ImageU8 read_png_gray(const std::string& path) {
    return read_png(path, false);
}

ImageU8 read_png_rgb(const std::string& path) {
    return read_png(path, true);
}

void write_png_gray(const std::string& path, const ImageU8& image) {
    if (image.channels != 1) throw Error(ErrorCode::IoError, "expected single-channel image");
    write_png(path, image, false);
}

void write_png_rgb(const std::string& path, const ImageU8& image) {
    if (image.channels != 3) throw Error(ErrorCode::IoError, "expected 3-channel image");
    write_png(path, image, true);
}

BinaryMask mask_from_png(const std::string& path) {
    const ImageU8 img = read_png_gray(path);
    BinaryMask mask(img.height, img.width);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        mask.bits[i] = img.data[i] >= 128 ? 1 : 0;
    }
    return mask;
}

void write_mask_png(const std::string& path, const BinaryMask& mask) {
    ImageU8 img;
    img.height = mask.height;
    img.width = mask.width;
    img.channels = 1;
    img.data.resize(mask.bits.size());
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        img.data[i] = mask.bits[i] ? 255 : 0;
    }
    write_png_gray(path, img);
}

void write_soft_png(const std::string& path, const SoftMask& mask) {
    ImageU8 img;
    img.height = mask.height;
    img.width = mask.width;
    img.channels = 1;
    img.data.resize(mask.values.size());
    for (std::size_t i = 0; i < mask.values.size(); ++i) {
        img.data[i] = static_cast<std::uint8_t>(std::lround(std::clamp(mask.values[i], 0.0, 1.0) * 255.0));
    }
    write_png_gray(path, img);
}

} // namespace maskpath
