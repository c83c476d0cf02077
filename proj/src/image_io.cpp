#include "scseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scseg {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& message) {
    throw std::runtime_error(path.string() + ": " + message);
}

std::uint8_t quantize8(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

// --- PNM (PGM/PPM) ---------------------------------------------------------

// Next unsigned integer token, skipping whitespace and '#' comments.
int pnm_int(std::istream& in, const std::filesystem::path& path) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF) fail(path, "truncated header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string comment;
            std::getline(in, comment);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) fail(path, "malformed header");
    return value;
}

GrayImage load_pnm(std::ifstream& in, const std::filesystem::path& path) {
    char magic[2];
    in.read(magic, 2);
    const int type = magic[1] - '0';  // 2, 3, 5, 6 after the dispatch check
    const bool color = type == 3 || type == 6;
    const bool binary = type == 5 || type == 6;

    const int width = pnm_int(in, path);
    const int height = pnm_int(in, path);
    const int maxval = pnm_int(in, path);
    if (width < 1 || height < 1) fail(path, "zero-dimension image");
    if (maxval < 1 || maxval > 65535) fail(path, "invalid maxval");
    if (binary) in.get();  // the single whitespace byte before the raster

    const std::size_t samples = static_cast<std::size_t>(width) * height * (color ? 3 : 1);
    std::vector<double> raw(samples);
    if (binary) {
        const int bytes_per_sample = maxval > 255 ? 2 : 1;
        std::vector<std::uint8_t> buf(samples * bytes_per_sample);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size()) fail(path, "truncated file");
        for (std::size_t i = 0; i < samples; ++i) {
            const unsigned v = bytes_per_sample == 1
                                   ? buf[i]
                                   : (static_cast<unsigned>(buf[2 * i]) << 8) | buf[2 * i + 1];
            raw[i] = std::round(v * 255.0 / maxval);
        }
    } else {
        for (std::size_t i = 0; i < samples; ++i) {
            int v = 0;
            if (!(in >> v)) fail(path, "truncated file");
            if (v < 0 || v > maxval) fail(path, "sample out of range");
            raw[i] = std::round(v * 255.0 / maxval);
        }
    }

    if (!color) {
        GrayImage image(width, height);
        image.pixels = std::move(raw);
        return image;
    }
    std::vector<double> r(raw.size() / 3), g(raw.size() / 3), b(raw.size() / 3);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = raw[3 * i];
        g[i] = raw[3 * i + 1];
        b[i] = raw[3 * i + 2];
    }
    return to_grayscale(width, height, r, g, b);
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    std::vector<std::uint8_t> row(image.width);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) row[x] = quantize8(image.at(x, y));
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out) fail(path, "write failed");
}

// --- PNG (libpng simplified API) -------------------------------------------

GrayImage load_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str()))
        fail(path, std::string("PNG read failed: ") + png.message);
    if (png.width == 0 || png.height == 0) {
        png_image_free(&png);
        fail(path, "zero-dimension image");
    }
    // Always decode to RGBA and convert ourselves, so the gray conversion is
    // BT.601 and alpha handling is explicit (alpha ignored).
    png.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr))
        fail(path, std::string("PNG decode failed: ") + png.message);

    const int width = static_cast<int>(png.width);
    const int height = static_cast<int>(png.height);
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<double> r(n), g(n), b(n);
    bool gray = true;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = buffer[4 * i];
        g[i] = buffer[4 * i + 1];
        b[i] = buffer[4 * i + 2];
        gray = gray && r[i] == g[i] && g[i] == b[i];
    }
    if (gray) {
        GrayImage image(width, height);
        image.pixels = std::move(r);
        return image;
    }
    return to_grayscale(width, height, r, g, b);
}

void save_png(const GrayImage& image, const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buffer(image.pixels.size());
    for (std::size_t i = 0; i < buffer.size(); ++i) buffer[i] = quantize8(image.pixels[i]);
    if (!png_image_write_to_file(&png, path.string().c_str(), 0, buffer.data(), 0, nullptr))
        fail(path, std::string("PNG write failed: ") + png.message);
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2) fail(path, "truncated file");
    in.seekg(0);

    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '3' || magic[1] == '5' ||
                            magic[1] == '6'))
        return load_pnm(in, path);
    if (magic[0] == '\x89' && magic[1] == 'P') {
        in.close();
        return load_png(path);
    }
    fail(path, "unsupported format (expected PGM/PPM or PNG)");
}

void save_image(const GrayImage& image, const std::filesystem::path& path) {
    if (image.empty()) fail(path, "refusing to write an empty image");
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm")
        save_pgm(image, path);
    else if (ext == ".png")
        save_png(image, path);
    else
        fail(path, "unsupported output extension (use .pgm or .png)");
}

void save_mask(const LabelMask& mask, const std::filesystem::path& path) {
    GrayImage image(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.labels.size(); ++i)
        image.pixels[i] = mask.labels[i] == Label::Foreground ? 255.0 : 0.0;
    save_image(image, path);
}

LabelMask load_mask(const std::filesystem::path& path) {
    const GrayImage image = load_image(path);
    std::set<int> distinct;
    for (double v : image.pixels) {
        distinct.insert(static_cast<int>(v));
        if (distinct.size() > 2) break;
    }
    const bool two_valued =
        distinct.size() <= 2 && distinct.count(0) + 1 >= distinct.size();
    if (!two_valued)
        std::cerr << path.string()
                  << ": mask is not binary; thresholding at 128\n";

    LabelMask mask(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const double v = image.pixels[i];
        const bool fg = two_valued ? v != 0.0 : v >= 128.0;
        mask.labels[i] = fg ? Label::Foreground : Label::Background;
    }
    return mask;
}

}  // namespace scseg
