#include "camedit/raster_io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <vector>

namespace camedit {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RasterError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::string& header, const std::vector<std::uint8_t>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RasterError("cannot write " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) throw RasterError("write failed for " + path.string());
}

// Netpbm header tokenizer: whitespace separated, '#' comments run to end of line.
class HeaderReader {
public:
    HeaderReader(const std::vector<std::uint8_t>& bytes, const std::string& name) : bytes_(bytes), name_(name) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("expected a number");
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) fail("header value out of range");
            ++pos_;
        }
        return static_cast<int>(value);
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing whitespace before raster");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw RasterError(name_ + ": malformed header: " + what);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<std::uint8_t>& bytes_;
    std::string name_;
    std::size_t pos_ = 2;
};

struct Pnm {
    int width;
    int height;
    int channels;
    std::vector<std::uint8_t> samples;
};

Pnm parse_pnm(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const std::string name = path.string();
    if (bytes.size() < 2 || bytes[0] != 'P') throw RasterError(name + ": not a PNM file");
    int channels = 0;
    if (bytes[1] == '5') {
        channels = 1;
    } else if (bytes[1] == '6') {
        channels = 3;
    } else {
        throw RasterError(name + ": unsupported PNM variant P" + std::string(1, static_cast<char>(bytes[1])));
    }
    HeaderReader header(bytes, name);
    const int width = header.next_int();
    const int height = header.next_int();
    const int maxval = header.next_int();
    if (width < 1 || height < 1) header.fail("non-positive dimensions");
    if (maxval != 255) throw RasterError(name + ": unsupported bit depth (maxval " + std::to_string(maxval) + ")");
    const std::size_t offset = header.raster_offset();
    const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                                 static_cast<std::size_t>(channels);
    if (bytes.size() - offset < expected) throw RasterError(name + ": truncated raster");
    return {width, height, channels,
            std::vector<std::uint8_t>(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                      bytes.begin() + static_cast<std::ptrdiff_t>(offset + expected))};
}

std::string pnm_header(char variant, int width, int height) {
    return std::string("P") + variant + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
}

}  // namespace

double sample_to_unit(std::uint8_t v) { return static_cast<double>(v) / 255.0; }

std::uint8_t unit_to_sample(double v) {
    const double scaled = std::floor(v * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

MultiChannelImage load_raster(const std::filesystem::path& path) {
    const Pnm pnm = parse_pnm(path);
    std::vector<ImagePlane> planes;
    const std::size_t pixels = static_cast<std::size_t>(pnm.width) * static_cast<std::size_t>(pnm.height);
    for (int c = 0; c < pnm.channels; ++c) {
        std::vector<double> data(pixels);
        for (std::size_t i = 0; i < pixels; ++i) {
            data[i] = sample_to_unit(pnm.samples[i * static_cast<std::size_t>(pnm.channels) + static_cast<std::size_t>(c)]);
        }
        planes.emplace_back(pnm.width, pnm.height, std::move(data));
    }
    return MultiChannelImage(std::move(planes));
}

void save_raster(const std::filesystem::path& path, const MultiChannelImage& img) {
    const int channels = img.channel_count();
    if (channels != 1 && channels != 3) {
        throw RasterError("only 1- or 3-channel images can be saved, got " + std::to_string(channels));
    }
    const std::size_t pixels = static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height());
    std::vector<std::uint8_t> body(pixels * static_cast<std::size_t>(channels));
    for (int c = 0; c < channels; ++c) {
        const auto values = img.channel(c).values();
        for (std::size_t i = 0; i < pixels; ++i) {
            body[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)] = unit_to_sample(values[i]);
        }
    }
    write_file(path, pnm_header(channels == 1 ? '5' : '6', img.width(), img.height()), body);
}

void save_raster(const std::filesystem::path& path, const ImagePlane& plane) {
    save_raster(path, MultiChannelImage({plane}));
}

void save_raster(const std::filesystem::path& path, const BinaryEdgeMap& map) {
    std::vector<std::uint8_t> body;
    body.reserve(static_cast<std::size_t>(map.width()) * static_cast<std::size_t>(map.height()));
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) body.push_back(map(x, y) ? 255 : 0);
    }
    write_file(path, pnm_header('5', map.width(), map.height()), body);
}

BinaryEdgeMap load_edge_map(const std::filesystem::path& path) {
    const Pnm pnm = parse_pnm(path);
    if (pnm.channels != 1) throw RasterError(path.string() + ": edge maps must be single-channel PGM");
    BinaryEdgeMap map(pnm.width, pnm.height);
    for (int y = 0; y < pnm.height; ++y) {
        for (int x = 0; x < pnm.width; ++x) {
            map.set(x, y, pnm.samples[static_cast<std::size_t>(y) * static_cast<std::size_t>(pnm.width) +
                                      static_cast<std::size_t>(x)] != 0);
        }
    }
    return map;
}

void save_npy(const std::filesystem::path& path, const ImagePlane& plane) {
    static_assert(std::endian::native == std::endian::little, "npy writer assumes a little-endian host");
    std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" + std::to_string(plane.height()) +
                       ", " + std::to_string(plane.width()) + "), }";
    // Magic (6) + version (2) + header length (2) + dict + newline, padded to a multiple of 64.
    const std::size_t unpadded = 10 + dict.size() + 1;
    dict.append((64 - unpadded % 64) % 64, ' ');
    dict.push_back('\n');
    std::string header = std::string("\x93NUMPY\x01\x00", 8);
    header.push_back(static_cast<char>(dict.size() & 0xff));
    header.push_back(static_cast<char>((dict.size() >> 8) & 0xff));
    header += dict;
    const auto values = plane.values();
    std::vector<std::uint8_t> body(values.size() * sizeof(double));
    std::memcpy(body.data(), values.data(), body.size());
    write_file(path, header, body);
}

ImagePlane load_npy(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const std::string name = path.string();
    if (bytes.size() < 10 || std::memcmp(bytes.data(), "\x93NUMPY", 6) != 0) throw RasterError(name + ": not an npy file");
    if (bytes[6] != 1) throw RasterError(name + ": unsupported npy version");
    const std::size_t header_len = static_cast<std::size_t>(bytes[8]) | (static_cast<std::size_t>(bytes[9]) << 8);
    if (bytes.size() < 10 + header_len) throw RasterError(name + ": truncated npy header");
    const std::string dict(bytes.begin() + 10, bytes.begin() + 10 + static_cast<std::ptrdiff_t>(header_len));
    if (dict.find("'<f8'") == std::string::npos) throw RasterError(name + ": npy dtype must be <f8");
    if (dict.find("'fortran_order': False") == std::string::npos) throw RasterError(name + ": npy must be C order");
    std::smatch m;
    static const std::regex shape_re(R"('shape':\s*\((\d+),\s*(\d+)\))");
    if (!std::regex_search(dict, m, shape_re)) throw RasterError(name + ": npy shape must be 2-D");
    const int height = std::stoi(m[1].str());
    const int width = std::stoi(m[2].str());
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - 10 - header_len < count * sizeof(double)) throw RasterError(name + ": truncated npy data");
    std::vector<double> data(count);
    std::memcpy(data.data(), bytes.data() + 10 + header_len, count * sizeof(double));
    return ImagePlane(width, height, std::move(data));
}

}  // namespace camedit
