#include "tubal/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

#include "tubal/dft.hpp"
#include "tubal/factor.hpp"
#include "tubal/rng.hpp"
#include "tubal/sketch.hpp"
#include "tubal/tprod.hpp"

namespace tubal {

namespace {

static_assert(std::endian::native == std::endian::little,
              "TNS3 serialization assumes a little-endian host");

constexpr char kMagic[4] = {'T', 'N', 'S', '3'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ofstream& out, const void* ptr, std::size_t n) {
    out.write(static_cast<const char*>(ptr), static_cast<std::streamsize>(n));
}

void read_bytes(std::ifstream& in, void* ptr, std::size_t n, const char* what) {
    in.read(static_cast<char*>(ptr), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::runtime_error(std::string("load_tensor: truncated file while reading ") + what);
}

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments, returns a non-negative integer
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    in >> value;
    if (!in || value < 0) throw std::runtime_error("image load: malformed PNM header");
    return value;
}

}  // namespace

void save_tensor(const Tensor3& x, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_tensor: cannot open " + path);
    write_bytes(out, kMagic, 4);
    write_bytes(out, &kVersion, 4);
    const std::uint64_t dims[3] = {static_cast<std::uint64_t>(x.rows()),
                                   static_cast<std::uint64_t>(x.cols()),
                                   static_cast<std::uint64_t>(x.depth())};
    write_bytes(out, dims, sizeof(dims));
    write_bytes(out, x.data(), sizeof(double) * static_cast<std::size_t>(x.size()));
    if (!out) throw std::runtime_error("save_tensor: write failed for " + path);
}

Tensor3 load_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_tensor: cannot open " + path);
    char magic[4];
    read_bytes(in, magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_tensor: bad magic in " + path);
    std::uint32_t version = 0;
    read_bytes(in, &version, 4, "version");
    if (version != kVersion)
        throw std::runtime_error("load_tensor: unsupported version in " + path);
    std::uint64_t dims[3];
    read_bytes(in, dims, sizeof(dims), "dimensions");
    constexpr std::uint64_t kMaxElements = std::uint64_t(1) << 34;  // 128 GiB of doubles
    if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0)
        throw std::runtime_error("load_tensor: zero dimension in " + path);
    if (dims[0] > kMaxElements || dims[1] > kMaxElements || dims[2] > kMaxElements ||
        dims[0] * dims[1] / dims[0] != dims[1] ||
        (dims[0] * dims[1]) * dims[2] / (dims[0] * dims[1]) != dims[2] ||
        dims[0] * dims[1] * dims[2] > kMaxElements)
        throw std::runtime_error("load_tensor: dimensions overflow in " + path);
    Tensor3 x(static_cast<Index>(dims[0]), static_cast<Index>(dims[1]),
              static_cast<Index>(dims[2]));
    read_bytes(in, x.data(), sizeof(double) * static_cast<std::size_t>(x.size()), "payload");
    return x;
}

void save_mask(const MaskTensor& omega, const std::string& path) {
    Tensor3 x(omega.rows(), omega.cols(), omega.depth());
    for (Index n = 0; n < x.size(); ++n) x.vec()[n] = omega.get_linear(n) ? 1.0 : 0.0;
    save_tensor(x, path);
}

MaskTensor load_mask(const std::string& path) {
    const Tensor3 x = load_tensor(path);
    MaskTensor omega(x.rows(), x.cols(), x.depth());
    for (Index n = 0; n < x.size(); ++n) omega.set_linear(n, x.vec()[n] != 0.0);
    return omega;
}

Tensor3 load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_image: cannot open " + path);
    char p = 0, kind = 0;
    in.get(p).get(kind);
    if (p != 'P' || (kind != '5' && kind != '6'))
        throw std::runtime_error("load_image: unsupported format (want binary P5/P6) in " + path);
    const int width = read_pnm_token(in);
    const int height = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (maxval != 255)
        throw std::runtime_error("load_image: only 8-bit images supported (maxval 255)");
    in.get();  // single whitespace before raster
    const int channels = kind == '6' ? 3 : 1;
    std::vector<unsigned char> raster(static_cast<std::size_t>(width) * height * channels);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (static_cast<std::size_t>(in.gcount()) != raster.size())
        throw std::runtime_error("load_image: truncated raster in " + path);

    Tensor3 x(height, width, channels);
    std::size_t pos = 0;
    for (Index i = 0; i < height; ++i)
        for (Index j = 0; j < width; ++j)
            for (Index c = 0; c < channels; ++c) x(i, j, c) = raster[pos++] / 255.0;
    return x;
}

void save_image(const Tensor3& x, const std::string& path) {
    if (x.depth() != 1 && x.depth() != 3)
        throw std::invalid_argument("save_image: depth must be 1 (PGM) or 3 (PPM)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_image: cannot open " + path);
    out << (x.depth() == 3 ? "P6" : "P5") << "\n" << x.cols() << " " << x.rows() << "\n255\n";
    std::vector<unsigned char> raster;
    raster.reserve(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.rows(); ++i)
        for (Index j = 0; j < x.cols(); ++j)
            for (Index c = 0; c < x.depth(); ++c) {
                const double v = std::clamp(x(i, j, c), 0.0, 1.0);
                raster.push_back(static_cast<unsigned char>(std::lround(v * 255.0)));
            }
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out) throw std::runtime_error("save_image: write failed for " + path);
}

Tensor3 load_image_stack(const std::string& directory) {
    namespace fs = std::filesystem;
    std::vector<std::string> frames;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            frames.push_back(entry.path().string());
    }
    if (frames.empty())
        throw std::runtime_error("load_image_stack: no .pgm frames in " + directory);
    std::sort(frames.begin(), frames.end());

    const Tensor3 first = load_image(frames.front());
    if (first.depth() != 1)
        throw std::runtime_error("load_image_stack: frames must be grayscale PGM");
    Tensor3 out(first.rows(), first.cols(), static_cast<Index>(frames.size()));
    out.slice(0) = first.slice(0);
    for (std::size_t f = 1; f < frames.size(); ++f) {
        const Tensor3 frame = load_image(frames[f]);
        if (frame.rows() != out.rows() || frame.cols() != out.cols() || frame.depth() != 1)
            throw std::runtime_error("load_image_stack: frame size mismatch at " + frames[f]);
        out.slice(static_cast<Index>(f)) = frame.slice(0);
    }
    return out;
}

Tensor3 synth_lowrank(Index rows, Index cols, Index depth, Index r, Spectrum spectrum,
                      std::uint64_t seed) {
    if (r < 1 || r > std::min(rows, cols))
        throw std::invalid_argument("synth_lowrank: rank out of range");
    switch (spectrum.kind) {
        case Spectrum::Kind::Exact: {
            const Tensor3 a = gaussian_random_tensor(rows, r, depth, mix_seed(seed, 0),
                                                     RandomMode::DenseGaussian);
            const Tensor3 b = gaussian_random_tensor(r, cols, depth, mix_seed(seed, 1),
                                                     RandomMode::DenseGaussian);
            return tprod(a, b);
        }
        case Spectrum::Kind::PolyDecay: {
            Eigen::VectorXd sv(r);
            for (Index j = 0; j < r; ++j)
                sv[j] = std::pow(static_cast<double>(j + 1), -spectrum.param);
            return synth_from_spectrum(rows, cols, depth, sv, seed);
        }
        case Spectrum::Kind::ExpDecay: {
            if (spectrum.param <= 0.0 || spectrum.param >= 1.0)
                throw std::invalid_argument("synth_lowrank: exp-decay beta must lie in (0,1)");
            Eigen::VectorXd sv(r);
            for (Index j = 0; j < r; ++j) sv[j] = std::pow(spectrum.param, static_cast<double>(j));
            return synth_from_spectrum(rows, cols, depth, sv, seed);
        }
    }
    throw std::logic_error("synth_lowrank: unknown spectrum kind");
}

Tensor3 synth_from_spectrum(Index rows, Index cols, Index depth,
                            const Eigen::VectorXd& singular_values, std::uint64_t seed) {
    const Index k = singular_values.size();
    if (k < 1 || k > std::min(rows, cols))
        throw std::invalid_argument("synth_from_spectrum: spectrum length out of range");
    for (Index j = 0; j < k; ++j) {
        if (singular_values[j] < 0.0)
            throw std::invalid_argument("synth_from_spectrum: singular values must be >= 0");
        if (j > 0 && singular_values[j] > singular_values[j - 1])
            throw std::invalid_argument("synth_from_spectrum: singular values must not increase");
    }

    const Index h = SpectralTensor::half_count(depth);
    std::vector<MatrixXcd> half(static_cast<std::size_t>(h));
    NormalStream stream(seed);
    auto draw = [&stream](Index r, Index c, bool complex_valued) {
        MatrixXcd m(r, c);
        for (Index j = 0; j < c; ++j)
            for (Index i = 0; i < r; ++i) {
                const double re = stream.next();
                const double im = complex_valued ? stream.next() : 0.0;
                m(i, j) = Complex{re, im};
            }
        return m;
    };
    for (Index s = 0; s < h; ++s) {
        const bool self_conj = s == 0 || (depth % 2 == 0 && s == depth / 2);
        const MatrixXcd qa = complex_qr(draw(rows, k, !self_conj)).q;
        const MatrixXcd qb = complex_qr(draw(cols, k, !self_conj)).q;
        half[static_cast<std::size_t>(s)] =
            qa * singular_values.cast<Complex>().asDiagonal() * qb.adjoint();
    }
    return ifft_tubes(SpectralTensor(rows, cols, depth, std::move(half)));
}

MaskTensor random_mask(Index rows, Index cols, Index depth, double fraction_observed,
                       std::uint64_t seed) {
    if (fraction_observed < 0.0 || fraction_observed > 1.0)
        throw std::invalid_argument("random_mask: fraction must lie in [0,1]");
    MaskTensor omega(rows, cols, depth);
    std::mt19937_64 engine(seed);
    for (Index n = 0; n < omega.size(); ++n) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        omega.set_linear(n, u < fraction_observed);
    }
    return omega;
}

}  // namespace tubal
