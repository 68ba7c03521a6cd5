#pragma once

#include <string>

#include "tubal/tensor.hpp"

namespace tubal {

/// Binary tensor container: magic "TNS3", u32-LE version (1), I1/I2/I3 as
/// u64-LE, then I1*I2*I3 IEEE-754 f64-LE values mode-1-fastest.
void save_tensor(const Tensor3& x, const std::string& path);
Tensor3 load_tensor(const std::string& path);

/// Masks travel as TNS3 files holding 0/1 entries (nonzero reads as observed).
void save_mask(const MaskTensor& omega, const std::string& path);
MaskTensor load_mask(const std::string& path);

/// 8-bit binary PGM (P5, depth 1) or PPM (P6, depth 3); values scale to [0,1]
/// on load and clamp/rescale on save.
Tensor3 load_image(const std::string& path);
void save_image(const Tensor3& x, const std::string& path);

/// Stacks equally-sized 8-bit PGM frames (sorted by filename) along mode 3.
Tensor3 load_image_stack(const std::string& directory);

/// Spectrum recipe for synthetic tensors.
struct Spectrum {
    enum class Kind { Exact, PolyDecay, ExpDecay };
    Kind kind = Kind::Exact;
    double param = 1.0;  // alpha for j^-alpha, beta for beta^(j-1)

    static Spectrum exact() { return {Kind::Exact, 0.0}; }
    static Spectrum poly(double alpha) { return {Kind::PolyDecay, alpha}; }
    static Spectrum exp(double beta) { return {Kind::ExpDecay, beta}; }
};

/// Random tensor with exact tubal rank r (Gaussian factor product) or with
/// prescribed per-slice singular values j^-alpha / beta^(j-1), j = 1..r.
Tensor3 synth_lowrank(Index rows, Index cols, Index depth, Index r, Spectrum spectrum,
                      std::uint64_t seed);

/// Tensor whose every mode-3 Fourier slice has exactly the given singular
/// values (non-increasing, non-negative), with seeded random singular vectors.
Tensor3 synth_from_spectrum(Index rows, Index cols, Index depth,
                            const Eigen::VectorXd& singular_values, std::uint64_t seed);

/// Bernoulli observation mask keeping each entry with probability
/// `fraction_observed`.
MaskTensor random_mask(Index rows, Index cols, Index depth, double fraction_observed,
                       std::uint64_t seed);

}  // namespace tubal
