#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace rotlink {

enum class SnrConvention { EbN0, EsN0 };

SnrConvention snr_convention_from_name(const std::string& name);
const char* snr_convention_name(SnrConvention conv);

/// Complex AWGN description: total variance sigma2, i.e. sigma2/2 per real axis.
struct NoiseSpec {
    double sigma2 = 0.0;
    double snr_db = 0.0;
    SnrConvention convention = SnrConvention::EsN0;
};

/// Noise variance for unit-energy symbols at the given SNR:
///   Es/N0: sigma2 = 10^(-snr/10)
///   Eb/N0: sigma2 = 1 / (rate * bits_per_symbol * 10^(snr/10))
/// rate must lie in (0,1], bits_per_symbol >= 1.
NoiseSpec sigma_from_snr(double snr_db, double rate, int bits_per_symbol, SnrConvention conv);

/// y = x + w, w ~ CN(0, sigma2) i.i.d., drawn from rng.
std::vector<std::complex<double>> awgn(std::span<const std::complex<double>> x,
                                       const NoiseSpec& spec, std::mt19937_64& rng);

/// Independent per-frame substream: the same (seed, point, frame) triple yields
/// the same generator state regardless of how frames are scheduled over workers.
std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t point_index,
                          std::uint64_t frame_index);

std::uint64_t mix64(std::uint64_t z);

}  // namespace rotlink
