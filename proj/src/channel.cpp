#include "rotlink/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rotlink {

SnrConvention snr_convention_from_name(const std::string& name) {
    if (name == "ebn0") return SnrConvention::EbN0;
    if (name == "esn0") return SnrConvention::EsN0;
    throw std::invalid_argument("unknown SNR convention '" + name + "' (expected ebn0 or esn0)");
}

const char* snr_convention_name(SnrConvention conv) {
    return conv == SnrConvention::EbN0 ? "ebn0" : "esn0";
}

NoiseSpec sigma_from_snr(double snr_db, double rate, int bits_per_symbol, SnrConvention conv) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("sigma_from_snr: rate must lie in (0,1]");
    if (bits_per_symbol < 1)
        throw std::invalid_argument("sigma_from_snr: bits_per_symbol must be >= 1");
    const double lin = std::pow(10.0, snr_db / 10.0);
    NoiseSpec spec;
    spec.snr_db = snr_db;
    spec.convention = conv;
    spec.sigma2 = conv == SnrConvention::EsN0 ? 1.0 / lin : 1.0 / (rate * bits_per_symbol * lin);
    return spec;
}

std::vector<std::complex<double>> awgn(std::span<const std::complex<double>> x,
                                       const NoiseSpec& spec, std::mt19937_64& rng) {
    if (!(spec.sigma2 > 0.0)) throw std::invalid_argument("awgn: sigma2 must be positive");
    std::normal_distribution<double> gauss(0.0, std::sqrt(spec.sigma2 / 2.0));
    std::vector<std::complex<double>> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        y[i] = x[i] + std::complex<double>(re, im);
    }
    return y;
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 frame_rng(std::uint64_t seed, std::uint64_t point_index,
                          std::uint64_t frame_index) {
    std::uint64_t s = mix64(mix64(mix64(seed) ^ point_index) ^ frame_index);
    return std::mt19937_64(s);
}

}  // namespace rotlink
