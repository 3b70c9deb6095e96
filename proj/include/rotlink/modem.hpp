#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rotlink {

enum class ConstellationKind { Qpsk, Gray16Qam };

/// Unit-average-energy 2D constellation. points[i] is the symbol whose label is
/// the bits of i, first (most significant) label bit transmitted first.
/// symmetry_order q is the largest q with e^{j*2*pi/q} * points == points as a set.
struct Constellation {
    std::string name;
    int bits_per_symbol = 0;
    int symmetry_order = 1;
    std::vector<std::complex<double>> points;
};

/// QPSK uses sequential labeling 00,01,10,11 counterclockwise from (1+j)/sqrt(2):
/// a pi rotation then flips exactly the first label bit, so no rotation of a
/// codeword can silently land back on the code (an all-bit complement would,
/// because regular even-row-weight checks are blind to it).
/// 16QAM is per-axis Gray: first two bits select the I level, last two the Q
/// level, 00->-3, 01->-1, 11->+1, 10->+3, scaled by 1/sqrt(10).
Constellation make_constellation(ConstellationKind kind);

ConstellationKind constellation_kind_from_name(const std::string& name);

/// Groups bits m at a time (first bit = MSB of the label) into symbols.
/// Bit count must divide evenly by bits_per_symbol.
std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits,
                                           const Constellation& cons);

/// Nearest-point decision per symbol; exact ties go to the lowest point index.
std::vector<std::uint8_t> hard_demap(std::span<const std::complex<double>> symbols,
                                     const Constellation& cons);

/// Per-bit log-likelihood ratios, positive favoring bit 0, clamped to +-30.
/// sigma2 is the total complex noise variance and must be positive.
std::vector<double> soft_demap(std::span<const std::complex<double>> symbols,
                               const Constellation& cons, double sigma2);

/// CSV dump: index,bits,real,imag — one row per constellation point.
void write_constellation_csv(const Constellation& cons, std::ostream& out);

}  // namespace rotlink
