#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rotlink {

/// The extra-bit word riding on the rotation. MSB first: bits[0] is the most
/// significant bit of the grid index. Length 1..16.
struct ExtraBits {
    std::vector<std::uint8_t> bits;

    int ell() const { return int(bits.size()); }
    std::uint32_t decimal() const;

    static ExtraBits from_value(std::uint32_t d, int ell);
    static ExtraBits from_bits(std::vector<std::uint8_t> bits);

    bool operator==(const ExtraBits&) const = default;
};

/// An angle on (or off) the 2^ell rotation grid. grid_index is set whenever the
/// angle is known to be grid point k, i.e. radians == 2*pi*k/2^ell.
struct RotationAngle {
    double radians = 0.0;
    std::optional<int> grid_index;
};

/// Grid angle 2*pi*k/2^ell.
RotationAngle grid_angle(int k, int ell);

/// Angle carried by an extra-bit word: 2*pi*decimal/2^ell.
RotationAngle angle_of(const ExtraBits& v);

/// Inverse of angle_of. The angle must sit on the 2^ell grid within 1e-6 rad
/// (circularly); otherwise throws std::invalid_argument.
ExtraBits bits_of_angle(const RotationAngle& angle, int ell);

std::vector<std::complex<double>> rotate(std::span<const std::complex<double>> x, double radians);
std::vector<std::complex<double>> rotate(std::span<const std::complex<double>> x,
                                         const RotationAngle& angle);
/// rotate by -angle.
std::vector<std::complex<double>> derotate(std::span<const std::complex<double>> x,
                                           const RotationAngle& angle);

}  // namespace rotlink
