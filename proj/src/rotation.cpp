#include "rotlink/rotation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rotlink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGridTolerance = 1e-6;

void check_ell(int ell) {
    if (ell < 1 || ell > 16)
        throw std::invalid_argument("extra-bit length " + std::to_string(ell) +
                                    " outside 1..16");
}

}  // namespace

std::uint32_t ExtraBits::decimal() const {
    std::uint32_t d = 0;
    for (std::uint8_t b : bits) d = (d << 1) | (b & 1);
    return d;
}

ExtraBits ExtraBits::from_value(std::uint32_t d, int ell) {
    check_ell(ell);
    if (d >= (std::uint32_t(1) << ell))
        throw std::invalid_argument("extra-bit value " + std::to_string(d) +
                                    " does not fit in " + std::to_string(ell) + " bits");
    ExtraBits v;
    v.bits.resize(ell);
    for (int i = 0; i < ell; ++i) v.bits[i] = std::uint8_t((d >> (ell - 1 - i)) & 1);
    return v;
}

ExtraBits ExtraBits::from_bits(std::vector<std::uint8_t> bits) {
    check_ell(int(bits.size()));
    for (std::uint8_t b : bits)
        if (b > 1) throw std::invalid_argument("extra bits must be 0 or 1");
    return ExtraBits{std::move(bits)};
}

RotationAngle grid_angle(int k, int ell) {
    check_ell(ell);
    const int grid = 1 << ell;
    if (k < 0 || k >= grid)
        throw std::invalid_argument("grid index " + std::to_string(k) + " outside 0.." +
                                    std::to_string(grid - 1));
    return {kTwoPi * double(k) / double(grid), k};
}

RotationAngle angle_of(const ExtraBits& v) { return grid_angle(int(v.decimal()), v.ell()); }

ExtraBits bits_of_angle(const RotationAngle& angle, int ell) {
    check_ell(ell);
    const int grid = 1 << ell;
    const double step = kTwoPi / double(grid);
    if (angle.grid_index) {
        // Fast path, but only when the index really describes this grid: the
        // angle may carry an index from a coarser one.
        int k = *angle.grid_index;
        if (k >= 0 && k < grid &&
            std::abs(std::remainder(angle.radians - double(k) * step, kTwoPi)) <= kGridTolerance)
            return ExtraBits::from_value(std::uint32_t(k), ell);
    }
    long k = std::lround(angle.radians / step);
    double diff = std::remainder(angle.radians - double(k) * step, kTwoPi);
    if (std::abs(diff) > kGridTolerance)
        throw std::invalid_argument("angle " + std::to_string(angle.radians) +
                                    " is not on the 2^" + std::to_string(ell) + " grid");
    k %= grid;
    if (k < 0) k += grid;
    return ExtraBits::from_value(std::uint32_t(k), ell);
}

std::vector<std::complex<double>> rotate(std::span<const std::complex<double>> x, double radians) {
    const std::complex<double> f = std::polar(1.0, radians);
    std::vector<std::complex<double>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * f;
    return out;
}

std::vector<std::complex<double>> rotate(std::span<const std::complex<double>> x,
                                         const RotationAngle& angle) {
    return rotate(x, angle.radians);
}

std::vector<std::complex<double>> derotate(std::span<const std::complex<double>> x,
                                           const RotationAngle& angle) {
    return rotate(x, -angle.radians);
}

}  // namespace rotlink
