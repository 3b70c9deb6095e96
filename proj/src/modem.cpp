#include "rotlink/modem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rotlink {

namespace {

constexpr double kLlrClamp = 30.0;

double log_sum_exp(const std::vector<double>& vals, const std::vector<char>& mask, char want) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (mask[i] == want) best = std::max(best, vals[i]);
    if (!std::isfinite(best)) return best;
    double sum = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (mask[i] == want) sum += std::exp(vals[i] - best);
    return best + std::log(sum);
}

}  // namespace

Constellation make_constellation(ConstellationKind kind) {
    Constellation c;
    switch (kind) {
        case ConstellationKind::Qpsk: {
            c.name = "qpsk";
            c.bits_per_symbol = 2;
            c.symmetry_order = 4;
            const double s = 1.0 / std::sqrt(2.0);
            c.points = {{s, s}, {-s, s}, {-s, -s}, {s, -s}};
            break;
        }
        case ConstellationKind::Gray16Qam: {
            c.name = "16qam";
            c.bits_per_symbol = 4;
            c.symmetry_order = 4;
            const double s = 1.0 / std::sqrt(10.0);
            // Per-axis Gray levels indexed by the two label bits of that axis.
            const double lvl[4] = {-3.0, -1.0, 3.0, 1.0};
            c.points.resize(16);
            for (int g = 0; g < 16; ++g)
                c.points[g] = {lvl[(g >> 2) & 3] * s, lvl[g & 3] * s};
            break;
        }
    }
    return c;
}

ConstellationKind constellation_kind_from_name(const std::string& name) {
    if (name == "qpsk") return ConstellationKind::Qpsk;
    if (name == "16qam") return ConstellationKind::Gray16Qam;
    throw std::invalid_argument("unknown constellation '" + name + "' (expected qpsk or 16qam)");
}

std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits,
                                           const Constellation& cons) {
    const int m = cons.bits_per_symbol;
    if (m <= 0 || cons.points.empty())
        throw std::invalid_argument("map_bits: constellation is not initialized");
    if (bits.size() % std::size_t(m) != 0)
        throw std::invalid_argument("map_bits: bit count " + std::to_string(bits.size()) +
                                    " does not divide by " + std::to_string(m));
    std::vector<std::complex<double>> out(bits.size() / m);
    for (std::size_t t = 0; t < out.size(); ++t) {
        unsigned label = 0;
        for (int b = 0; b < m; ++b) label = (label << 1) | (bits[t * m + b] & 1);
        out[t] = cons.points[label];
    }
    return out;
}

std::vector<std::uint8_t> hard_demap(std::span<const std::complex<double>> symbols,
                                     const Constellation& cons) {
    const int m = cons.bits_per_symbol;
    std::vector<std::uint8_t> bits(symbols.size() * m);
    for (std::size_t t = 0; t < symbols.size(); ++t) {
        int best = 0;
        double best_d = std::norm(symbols[t] - cons.points[0]);
        for (std::size_t i = 1; i < cons.points.size(); ++i) {
            double d = std::norm(symbols[t] - cons.points[i]);
            if (d < best_d) {
                best_d = d;
                best = int(i);
            }
        }
        for (int b = 0; b < m; ++b) bits[t * m + b] = std::uint8_t((best >> (m - 1 - b)) & 1);
    }
    return bits;
}

std::vector<double> soft_demap(std::span<const std::complex<double>> symbols,
                               const Constellation& cons, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("soft_demap: sigma2 must be positive");
    const int m = cons.bits_per_symbol;
    const std::size_t npts = cons.points.size();
    std::vector<double> llrs(symbols.size() * m);
    std::vector<double> metric(npts);
    std::vector<char> mask(npts);
    for (std::size_t t = 0; t < symbols.size(); ++t) {
        for (std::size_t i = 0; i < npts; ++i)
            metric[i] = -std::norm(symbols[t] - cons.points[i]) / sigma2;
        for (int b = 0; b < m; ++b) {
            for (std::size_t i = 0; i < npts; ++i) mask[i] = char((i >> (m - 1 - b)) & 1);
            double l0 = log_sum_exp(metric, mask, 0);
            double l1 = log_sum_exp(metric, mask, 1);
            llrs[t * m + b] = std::clamp(l0 - l1, -kLlrClamp, kLlrClamp);
        }
    }
    return llrs;
}

void write_constellation_csv(const Constellation& cons, std::ostream& out) {
    out << "index,bits,real,imag\n";
    const int m = cons.bits_per_symbol;
    for (std::size_t i = 0; i < cons.points.size(); ++i) {
        out << i << ',';
        for (int b = m - 1; b >= 0; --b) out << ((i >> b) & 1);
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.12g,%.12g\n", cons.points[i].real(),
                      cons.points[i].imag());
        out << buf;
    }
}

}  // namespace rotlink
