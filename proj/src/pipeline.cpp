#include "rotlink/pipeline.hpp"

#include <stdexcept>
#include <string>

namespace rotlink {

int TxConfig::frame_symbols() const {
    const int m = cons.bits_per_symbol;
    return (h.n_cols + m - 1) / m;
}

int TxConfig::pad_bits() const { return frame_symbols() * cons.bits_per_symbol - h.n_cols; }

TxConfig make_tx_config(const ParityCheckMatrix& h, const Encoder& encoder,
                        const Constellation& cons, int ell) {
    if (encoder.code_length() != h.n_cols)
        throw std::invalid_argument("tx config: encoder length " +
                                    std::to_string(encoder.code_length()) + " != n_cols " +
                                    std::to_string(h.n_cols));
    if (ell < 1 || ell > 16)
        throw std::invalid_argument("tx config: ell " + std::to_string(ell) + " outside 1..16");
    if (cons.symmetry_order < 1 || cons.points.empty())
        throw std::invalid_argument("tx config: constellation is not initialized");
    return TxConfig{h, encoder, cons, ell};
}

std::vector<std::complex<double>> encode_frame(std::span<const std::uint8_t> u,
                                               const ExtraBits& v, const TxConfig& cfg) {
    if (v.ell() != cfg.ell)
        throw std::invalid_argument("encode_frame: extra-bit length " + std::to_string(v.ell()) +
                                    " != configured ell " + std::to_string(cfg.ell));
    std::vector<std::uint8_t> c = cfg.encoder.encode(u);
    c.resize(c.size() + cfg.pad_bits(), 0);  // receiver-known zero padding
    std::vector<std::complex<double>> x = map_bits(c, cfg.cons);
    return rotate(x, angle_of(v));
}

namespace {

// Derotate, demap, decode: the payload leg shared by the full receiver and the
// forced-angle hook.
void payload_decode(std::span<const std::complex<double>> y, const TxConfig& cfg, double sigma2,
                    int max_iters, const RotationAngle& theta, FrameResult& out) {
    std::vector<std::complex<double>> tilde = derotate(y, theta);
    std::vector<double> llrs = soft_demap(tilde, cfg.cons, sigma2);
    llrs.resize(cfg.h.n_cols);  // padding bits carry no code information
    DecodeResult dec = sum_product_decode(llrs, cfg.h, max_iters);
    out.chosen_angle = theta;
    out.spa_converged = dec.converged;
    out.spa_iterations = dec.iterations_used;
    out.u_hat = cfg.encoder.extract_info(dec.hard_bits);
    out.payload_hard_bits = std::move(dec.hard_bits);
}

}  // namespace

FrameResult decode_frame(std::span<const std::complex<double>> y, const TxConfig& cfg,
                         double sigma2, int max_iters, const SearchMode& mode) {
    if (int(y.size()) != cfg.frame_symbols())
        throw std::invalid_argument("decode_frame: frame has " + std::to_string(y.size()) +
                                    " symbols, expected " + std::to_string(cfg.frame_symbols()));
    CandidateSet candidates = brute_force_search(y, cfg.cons, cfg.ell, sigma2, mode);
    DisambiguationResult dis = disambiguate(y, std::move(candidates), cfg.h, cfg.cons);

    FrameResult result;
    result.v_hat = bits_of_angle(dis.chosen, cfg.ell);
    result.candidates = std::move(dis.candidates);
    payload_decode(y, cfg, sigma2, max_iters, dis.chosen, result);
    return result;
}

FrameResult decode_frame_at_angle(std::span<const std::complex<double>> y, const TxConfig& cfg,
                                  double sigma2, int max_iters, const RotationAngle& theta) {
    FrameResult result;
    result.v_hat = bits_of_angle(theta, cfg.ell);
    payload_decode(y, cfg, sigma2, max_iters, theta, result);
    return result;
}

void score_frame(FrameResult& result, std::span<const std::uint8_t> u_true,
                 const ExtraBits& v_true) {
    if (u_true.size() != result.u_hat.size())
        throw std::invalid_argument("score_frame: info length mismatch");
    result.angle_correct = result.v_hat == v_true;
    int errs = 0;
    for (std::size_t i = 0; i < u_true.size(); ++i) errs += (u_true[i] ^ result.u_hat[i]) & 1;
    result.payload_bit_errors = errs;
}

}  // namespace rotlink
