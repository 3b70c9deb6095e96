#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rotlink/estimator.hpp"
#include "rotlink/ldpc.hpp"
#include "rotlink/modem.hpp"
#include "rotlink/rotation.hpp"

namespace rotlink {

/// One frame's static configuration. Holds references: the code and
/// constellation must outlive the config.
struct TxConfig {
    const ParityCheckMatrix& h;
    const Encoder& encoder;
    const Constellation& cons;
    int ell;

    /// Symbols per frame, including any zero-padding partial symbol.
    int frame_symbols() const;
    /// Zero bits appended before modulation when N doesn't divide by m.
    int pad_bits() const;
};

TxConfig make_tx_config(const ParityCheckMatrix& h, const Encoder& encoder,
                        const Constellation& cons, int ell);

struct FrameResult {
    std::vector<std::uint8_t> u_hat;
    ExtraBits v_hat;
    RotationAngle chosen_angle;
    std::vector<std::uint8_t> payload_hard_bits;  // SPA output, codeword length
    bool spa_converged = false;
    int spa_iterations = 0;
    CandidateSet candidates;

    // Filled by score_frame once ground truth is known.
    bool angle_correct = false;
    int payload_bit_errors = 0;
};

/// Encode, modulate, rotate: x~ = e^{j r(v)} * map(encode(u)).
std::vector<std::complex<double>> encode_frame(std::span<const std::uint8_t> u,
                                               const ExtraBits& v, const TxConfig& cfg);

/// Full receiver: grid search, syndrome disambiguation, derotation, soft demap,
/// sum-product decode, info extraction.
FrameResult decode_frame(std::span<const std::complex<double>> y, const TxConfig& cfg,
                         double sigma2, int max_iters, const SearchMode& mode = {});

/// Test hook: runs only the payload path at a forced rotation hypothesis,
/// bypassing search and disambiguation.
FrameResult decode_frame_at_angle(std::span<const std::complex<double>> y, const TxConfig& cfg,
                                  double sigma2, int max_iters, const RotationAngle& theta);

/// Fills angle_correct and payload_bit_errors against the transmitted truth.
void score_frame(FrameResult& result, std::span<const std::uint8_t> u_true,
                 const ExtraBits& v_true);

}  // namespace rotlink
