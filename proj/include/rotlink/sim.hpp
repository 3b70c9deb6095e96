#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rotlink/channel.hpp"
#include "rotlink/estimator.hpp"
#include "rotlink/ldpc.hpp"
#include "rotlink/modem.hpp"
#include "rotlink/pipeline.hpp"

namespace rotlink {

/// Where the code comes from: PEG parameters or an alist file.
struct PegParams {
    int n_vars = 2304;
    int n_checks = 1152;
    int col_degree = 3;
    std::uint64_t seed = 1;
};
using CodeSource = std::variant<PegParams, std::string>;  // string = alist path

struct SimConfig {
    ConstellationKind constellation = ConstellationKind::Qpsk;
    int ell = 4;
    CodeSource code = PegParams{};
    std::vector<double> snr_db;
    SnrConvention convention = SnrConvention::EbN0;
    std::uint64_t frames = 10000;
    std::uint64_t max_frame_errors = 100;  // early stop; 0 disables
    int max_iters = 50;
    std::uint64_t seed = 1;
    bool baseline = false;
    std::optional<double> threshold_delta;  // switches search to threshold mode
    int workers = 1;

    SearchMode search_mode() const;
    void validate() const;  // throws std::invalid_argument naming the bad field
};

/// Per-SNR-point aggregate. Counters are exact integer sums over the frames in
/// frame-index order, so results do not depend on the worker count.
struct PointResult {
    double snr_db = 0.0;
    std::uint64_t frames_run = 0;
    std::uint64_t extra_frame_errors = 0;
    std::uint64_t payload_bit_errors = 0;
    std::uint64_t baseline_bit_errors = 0;
    std::uint64_t spa_iteration_sum = 0;
    std::uint64_t list_size_sum = 0;
    std::uint64_t angle_correct_frames = 0;
    std::uint64_t identical_payload_frames = 0;  // among angle-correct frames

    double extra_fer() const;
    double payload_ber(int k_info) const;
    double baseline_ber(int k_info) const;
    double mean_iterations() const;
    double mean_list_size() const;
};

struct SimResult {
    SimConfig config;
    int n = 0;
    int k = 0;
    std::vector<PointResult> points;
};

/// Builds (or loads) the code named by cfg.code.
Code load_code(const CodeSource& source);

/// Monte Carlo sweep over cfg.snr_db. Each frame draws payload, extra bits and
/// noise from its own substream of (seed, point, frame), so a run is bit-for-bit
/// reproducible for any worker count. When cfg.baseline is set, a no-rotation
/// reference leg consumes the identical noise realization per frame.
SimResult run_monte_carlo(const SimConfig& cfg);
SimResult run_monte_carlo(const SimConfig& cfg, const Code& code);

/// Syndrome-weight statistics at one SNR: for every frame, the weight under the
/// correct derotation and under each erroneous symmetry-coset angle.
struct SyndromeHistogram {
    double snr_db = 0.0;
    std::uint64_t frames = 0;
    int n_checks = 0;
    std::map<int, std::uint64_t> correct;
    std::map<int, std::uint64_t> erroneous;
};

SyndromeHistogram histogram_syndrome_weights(const SimConfig& cfg, double snr_db,
                                             std::uint64_t frames);
SyndromeHistogram histogram_syndrome_weights(const SimConfig& cfg, double snr_db,
                                             std::uint64_t frames, const Code& code);

/// CSV renderers. Sweep schema:
/// snr_db,convention,constellation,ell,frames,extra_fer,extra_err_count,
/// payload_ber,payload_bit_errs,baseline_ber,mean_iters,mean_list_size
/// (baseline_ber is empty when the baseline leg is off).
std::string render_sweep_csv(const SimResult& result);
/// Histogram schema: label,syndrome_weight,count with label correct|erroneous.
std::string render_histogram_csv(const SyndromeHistogram& hist);

}  // namespace rotlink
