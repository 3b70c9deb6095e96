#include "rotlink/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "rotlink/alist.hpp"

namespace rotlink {

SearchMode SimConfig::search_mode() const {
    if (threshold_delta) return SearchMode{SearchMode::ThresholdDelta, *threshold_delta};
    return SearchMode{};
}

void SimConfig::validate() const {
    if (ell < 1 || ell > 16)
        throw std::invalid_argument("sim config: ell " + std::to_string(ell) + " outside 1..16");
    if (snr_db.empty()) throw std::invalid_argument("sim config: snr_db list is empty");
    if (frames == 0) throw std::invalid_argument("sim config: frames must be positive");
    if (max_iters < 0) throw std::invalid_argument("sim config: max_iters must be >= 0");
    if (workers < 1) throw std::invalid_argument("sim config: workers must be >= 1");
    if (threshold_delta && !(*threshold_delta >= 0.0))
        throw std::invalid_argument("sim config: threshold_delta must be >= 0");
    if (const auto* peg = std::get_if<PegParams>(&code)) {
        if (peg->n_vars <= 0 || peg->n_checks <= 0 || peg->col_degree <= 0)
            throw std::invalid_argument("sim config: PEG parameters must be positive");
    } else if (std::get<std::string>(code).empty()) {
        throw std::invalid_argument("sim config: alist path is empty");
    }
}

double PointResult::extra_fer() const {
    return frames_run ? double(extra_frame_errors) / double(frames_run) : 0.0;
}
double PointResult::payload_ber(int k_info) const {
    return frames_run ? double(payload_bit_errors) / (double(frames_run) * k_info) : 0.0;
}
double PointResult::baseline_ber(int k_info) const {
    return frames_run ? double(baseline_bit_errors) / (double(frames_run) * k_info) : 0.0;
}
double PointResult::mean_iterations() const {
    return frames_run ? double(spa_iteration_sum) / double(frames_run) : 0.0;
}
double PointResult::mean_list_size() const {
    return frames_run ? double(list_size_sum) / double(frames_run) : 0.0;
}

Code load_code(const CodeSource& source) {
    if (const auto* peg = std::get_if<PegParams>(&source))
        return peg_code(peg->n_vars, peg->n_checks, peg->col_degree, peg->seed);
    const std::string& path = std::get<std::string>(source);
    ParityCheckMatrix h = read_alist_file(path);
    Encoder enc = build_encoder(h);
    return Code{std::move(h), std::move(enc)};
}

namespace {

struct FrameStats {
    bool extra_error = false;
    bool angle_correct = false;
    std::uint32_t payload_bit_errors = 0;
    std::uint32_t baseline_bit_errors = 0;
    std::uint16_t spa_iterations = 0;
    std::uint16_t list_size = 0;
    bool payload_identical = false;
};

std::vector<std::uint8_t> random_bits(int count, std::mt19937_64& rng) {
    std::vector<std::uint8_t> bits(count);
    std::uint64_t word = 0;
    int left = 0;
    for (int i = 0; i < count; ++i) {
        if (left == 0) {
            word = rng();
            left = 64;
        }
        bits[i] = std::uint8_t(word & 1);
        word >>= 1;
        --left;
    }
    return bits;
}

FrameStats simulate_frame(const TxConfig& tx, const NoiseSpec& noise, const SearchMode& mode,
                          int max_iters, bool with_baseline, std::uint64_t seed,
                          std::uint64_t point_index, std::uint64_t frame_index) {
    std::mt19937_64 rng = frame_rng(seed, point_index, frame_index);
    const int k = tx.encoder.info_length();
    std::vector<std::uint8_t> u = random_bits(k, rng);
    std::uniform_int_distribution<std::uint32_t> pick_d(0, (std::uint32_t(1) << tx.ell) - 1);
    ExtraBits v = ExtraBits::from_value(pick_d(rng), tx.ell);
    RotationAngle theta = angle_of(v);

    // Noise is drawn in the unrotated frame and the sum rotated afterwards, so
    // the paired baseline leg can consume the very same realization. Rotating a
    // circularly symmetric Gaussian leaves its law unchanged.
    std::vector<std::uint8_t> c = tx.encoder.encode(u);
    c.resize(c.size() + tx.pad_bits(), 0);
    std::vector<std::complex<double>> x = map_bits(c, tx.cons);
    std::vector<std::complex<double>> z = awgn(x, noise, rng);
    std::vector<std::complex<double>> y = rotate(z, theta);

    FrameResult fr = decode_frame(y, tx, noise.sigma2, max_iters, mode);
    score_frame(fr, u, v);

    FrameStats st;
    st.extra_error = !fr.angle_correct;
    st.angle_correct = fr.angle_correct;
    st.payload_bit_errors = std::uint32_t(fr.payload_bit_errors);
    st.spa_iterations = std::uint16_t(fr.spa_iterations);
    st.list_size = std::uint16_t(fr.candidates.size());

    if (with_baseline) {
        // The reference leg decodes the exact doubles the rotated receiver sees
        // after derotating by the true angle; with a correct angle estimate the
        // two payload paths are therefore bit-identical.
        std::vector<std::complex<double>> z_base = derotate(y, theta);
        FrameResult base = decode_frame_at_angle(z_base, tx, noise.sigma2, max_iters,
                                                 grid_angle(0, tx.ell));
        score_frame(base, u, v);  // angle trivially "correct"; we want bit errors
        st.baseline_bit_errors = std::uint32_t(base.payload_bit_errors);
        st.payload_identical =
            fr.angle_correct && fr.payload_hard_bits == base.payload_hard_bits;
    }
    return st;
}

// Runs frames [begin, end) into out[i - begin] across the requested workers.
// The split is static and the output slots disjoint, so scheduling cannot
// change any result.
void run_chunk(const TxConfig& tx, const NoiseSpec& noise, const SearchMode& mode, int max_iters,
               bool with_baseline, std::uint64_t seed, std::uint64_t point_index,
               std::uint64_t begin, std::uint64_t end, int workers,
               std::vector<FrameStats>& out) {
    const std::uint64_t count = end - begin;
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t f = lo; f < hi; ++f)
            out[f - begin] = simulate_frame(tx, noise, mode, max_iters, with_baseline, seed,
                                            point_index, f);
    };
    if (workers <= 1 || count < 2) {
        work(begin, end);
        return;
    }
    const int n_threads = int(std::min<std::uint64_t>(workers, count));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
        std::uint64_t lo = begin + count * t / n_threads;
        std::uint64_t hi = begin + count * (t + 1) / n_threads;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SimResult run_monte_carlo(const SimConfig& cfg) {
    cfg.validate();
    Code code = load_code(cfg.code);
    return run_monte_carlo(cfg, code);
}

SimResult run_monte_carlo(const SimConfig& cfg, const Code& code) {
    cfg.validate();
    Constellation cons = make_constellation(cfg.constellation);
    TxConfig tx = make_tx_config(code.h, code.encoder, cons, cfg.ell);
    const double rate = double(code.encoder.info_length()) / code.encoder.code_length();
    const SearchMode mode = cfg.search_mode();

    SimResult result;
    result.config = cfg;
    result.n = code.encoder.code_length();
    result.k = code.encoder.info_length();

    constexpr std::uint64_t kChunk = 512;
    std::vector<FrameStats> chunk;
    for (std::size_t p = 0; p < cfg.snr_db.size(); ++p) {
        NoiseSpec noise =
            sigma_from_snr(cfg.snr_db[p], rate, cons.bits_per_symbol, cfg.convention);
        PointResult pt;
        pt.snr_db = cfg.snr_db[p];
        std::uint64_t f = 0;
        while (f < cfg.frames) {
            std::uint64_t end = std::min(cfg.frames, f + kChunk);
            chunk.assign(end - f, FrameStats{});
            run_chunk(tx, noise, mode, cfg.max_iters, cfg.baseline, cfg.seed, p, f, end,
                      cfg.workers, chunk);
            bool stop = false;
            for (std::uint64_t i = 0; i < end - f; ++i) {
                const FrameStats& st = chunk[i];
                ++pt.frames_run;
                pt.extra_frame_errors += st.extra_error;
                pt.payload_bit_errors += st.payload_bit_errors;
                pt.baseline_bit_errors += st.baseline_bit_errors;
                pt.spa_iteration_sum += st.spa_iterations;
                pt.list_size_sum += st.list_size;
                pt.angle_correct_frames += st.angle_correct;
                pt.identical_payload_frames += st.payload_identical;
                if (cfg.max_frame_errors > 0 && pt.extra_frame_errors >= cfg.max_frame_errors) {
                    stop = true;
                    break;
                }
            }
            if (stop) break;
            f = end;
        }
        result.points.push_back(pt);
    }
    return result;
}

SyndromeHistogram histogram_syndrome_weights(const SimConfig& cfg, double snr_db,
                                             std::uint64_t frames) {
    cfg.validate();
    Code code = load_code(cfg.code);
    return histogram_syndrome_weights(cfg, snr_db, frames, code);
}

SyndromeHistogram histogram_syndrome_weights(const SimConfig& cfg, double snr_db,
                                             std::uint64_t frames, const Code& code) {
    cfg.validate();
    Constellation cons = make_constellation(cfg.constellation);
    TxConfig tx = make_tx_config(code.h, code.encoder, cons, cfg.ell);
    const double rate = double(code.encoder.info_length()) / code.encoder.code_length();
    NoiseSpec noise = sigma_from_snr(snr_db, rate, cons.bits_per_symbol, cfg.convention);

    SyndromeHistogram hist;
    hist.snr_db = snr_db;
    hist.frames = frames;
    hist.n_checks = code.h.n_rows;

    const int k = code.encoder.info_length();
    for (std::uint64_t f = 0; f < frames; ++f) {
        std::mt19937_64 rng = frame_rng(cfg.seed, 0, f);
        std::vector<std::uint8_t> u = random_bits(k, rng);
        std::uniform_int_distribution<std::uint32_t> pick_d(0, (std::uint32_t(1) << cfg.ell) - 1);
        ExtraBits v = ExtraBits::from_value(pick_d(rng), cfg.ell);
        RotationAngle theta = angle_of(v);

        std::vector<std::uint8_t> c = code.encoder.encode(u);
        c.resize(c.size() + tx.pad_bits(), 0);
        std::vector<std::complex<double>> x = map_bits(c, cons);
        std::vector<std::complex<double>> y = rotate(awgn(x, noise, rng), theta);

        for (const RotationAngle& cand : symmetry_coset(theta, cons, cfg.ell)) {
            std::vector<std::uint8_t> hard = hard_demap(derotate(y, cand), cons);
            hard.resize(code.h.n_cols);
            int w = syndrome_weight(hard, code.h);
            if (*cand.grid_index == *theta.grid_index)
                ++hist.correct[w];
            else
                ++hist.erroneous[w];
        }
    }
    return hist;
}

std::string render_sweep_csv(const SimResult& result) {
    std::string out =
        "snr_db,convention,constellation,ell,frames,extra_fer,extra_err_count,"
        "payload_ber,payload_bit_errs,baseline_ber,mean_iters,mean_list_size\n";
    Constellation cons = make_constellation(result.config.constellation);
    char buf[256];
    for (const PointResult& pt : result.points) {
        std::snprintf(buf, sizeof buf, "%.6g,%s,%s,%d,%llu,%.6e,%llu,%.6e,%llu,", pt.snr_db,
                      snr_convention_name(result.config.convention), cons.name.c_str(),
                      result.config.ell, (unsigned long long)pt.frames_run, pt.extra_fer(),
                      (unsigned long long)pt.extra_frame_errors, pt.payload_ber(result.k),
                      (unsigned long long)pt.payload_bit_errors);
        out += buf;
        if (result.config.baseline) {
            std::snprintf(buf, sizeof buf, "%.6e", pt.baseline_ber(result.k));
            out += buf;
        }
        std::snprintf(buf, sizeof buf, ",%.4f,%.4f\n", pt.mean_iterations(), pt.mean_list_size());
        out += buf;
    }
    return out;
}

std::string render_histogram_csv(const SyndromeHistogram& hist) {
    std::string out = "label,syndrome_weight,count\n";
    char buf[96];
    for (const auto& [w, count] : hist.correct) {
        std::snprintf(buf, sizeof buf, "correct,%d,%llu\n", w, (unsigned long long)count);
        out += buf;
    }
    for (const auto& [w, count] : hist.erroneous) {
        std::snprintf(buf, sizeof buf, "erroneous,%d,%llu\n", w, (unsigned long long)count);
        out += buf;
    }
    return out;
}

}  // namespace rotlink
