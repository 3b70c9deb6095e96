#include "rotlink/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace rotlink {

double rotation_objective(std::span<const std::complex<double>> y, const Constellation& cons,
                          double theta, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("rotation_objective: sigma2 must be positive");
    const std::complex<double> f = std::polar(1.0, theta);
    const std::size_t npts = cons.points.size();
    std::vector<std::complex<double>> rotated(npts);
    for (std::size_t i = 0; i < npts; ++i) rotated[i] = cons.points[i] * f;

    double total = 0.0;
    std::vector<double> metric(npts);
    for (const auto& yt : y) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < npts; ++i) {
            metric[i] = -std::norm(yt - rotated[i]) / sigma2;
            best = std::max(best, metric[i]);
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < npts; ++i) sum += std::exp(metric[i] - best);
        total += best + std::log(sum);
    }
    return total;
}

std::vector<RotationAngle> symmetry_coset(const RotationAngle& theta, const Constellation& cons,
                                          int ell) {
    if (cons.symmetry_order < 1)
        throw std::invalid_argument("symmetry_coset: constellation symmetry order < 1");
    const int grid = 1 << ell;
    int base;
    if (theta.grid_index) {
        base = *theta.grid_index;
    } else {
        base = int(bits_of_angle(theta, ell).decimal());
    }
    std::vector<RotationAngle> coset;
    const int q = cons.symmetry_order;
    for (int k = 0; k < q; ++k) {
        // Offset 2*pi*k/q lands on the grid iff k*2^ell is a multiple of q.
        if ((std::int64_t(k) * grid) % q != 0) continue;
        int idx = int((base + std::int64_t(k) * grid / q) % grid);
        coset.push_back(grid_angle(idx, ell));
    }
    return coset;
}

CandidateSet brute_force_search(std::span<const std::complex<double>> y,
                                const Constellation& cons, int ell, double sigma2,
                                const SearchMode& mode) {
    if (ell < 1 || ell > 16)
        throw std::invalid_argument("brute_force_search: ell outside 1..16");
    const int grid = 1 << ell;

    std::vector<double> f(grid);
    for (int k = 0; k < grid; ++k)
        f[k] = rotation_objective(y, cons, grid_angle(k, ell).radians, sigma2);

    const double f_max = *std::max_element(f.begin(), f.end());
    std::vector<char> keep(grid, 0);
    switch (mode.kind) {
        case SearchMode::Tie: {
            const double eps = 1e-9 * std::max(1.0, std::abs(f_max));
            for (int k = 0; k < grid; ++k) keep[k] = f[k] >= f_max - eps;
            // The symmetry coset of the winner is an exact mathematical tie;
            // union it in so floating-point jitter can never drop a member.
            int winner = 0;
            for (int k = 0; k < grid; ++k)
                if (f[k] > f[winner]) winner = k;
            for (const auto& angle : symmetry_coset(grid_angle(winner, ell), cons, ell))
                keep[*angle.grid_index] = 1;
            break;
        }
        case SearchMode::ThresholdDelta: {
            for (int k = 0; k < grid; ++k) keep[k] = f[k] >= f_max - mode.value;
            break;
        }
        case SearchMode::ThresholdAbs: {
            bool any = false;
            for (int k = 0; k < grid; ++k) {
                keep[k] = f[k] >= mode.value;
                any = any || keep[k];
            }
            if (!any)
                throw std::runtime_error(
                    "brute_force_search: threshold " + std::to_string(mode.value) +
                    " exceeds the maximal objective " + std::to_string(f_max) +
                    "; candidate set is empty");
            break;
        }
    }

    CandidateSet set;
    set.objective_evaluations = grid;
    for (int k = 0; k < grid; ++k)
        if (keep[k]) set.entries.push_back({grid_angle(k, ell), f[k], std::nullopt});
    std::stable_sort(set.entries.begin(), set.entries.end(),
                     [](const Candidate& a, const Candidate& b) {
                         if (a.objective != b.objective) return a.objective > b.objective;
                         return *a.angle.grid_index < *b.angle.grid_index;
                     });
    return set;
}

DisambiguationResult disambiguate(std::span<const std::complex<double>> y,
                                  CandidateSet candidates, const ParityCheckMatrix& h,
                                  const Constellation& cons) {
    if (candidates.entries.empty())
        throw std::invalid_argument("disambiguate: empty candidate set");
    const std::size_t n_bits = std::size_t(h.n_cols);

    int best = -1;
    for (std::size_t i = 0; i < candidates.entries.size(); ++i) {
        Candidate& cand = candidates.entries[i];
        std::vector<std::complex<double>> tilde = derotate(y, cand.angle);
        std::vector<std::uint8_t> hard = hard_demap(tilde, cons);
        if (hard.size() < n_bits)
            throw std::invalid_argument("disambiguate: frame carries fewer bits than n_cols");
        hard.resize(n_bits);  // drop demapped padding
        cand.syndrome_weight = syndrome_weight(hard, h);
        ++candidates.syndrome_computations;
        if (best < 0) {
            best = int(i);
            continue;
        }
        const Candidate& champ = candidates.entries[best];
        if (*cand.syndrome_weight < *champ.syndrome_weight ||
            (*cand.syndrome_weight == *champ.syndrome_weight &&
             *cand.angle.grid_index < *champ.angle.grid_index))
            best = int(i);
    }
    return {candidates.entries[best].angle, std::move(candidates)};
}

std::string candidate_diagnostics(const CandidateSet& set, const RotationAngle& chosen) {
    std::string out;
    char buf[96];
    for (const auto& c : set.entries) {
        if (c.syndrome_weight)
            std::snprintf(buf, sizeof buf, "k=%d F=%.6f W=%d; ", c.angle.grid_index.value_or(-1),
                          c.objective, *c.syndrome_weight);
        else
            std::snprintf(buf, sizeof buf, "k=%d F=%.6f W=-; ", c.angle.grid_index.value_or(-1),
                          c.objective);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "chosen=%d", chosen.grid_index.value_or(-1));
    out += buf;
    return out;
}

}  // namespace rotlink
