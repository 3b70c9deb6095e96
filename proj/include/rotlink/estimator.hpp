#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotlink/ldpc.hpp"
#include "rotlink/modem.hpp"
#include "rotlink/rotation.hpp"

namespace rotlink {

struct Candidate {
    RotationAngle angle;
    double objective = 0.0;
    std::optional<int> syndrome_weight;
};

/// Candidate angles surviving the grid search, sorted by descending objective
/// (ties by ascending grid index), plus cost counters for the whole search.
struct CandidateSet {
    std::vector<Candidate> entries;
    int objective_evaluations = 0;
    int syndrome_computations = 0;

    std::size_t size() const { return entries.size(); }
};

/// Candidate selection rule for brute_force_search.
///   Tie: keep every angle within eps = 1e-9 * max(1, |F_max|) of the maximum,
///        then widen with the symmetry coset of the winner.
///   ThresholdDelta: keep angles with F >= F_max - value (never empty).
///   ThresholdAbs: keep angles with F >= value; throws if none qualify.
struct SearchMode {
    enum Kind { Tie, ThresholdDelta, ThresholdAbs };
    Kind kind = Tie;
    double value = 0.0;
};

/// Log-likelihood of a rotation hypothesis: sum over symbols of the log-sum-exp
/// of -|y_t - s_i e^{j theta}|^2 / sigma2 over constellation points s_i.
double rotation_objective(std::span<const std::complex<double>> y, const Constellation& cons,
                          double theta, double sigma2);

/// Evaluates the objective on all 2^ell grid angles and keeps candidates per mode.
CandidateSet brute_force_search(std::span<const std::complex<double>> y,
                                const Constellation& cons, int ell, double sigma2,
                                const SearchMode& mode = {});

/// Grid angles indistinguishable from theta by constellation symmetry:
/// {theta + 2*pi*k/q : k = 0..q-1} intersected with the 2^ell grid, in k order.
std::vector<RotationAngle> symmetry_coset(const RotationAngle& theta, const Constellation& cons,
                                          int ell);

struct DisambiguationResult {
    RotationAngle chosen;
    CandidateSet candidates;  // entries now carry syndrome weights
};

/// Syndrome-weight disambiguation: derotate y by each candidate, hard-demap,
/// count unsatisfied checks; the candidate with minimal weight wins, ties going
/// to the lowest grid index. Demapped bits beyond h.n_cols (padding) are ignored.
DisambiguationResult disambiguate(std::span<const std::complex<double>> y,
                                  CandidateSet candidates, const ParityCheckMatrix& h,
                                  const Constellation& cons);

/// One-line diagnostics: "k=<idx> F=<val> W=<w>; ...; chosen=<idx>".
std::string candidate_diagnostics(const CandidateSet& set, const RotationAngle& chosen);

}  // namespace rotlink
