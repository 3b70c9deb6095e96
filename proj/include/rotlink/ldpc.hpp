#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rotlink {

/// Sparse binary parity-check matrix in row/column adjacency form.
/// rows[r] lists the variable (column) indices checked by row r,
/// cols[c] lists the check (row) indices touching column c; both sorted ascending.
struct ParityCheckMatrix {
    int n_cols = 0;
    int n_rows = 0;
    std::vector<std::vector<int>> rows;
    std::vector<std::vector<int>> cols;

    int nonzeros() const;

    /// Builds the column adjacency from rows and checks consistency:
    /// indices in range, no duplicates within a row, every row/column nonempty.
    /// Throws std::invalid_argument on violation.
    static ParityCheckMatrix from_rows(int n_cols, std::vector<std::vector<int>> rows);
};

/// Progressive edge growth construction of an (col_degree, row_degree)-regular
/// matrix, row_degree = n_vars*col_degree/n_checks (must divide evenly).
/// Greedy per-variable edge placement: each new edge goes to a check outside the
/// current computation tree of the variable if one exists, otherwise to one at
/// maximal depth; ties resolved by minimal current check degree, then by lowest
/// check index under a seed-driven relabeling. Deterministic for a fixed seed.
ParityCheckMatrix peg_construct(int n_vars, int n_checks, int col_degree, std::uint64_t seed);

/// Number of unsatisfied parity checks of a hard-decision word.
int syndrome_weight(std::span<const std::uint8_t> bits, const ParityCheckMatrix& h);

/// Systematic encoder derived from H by GF(2) Gaussian elimination with column
/// pivoting. Information bits occupy the non-pivot columns (ascending order);
/// each parity (pivot) column is a fixed GF(2) linear form of the info bits.
class Encoder {
  public:
    int code_length() const { return n_; }
    int info_length() const { return k_; }

    /// Codeword positions that carry the information word, ascending.
    const std::vector<int>& info_positions() const { return info_pos_; }
    /// Pivot positions holding parity bits, ascending, one per check row rank.
    const std::vector<int>& parity_positions() const { return parity_pos_; }

    /// u (K bits) -> codeword (N bits) with zero syndrome under the source H.
    std::vector<std::uint8_t> encode(std::span<const std::uint8_t> u) const;

    /// Reads the information bits back out of a codeword-length word.
    std::vector<std::uint8_t> extract_info(std::span<const std::uint8_t> codeword) const;

  private:
    friend Encoder build_encoder(const ParityCheckMatrix& h);
    int n_ = 0;
    int k_ = 0;
    std::vector<int> info_pos_;
    std::vector<int> parity_pos_;
    std::vector<std::uint64_t> table_;  // n_rows x words_per_row bit rows over info positions
    int words_ = 0;
};

/// Throws std::runtime_error naming the deficient rank if rank(H) < n_rows.
Encoder build_encoder(const ParityCheckMatrix& h);

/// GF(2) rank of H (dense elimination).
int gf2_rank(const ParityCheckMatrix& h);

struct DecodeResult {
    std::vector<std::uint8_t> hard_bits;
    bool converged = false;
    int iterations_used = 0;
};

/// Flooding-schedule sum-product decoding. llrs follow the positive-means-zero
/// convention. Converges (and exits early) when the hard decision satisfies all
/// checks; iterations_used = 0 means the channel hard decision already did.
DecodeResult sum_product_decode(std::span<const double> llrs, const ParityCheckMatrix& h,
                                int max_iters);

/// A parity-check matrix paired with its encoder.
struct Code {
    ParityCheckMatrix h;
    Encoder encoder;
};

/// PEG construction plus encoder build, retrying with seed+1 (up to 10 retries)
/// when the constructed matrix is rank-deficient.
Code peg_code(int n_vars, int n_checks, int col_degree, std::uint64_t seed);

}  // namespace rotlink
