#include "rotlink/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rotlink {

namespace {

constexpr double kLlrClamp = 30.0;
constexpr double kTanhClamp = 1.0 - 1e-12;

double clamp_llr(double v) { return std::clamp(v, -kLlrClamp, kLlrClamp); }

// Dense GF(2) matrix as 64-bit word rows, used for rank checks and encoder build.
struct GF2Dense {
    int n_rows;
    int n_cols;
    int words;
    std::vector<std::uint64_t> data;

    GF2Dense(const ParityCheckMatrix& h)
        : n_rows(h.n_rows), n_cols(h.n_cols), words((h.n_cols + 63) / 64), data(std::size_t(h.n_rows) * words, 0) {
        for (int r = 0; r < n_rows; ++r)
            for (int c : h.rows[r]) row(r)[c >> 6] |= std::uint64_t(1) << (c & 63);
    }

    std::uint64_t* row(int r) { return data.data() + std::size_t(r) * words; }
    bool get(int r, int c) { return (row(r)[c >> 6] >> (c & 63)) & 1; }

    void xor_rows(int dst, int src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = row(src);
        for (int w = 0; w < words; ++w) d[w] ^= s[w];
    }

    // Reduced row echelon form with column pivoting. Returns the pivot columns in
    // the order assigned to rows 0..rank-1 (ascending, since columns are scanned
    // left to right).
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < n_cols && r < n_rows; ++c) {
            int p = -1;
            for (int i = r; i < n_rows; ++i)
                if (get(i, c)) { p = i; break; }
            if (p < 0) continue;
            if (p != r)
                for (int w = 0; w < words; ++w) std::swap(row(p)[w], row(r)[w]);
            for (int i = 0; i < n_rows; ++i)
                if (i != r && get(i, c)) xor_rows(i, r);
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }
};

}  // namespace

int ParityCheckMatrix::nonzeros() const {
    int total = 0;
    for (const auto& r : rows) total += int(r.size());
    return total;
}

ParityCheckMatrix ParityCheckMatrix::from_rows(int n_cols, std::vector<std::vector<int>> rows) {
    ParityCheckMatrix h;
    h.n_cols = n_cols;
    h.n_rows = int(rows.size());
    h.rows = std::move(rows);
    h.cols.assign(n_cols, {});
    for (int r = 0; r < h.n_rows; ++r) {
        auto& row = h.rows[r];
        std::sort(row.begin(), row.end());
        if (row.empty())
            throw std::invalid_argument("parity-check row " + std::to_string(r) + " is empty");
        for (std::size_t i = 0; i < row.size(); ++i) {
            int c = row[i];
            if (c < 0 || c >= n_cols)
                throw std::invalid_argument("parity-check row " + std::to_string(r) +
                                            " has out-of-range column " + std::to_string(c));
            if (i > 0 && row[i - 1] == c)
                throw std::invalid_argument("parity-check row " + std::to_string(r) +
                                            " repeats column " + std::to_string(c));
            h.cols[c].push_back(r);
        }
    }
    for (int c = 0; c < n_cols; ++c)
        if (h.cols[c].empty())
            throw std::invalid_argument("parity-check column " + std::to_string(c) +
                                        " touches no check");
    return h;
}

ParityCheckMatrix peg_construct(int n_vars, int n_checks, int col_degree, std::uint64_t seed) {
    if (n_vars <= 0 || n_checks <= 0 || col_degree <= 0)
        throw std::invalid_argument("peg_construct: dimensions and degree must be positive");
    if (n_checks >= n_vars)
        throw std::invalid_argument("peg_construct: need n_checks < n_vars");
    if ((std::int64_t(n_vars) * col_degree) % n_checks != 0)
        throw std::invalid_argument("peg_construct: n_vars*col_degree must divide by n_checks");
    const int row_degree = int(std::int64_t(n_vars) * col_degree / n_checks);
    if (col_degree > n_checks)
        throw std::invalid_argument("peg_construct: col_degree exceeds n_checks");

    // Seed-driven relabeling used only to order equally good candidates.
    std::vector<int> priority(n_checks);
    std::iota(priority.begin(), priority.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(priority.begin(), priority.end(), rng);

    std::vector<std::vector<int>> var_adj(n_vars), chk_adj(n_checks);
    std::vector<int> chk_deg(n_checks, 0);

    // BFS workspace, reused across edge placements. Depth of a check node is its
    // edge distance from the root variable (1 for direct neighbors, 3, 5, ...).
    std::vector<int> chk_depth(n_checks), var_seen(n_vars);
    std::vector<int> frontier, next_frontier;

    auto better = [&](int a, int b) {  // is check a a better candidate than b
        if (chk_deg[a] != chk_deg[b]) return chk_deg[a] < chk_deg[b];
        return priority[a] < priority[b];
    };

    for (int v = 0; v < n_vars; ++v) {
        for (int e = 0; e < col_degree; ++e) {
            int pick = -1;
            if (e == 0) {
                for (int c = 0; c < n_checks; ++c)
                    if (chk_deg[c] < row_degree && (pick < 0 || better(c, pick))) pick = c;
            } else {
                std::fill(chk_depth.begin(), chk_depth.end(), -1);
                std::fill(var_seen.begin(), var_seen.end(), 0);
                var_seen[v] = 1;
                frontier.clear();
                for (int c : var_adj[v]) {
                    chk_depth[c] = 1;
                    frontier.push_back(c);
                }
                int reached = int(frontier.size());
                int depth = 1;
                while (reached < n_checks && !frontier.empty()) {
                    next_frontier.clear();
                    for (int c : frontier)
                        for (int u : chk_adj[c]) {
                            if (var_seen[u]) continue;
                            var_seen[u] = 1;
                            for (int c2 : var_adj[u])
                                if (chk_depth[c2] < 0) {
                                    chk_depth[c2] = depth + 2;
                                    next_frontier.push_back(c2);
                                }
                        }
                    depth += 2;
                    reached += int(next_frontier.size());
                    frontier.swap(next_frontier);
                }
                if (reached < n_checks) {
                    // Checks outside the tree keep the local girth unconstrained.
                    for (int c = 0; c < n_checks; ++c)
                        if (chk_depth[c] < 0 && chk_deg[c] < row_degree &&
                            (pick < 0 || better(c, pick)))
                            pick = c;
                }
                if (pick < 0) {
                    // Whole graph reachable (or all unreached checks full): take the
                    // deepest available check, never a direct neighbor.
                    int best_depth = -1;
                    for (int c = 0; c < n_checks; ++c) {
                        if (chk_depth[c] <= 1 || chk_deg[c] >= row_degree) continue;
                        if (chk_depth[c] > best_depth ||
                            (chk_depth[c] == best_depth && better(c, pick))) {
                            best_depth = chk_depth[c];
                            pick = c;
                        }
                    }
                }
            }
            if (pick < 0)
                throw std::runtime_error("peg_construct: no admissible check for variable " +
                                         std::to_string(v));
            var_adj[v].push_back(pick);
            chk_adj[pick].push_back(v);
            ++chk_deg[pick];
        }
    }

    std::vector<std::vector<int>> rows(n_checks);
    for (int c = 0; c < n_checks; ++c) rows[c] = chk_adj[c];
    return ParityCheckMatrix::from_rows(n_vars, std::move(rows));
}

int syndrome_weight(std::span<const std::uint8_t> bits, const ParityCheckMatrix& h) {
    if (int(bits.size()) != h.n_cols)
        throw std::invalid_argument("syndrome_weight: word length " + std::to_string(bits.size()) +
                                    " != n_cols " + std::to_string(h.n_cols));
    int w = 0;
    for (const auto& row : h.rows) {
        unsigned parity = 0;
        for (int c : row) parity ^= bits[c];
        w += parity & 1;
    }
    return w;
}

int gf2_rank(const ParityCheckMatrix& h) {
    GF2Dense m(h);
    return int(m.rref().size());
}

Encoder build_encoder(const ParityCheckMatrix& h) {
    GF2Dense m(h);
    std::vector<int> pivots = m.rref();
    if (int(pivots.size()) < h.n_rows)
        throw std::runtime_error("build_encoder: H has rank " + std::to_string(pivots.size()) +
                                 " < " + std::to_string(h.n_rows) + " rows; cannot encode");

    Encoder enc;
    enc.n_ = h.n_cols;
    enc.k_ = h.n_cols - h.n_rows;
    enc.parity_pos_ = pivots;
    std::vector<char> is_pivot(h.n_cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    enc.info_pos_.reserve(enc.k_);
    for (int c = 0; c < h.n_cols; ++c)
        if (!is_pivot[c]) enc.info_pos_.push_back(c);

    enc.words_ = (enc.k_ + 63) / 64;
    enc.table_.assign(std::size_t(h.n_rows) * enc.words_, 0);
    for (int r = 0; r < h.n_rows; ++r) {
        std::uint64_t* dst = enc.table_.data() + std::size_t(r) * enc.words_;
        for (int j = 0; j < enc.k_; ++j)
            if (m.get(r, enc.info_pos_[j])) dst[j >> 6] |= std::uint64_t(1) << (j & 63);
    }
    return enc;
}

std::vector<std::uint8_t> Encoder::encode(std::span<const std::uint8_t> u) const {
    if (int(u.size()) != k_)
        throw std::invalid_argument("encode: info length " + std::to_string(u.size()) + " != K " +
                                    std::to_string(k_));
    std::vector<std::uint64_t> uw(words_, 0);
    for (int j = 0; j < k_; ++j)
        if (u[j]) uw[j >> 6] |= std::uint64_t(1) << (j & 63);

    std::vector<std::uint8_t> c(n_, 0);
    for (int j = 0; j < k_; ++j) c[info_pos_[j]] = u[j] & 1;
    const int n_parity = int(parity_pos_.size());
    for (int r = 0; r < n_parity; ++r) {
        const std::uint64_t* row = table_.data() + std::size_t(r) * words_;
        std::uint64_t acc = 0;
        for (int w = 0; w < words_; ++w) acc ^= row[w] & uw[w];
        c[parity_pos_[r]] = std::uint8_t(std::popcount(acc) & 1);
    }
    return c;
}

std::vector<std::uint8_t> Encoder::extract_info(std::span<const std::uint8_t> codeword) const {
    if (int(codeword.size()) != n_)
        throw std::invalid_argument("extract_info: word length " + std::to_string(codeword.size()) +
                                    " != N " + std::to_string(n_));
    std::vector<std::uint8_t> u(k_);
    for (int j = 0; j < k_; ++j) u[j] = codeword[info_pos_[j]] & 1;
    return u;
}

DecodeResult sum_product_decode(std::span<const double> llrs, const ParityCheckMatrix& h,
                                int max_iters) {
    if (int(llrs.size()) != h.n_cols)
        throw std::invalid_argument("sum_product_decode: llr length " +
                                    std::to_string(llrs.size()) + " != n_cols " +
                                    std::to_string(h.n_cols));
    if (max_iters < 0) throw std::invalid_argument("sum_product_decode: max_iters < 0");

    const int n = h.n_cols;
    const int n_edges = h.nonzeros();

    // Flattened row-major edge layout plus a per-variable view of edge slots.
    std::vector<int> edge_var(n_edges), row_start(h.n_rows + 1, 0);
    std::vector<std::vector<int>> var_edges(n);
    {
        int e = 0;
        for (int r = 0; r < h.n_rows; ++r) {
            row_start[r] = e;
            for (int c : h.rows[r]) {
                edge_var[e] = c;
                var_edges[c].push_back(e);
                ++e;
            }
        }
        row_start[h.n_rows] = e;
    }

    std::vector<double> chan(n);
    for (int i = 0; i < n; ++i) chan[i] = clamp_llr(llrs[i]);

    std::vector<std::uint8_t> hard(n);
    auto decide = [&](const std::vector<double>& metric) {
        for (int i = 0; i < n; ++i) hard[i] = metric[i] < 0.0 ? 1 : 0;
    };
    decide(chan);
    if (syndrome_weight(hard, h) == 0) return {std::move(hard), true, 0};

    std::vector<double> v2c(n_edges), c2v(n_edges, 0.0), posterior(n);
    for (int e = 0; e < n_edges; ++e) v2c[e] = chan[edge_var[e]];

    std::vector<double> t, fwd, bwd;
    for (int iter = 1; iter <= max_iters; ++iter) {
        for (int r = 0; r < h.n_rows; ++r) {
            const int begin = row_start[r], end = row_start[r + 1], cw = end - begin;
            if (cw == 1) {
                c2v[begin] = 2.0 * std::atanh(kTanhClamp);
                continue;
            }
            t.resize(cw);
            fwd.resize(cw);
            bwd.resize(cw);
            for (int j = 0; j < cw; ++j) t[j] = std::tanh(0.5 * v2c[begin + j]);
            fwd[0] = t[0];
            for (int j = 1; j < cw; ++j) fwd[j] = fwd[j - 1] * t[j];
            bwd[cw - 1] = t[cw - 1];
            for (int j = cw - 2; j >= 0; --j) bwd[j] = bwd[j + 1] * t[j];
            for (int j = 0; j < cw; ++j) {
                double prod = 1.0;
                if (j > 0) prod *= fwd[j - 1];
                if (j < cw - 1) prod *= bwd[j + 1];
                prod = std::clamp(prod, -kTanhClamp, kTanhClamp);
                c2v[begin + j] = 2.0 * std::atanh(prod);
            }
        }
        for (int i = 0; i < n; ++i) {
            double total = chan[i];
            for (int e : var_edges[i]) total += c2v[e];
            posterior[i] = total;
            for (int e : var_edges[i]) v2c[e] = clamp_llr(total - c2v[e]);
        }
        decide(posterior);
        if (syndrome_weight(hard, h) == 0) return {std::move(hard), true, iter};
    }
    return {std::move(hard), false, max_iters};
}

Code peg_code(int n_vars, int n_checks, int col_degree, std::uint64_t seed) {
    ParityCheckMatrix h;
    for (int attempt = 0; attempt <= 10; ++attempt) {
        h = peg_construct(n_vars, n_checks, col_degree, seed + std::uint64_t(attempt));
        if (gf2_rank(h) == n_checks) {
            Encoder enc = build_encoder(h);
            return {std::move(h), std::move(enc)};
        }
    }
    throw std::runtime_error("peg_code: rank-deficient for 10 consecutive seeds starting at " +
                             std::to_string(seed));
}

}  // namespace rotlink
