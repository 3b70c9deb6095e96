#include "rotlink/alist.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rotlink {

namespace {

// Line-oriented tokenizer that remembers the current line number for messages.
struct LineReader {
    std::istream& in;
    int line_no = 0;

    std::vector<long> next_ints(const char* what) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ss(line);
            std::vector<long> vals;
            long v;
            while (ss >> v) vals.push_back(v);
            std::string trailing;
            if (!ss.eof() && ss.fail()) {
                ss.clear();
                ss >> trailing;
                throw std::runtime_error("alist line " + std::to_string(line_no) +
                                         ": non-numeric token '" + trailing + "'");
            }
            if (!vals.empty()) return vals;  // skip blank lines
        }
        throw std::runtime_error("alist: unexpected end of input while reading " +
                                 std::string(what));
    }
};

}  // namespace

ParityCheckMatrix read_alist(std::istream& in) {
    LineReader r{in};

    auto dims = r.next_ints("dimensions");
    if (dims.size() != 2 || dims[0] <= 0 || dims[1] <= 0)
        throw std::runtime_error("alist line " + std::to_string(r.line_no) +
                                 ": expected two positive dimensions N M");
    const int n = int(dims[0]), m = int(dims[1]);

    auto maxdeg = r.next_ints("max degrees");
    if (maxdeg.size() != 2 || maxdeg[0] <= 0 || maxdeg[1] <= 0)
        throw std::runtime_error("alist line " + std::to_string(r.line_no) +
                                 ": expected two positive max degrees");

    auto read_degrees = [&](int count, const char* what) {
        std::vector<int> deg;
        deg.reserve(count);
        while (int(deg.size()) < count) {
            for (long v : r.next_ints(what)) {
                if (v <= 0)
                    throw std::runtime_error("alist line " + std::to_string(r.line_no) +
                                             ": degree must be positive");
                deg.push_back(int(v));
            }
        }
        if (int(deg.size()) != count)
            throw std::runtime_error("alist line " + std::to_string(r.line_no) + ": expected " +
                                     std::to_string(count) + " " + what);
        return deg;
    };
    std::vector<int> col_deg = read_degrees(n, "column degrees");
    std::vector<int> row_deg = read_degrees(m, "row degrees");

    auto read_index_lines = [&](const std::vector<int>& deg, int limit, const char* what) {
        std::vector<std::vector<int>> lists(deg.size());
        for (std::size_t i = 0; i < deg.size(); ++i) {
            auto vals = r.next_ints(what);
            int nonzero = 0;
            for (long v : vals) {
                if (v == 0) continue;  // zero padding
                if (v < 0 || v > limit)
                    throw std::runtime_error("alist line " + std::to_string(r.line_no) +
                                             ": index " + std::to_string(v) + " out of range 1.." +
                                             std::to_string(limit));
                lists[i].push_back(int(v) - 1);
                ++nonzero;
            }
            if (nonzero != deg[i])
                throw std::runtime_error("alist line " + std::to_string(r.line_no) + ": " + what +
                                         " " + std::to_string(i + 1) + " lists " +
                                         std::to_string(nonzero) + " indices, degree says " +
                                         std::to_string(deg[i]));
        }
        return lists;
    };
    std::vector<std::vector<int>> col_lists = read_index_lines(col_deg, m, "column");
    std::vector<std::vector<int>> row_lists = read_index_lines(row_deg, n, "row");

    ParityCheckMatrix h = ParityCheckMatrix::from_rows(n, std::move(row_lists));

    // The column lists are redundant; verify they agree with the rows.
    for (int c = 0; c < n; ++c) {
        std::vector<int> want = col_lists[c];
        std::sort(want.begin(), want.end());
        if (want != h.cols[c])
            throw std::runtime_error("alist: column " + std::to_string(c + 1) +
                                     " disagrees with the row lists");
    }
    return h;
}

ParityCheckMatrix read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("alist: cannot open '" + path + "' for reading");
    return read_alist(in);
}

void write_alist(const ParityCheckMatrix& h, std::ostream& out) {
    std::size_t max_col = 0, max_row = 0;
    for (const auto& c : h.cols) max_col = std::max(max_col, c.size());
    for (const auto& r : h.rows) max_row = std::max(max_row, r.size());

    out << h.n_cols << ' ' << h.n_rows << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (int c = 0; c < h.n_cols; ++c) out << h.cols[c].size() << (c + 1 < h.n_cols ? ' ' : '\n');
    for (int r = 0; r < h.n_rows; ++r) out << h.rows[r].size() << (r + 1 < h.n_rows ? ' ' : '\n');
    for (const auto& col : h.cols) {
        for (std::size_t i = 0; i < col.size(); ++i) out << col[i] + 1 << (i + 1 < col.size() ? ' ' : '\n');
    }
    for (const auto& row : h.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << row[i] + 1 << (i + 1 < row.size() ? ' ' : '\n');
    }
}

void write_alist_file(const ParityCheckMatrix& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("alist: cannot open '" + path + "' for writing");
    write_alist(h, out);
    if (!out.flush()) throw std::runtime_error("alist: write to '" + path + "' failed");
}

}  // namespace rotlink
