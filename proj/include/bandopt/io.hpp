#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandopt/dense.hpp"
#include "bandopt/sparse.hpp"

namespace bandopt {

namespace detail {

inline bool parse_double(std::string_view tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

inline std::vector<std::string_view> split_csv(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        std::string_view tok = pos == std::string_view::npos ? line.substr(start)
                                                             : line.substr(start, pos - start);
        while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
        while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r'))
            tok.remove_suffix(1);
        out.push_back(tok);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

// Comma-separated dense matrix; a non-numeric first line is treated as a
// header and skipped. Ragged rows and non-finite values are errors.
inline DenseMatrix load_dense(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dense: cannot open " + path);
    std::vector<double> values;
    std::int64_t cols = -1;
    std::int64_t rows = 0;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto toks = detail::split_csv(line, ',');
        std::vector<double> row;
        row.reserve(toks.size());
        bool ok = true;
        for (const auto& tok : toks) {
            double v;
            if (!detail::parse_double(tok, v)) {
                ok = false;
                break;
            }
            row.push_back(v);
        }
        if (!ok) {
            if (first) {
                first = false;
                continue;  // header line
            }
            throw std::runtime_error("load_dense: non-numeric value in " + path);
        }
        first = false;
        for (const double v : row)
            if (!std::isfinite(v)) throw std::runtime_error("load_dense: non-finite value in " + path);
        if (cols < 0)
            cols = static_cast<std::int64_t>(row.size());
        else if (cols != static_cast<std::int64_t>(row.size()))
            throw std::runtime_error("load_dense: ragged row in " + path);
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }
    if (rows == 0) throw std::runtime_error("load_dense: empty file " + path);
    return DenseMatrix(rows, cols, std::move(values));
}

inline void save_dense(const DenseMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_dense: cannot open " + path);
    out.precision(17);
    for (std::int64_t i = 0; i < m.rows(); ++i) {
        for (std::int64_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

// Triplet text format: header "n d nnz", then one "row col value" per line,
// 0-indexed. Rows absent from the file load as all-zero vectors.
inline std::vector<SparseVector> load_sparse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_sparse: cannot open " + path);
    std::int64_t n, d, nnz;
    if (!(in >> n >> d >> nnz)) throw std::runtime_error("load_sparse: bad header in " + path);
    if (n < 0 || d < 0 || nnz < 0) throw std::runtime_error("load_sparse: negative header field");
    std::vector<std::vector<std::pair<std::int64_t, double>>> rows(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < nnz; ++k) {
        std::int64_t r, c;
        double v;
        if (!(in >> r >> c >> v)) throw std::runtime_error("load_sparse: truncated triplets");
        if (r < 0 || r >= n || c < 0 || c >= d)
            throw std::runtime_error("load_sparse: triplet index out of range");
        for (const auto& [pc, pv] : rows[static_cast<std::size_t>(r)])
            if (pc == c) throw std::runtime_error("load_sparse: duplicate (row,col)");
        rows[static_cast<std::size_t>(r)].emplace_back(c, v);
    }
    std::vector<SparseVector> out;
    out.reserve(static_cast<std::size_t>(n));
    for (const auto& pairs : rows) out.push_back(SparseVector::from_pairs(d, pairs));
    return out;
}

inline void save_sparse(const std::vector<SparseVector>& vecs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_sparse: cannot open " + path);
    out.precision(17);
    std::int64_t nnz = 0;
    for (const auto& v : vecs) nnz += v.nnz();
    const std::int64_t d = vecs.empty() ? 0 : vecs.front().dim();
    out << vecs.size() << ' ' << d << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        for (std::int64_t s = 0; s < vecs[i].nnz(); ++s) {
            const auto& [coord, value] = vecs[i].entry(s);
            out << i << ' ' << coord << ' ' << value << '\n';
        }
    }
}

}  // namespace bandopt
