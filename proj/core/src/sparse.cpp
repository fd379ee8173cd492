#include "occtomo/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "occtomo/io.hpp"

namespace occtomo {

SparseOperator::SparseOperator(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {
    if (n_rows < 0 || n_cols < 0)
        throw std::invalid_argument("SparseOperator: negative dimensions");
    row_ptr_.assign(static_cast<std::size_t>(n_rows) + 1, 0);
}

void SparseOperator::add(int row, int col, double value) {
    if (row < 0 || row >= n_rows_ || col < 0 || col >= n_cols_)
        throw std::invalid_argument("SparseOperator::add: index out of range");
    entries_.push_back({row, col, value});
    finalized_ = false;
}

void SparseOperator::finalize() {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const Entry& a, const Entry& b) { return a.row < b.row; });
    row_ptr_.assign(static_cast<std::size_t>(n_rows_) + 1, 0);
    for (const Entry& e : entries_) ++row_ptr_[static_cast<std::size_t>(e.row) + 1];
    for (std::size_t r = 0; r < static_cast<std::size_t>(n_rows_); ++r)
        row_ptr_[r + 1] += row_ptr_[r];
    finalized_ = true;
}

void SparseOperator::apply(const std::vector<double>& v, std::vector<double>& out) const {
    if (static_cast<int>(v.size()) != n_cols_)
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    out.assign(static_cast<std::size_t>(n_rows_), 0.0);
    for (const Entry& e : entries_)
        out[static_cast<std::size_t>(e.row)] += e.value * v[static_cast<std::size_t>(e.col)];
}

std::vector<double> SparseOperator::apply(const std::vector<double>& v) const {
    std::vector<double> out;
    apply(v, out);
    return out;
}

void SparseOperator::apply_transpose(const std::vector<double>& v, std::vector<double>& out) const {
    if (static_cast<int>(v.size()) != n_rows_)
        throw std::invalid_argument("SparseOperator::apply_transpose: dimension mismatch");
    out.assign(static_cast<std::size_t>(n_cols_), 0.0);
    for (const Entry& e : entries_)
        out[static_cast<std::size_t>(e.col)] += e.value * v[static_cast<std::size_t>(e.row)];
}

std::vector<double> SparseOperator::apply_transpose(const std::vector<double>& v) const {
    std::vector<double> out;
    apply_transpose(v, out);
    return out;
}

void SparseOperator::validate() const {
    std::vector<std::pair<int, int>> keys;
    keys.reserve(entries_.size());
    for (const Entry& e : entries_) {
        if (e.row < 0 || e.row >= n_rows_ || e.col < 0 || e.col >= n_cols_)
            throw std::runtime_error("SparseOperator::validate: index out of range");
        keys.emplace_back(e.row, e.col);
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw std::runtime_error("SparseOperator::validate: duplicate (row, col) entry");
}

SparseOperator identity_operator(int n) {
    SparseOperator op(n, n);
    for (int i = 0; i < n; ++i) op.add(i, i, 1.0);
    op.finalize();
    return op;
}

void write_operator(const std::string& path, const SparseOperator& op) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path);
    f << op.rows() << ' ' << op.cols() << ' ' << op.nnz() << '\n';
    char buf[80];
    for (const auto& e : op.entries()) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", e.row, e.col, e.value);
        f << buf;
    }
    if (!f) throw FormatError("write failed: " + path);
}

SparseOperator read_operator(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open: " + path);
    int rows = 0, cols = 0;
    std::size_t nnz = 0;
    if (!(f >> rows >> cols >> nnz)) throw FormatError("bad operator header: " + path);
    if (rows < 0 || cols < 0) throw FormatError("bad operator dimensions: " + path);
    SparseOperator op(rows, cols);
    op.reserve(nnz);
    for (std::size_t i = 0; i < nnz; ++i) {
        int r = 0, c = 0;
        double v = 0.0;
        if (!(f >> r >> c >> v)) throw FormatError("truncated operator file: " + path);
        op.add(r, c, v);
    }
    op.finalize();
    op.validate();
    return op;
}

}  // namespace occtomo
