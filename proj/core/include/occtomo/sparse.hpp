#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace occtomo {

/// Coordinate-format sparse linear operator. Entries are kept in insertion
/// order; finalize() stable-sorts them row-major and compiles a row-pointer
/// index for per-row access. Application iterates entries in storage order,
/// so results are bit-reproducible.
class SparseOperator {
  public:
    struct Entry {
        int row = 0;
        int col = 0;
        double value = 0.0;
    };

    SparseOperator() = default;
    SparseOperator(int n_rows, int n_cols);

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    void add(int row, int col, double value);
    void reserve(std::size_t n) { entries_.reserve(n); }

    /// Sorts entries row-major (stable, preserving in-row insertion order)
    /// and builds the row-pointer index. The operator is immutable and safe
    /// for concurrent reads afterwards.
    void finalize();
    bool finalized() const { return finalized_; }

    /// Entry range [row_begin(r), row_end(r)) of one row; requires finalize().
    std::size_t row_begin(int row) const { return row_ptr_[static_cast<std::size_t>(row)]; }
    std::size_t row_end(int row) const { return row_ptr_[static_cast<std::size_t>(row) + 1]; }

    /// out = op * v
    void apply(const std::vector<double>& v, std::vector<double>& out) const;
    std::vector<double> apply(const std::vector<double>& v) const;

    /// out = op^T * v, computed from the same storage.
    void apply_transpose(const std::vector<double>& v, std::vector<double>& out) const;
    std::vector<double> apply_transpose(const std::vector<double>& v) const;

    /// Checks index bounds and (row, col) uniqueness; throws on violation.
    void validate() const;

  private:
    int n_rows_ = 0;
    int n_cols_ = 0;
    bool finalized_ = false;
    std::vector<Entry> entries_;
    std::vector<std::size_t> row_ptr_;
};

SparseOperator identity_operator(int n);

/// Text coordinate format: header "rows cols nnz", then one "row col value"
/// triple per line with 17 significant digits.
void write_operator(const std::string& path, const SparseOperator& op);
SparseOperator read_operator(const std::string& path);

}  // namespace occtomo
