#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace occtomo {

/// Malformed or unreadable file contents.
class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense row-major matrix used for file exchange and image maps.
struct Array2D {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

Array2D make_array(int rows, int cols, double fill = 0.0);

/// Binary array format: magic "OTAR1\n", ASCII header "rows cols\n", then
/// rows*cols IEEE-754 binary64 values, row-major, little-endian.
/// Round-trips bit-exactly.
void write_array(const std::string& path, const Array2D& m);
Array2D read_array(const std::string& path);

/// 8-bit P2 (text) PGM, max-normalized: 255 maps to the array maximum.
/// Negative values clamp to 0; a constant positive array renders as all 255.
void write_pgm(const std::string& path, const Array2D& m);

/// One "%.17g,%.17g" pair per line, no header.
void write_csv_pairs(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows);
std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path);

/// Flat key=value configuration with section-prefixed keys
/// (e.g. "solver.tol=1e-6"). '#' starts a comment; blank lines are ignored.
class KeyValueConfig {
  public:
    KeyValueConfig() = default;

    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_text(const std::string& text);
    void write_file(const std::string& path) const;

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    void set(const std::string& key, double value);
    void set(const std::string& key, int value);

    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace occtomo
