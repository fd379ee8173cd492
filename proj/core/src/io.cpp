#include "occtomo/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace occtomo {

namespace {

constexpr char kArrayMagic[] = "OTAR1\n";

// Payload is little-endian on disk regardless of host order.
void to_disk_order(std::vector<double>& values) {
    if constexpr (std::endian::native == std::endian::big) {
        for (double& d : values) {
            std::uint64_t u;
            std::memcpy(&u, &d, 8);
            u = __builtin_bswap64(u);
            std::memcpy(&d, &u, 8);
        }
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Array2D make_array(int rows, int cols, double fill) {
    Array2D m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
    return m;
}

void write_array(const std::string& path, const Array2D& m) {
    if (m.rows < 1 || m.cols < 1)
        throw FormatError("write_array: empty array rejected: " + path);
    if (m.data.size() != static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols))
        throw FormatError("write_array: data size does not match header: " + path);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open for writing: " + path);
    f << kArrayMagic << m.rows << ' ' << m.cols << '\n';
    std::vector<double> payload = m.data;
    to_disk_order(payload);
    f.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (!f) throw FormatError("write failed: " + path);
}

Array2D read_array(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open: " + path);
    char magic[6];
    f.read(magic, 6);
    if (!f || std::memcmp(magic, kArrayMagic, 6) != 0)
        throw FormatError("bad array magic: " + path);
    int rows = 0, cols = 0;
    f >> rows >> cols;
    if (!f || rows < 1 || cols < 1) throw FormatError("bad array header: " + path);
    if (f.get() != '\n') throw FormatError("bad array header terminator: " + path);
    Array2D m = make_array(rows, cols);
    f.read(reinterpret_cast<char*>(m.data.data()),
           static_cast<std::streamsize>(m.data.size() * sizeof(double)));
    if (!f) throw FormatError("truncated array payload: " + path);
    to_disk_order(m.data);
    return m;
}

void write_pgm(const std::string& path, const Array2D& m) {
    if (m.rows < 1 || m.cols < 1) throw FormatError("write_pgm: empty array: " + path);
    const double vmax = *std::max_element(m.data.begin(), m.data.end());
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path);
    f << "P2\n" << m.cols << ' ' << m.rows << "\n255\n";
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            int px = 0;
            if (vmax > 0.0) {
                px = static_cast<int>(std::lround(255.0 * m.at(r, c) / vmax));
                px = std::clamp(px, 0, 255);
            }
            f << px << (c + 1 == m.cols ? '\n' : ' ');
        }
    }
    if (!f) throw FormatError("write failed: " + path);
}

void write_csv_pairs(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path);
    for (const auto& [a, b] : rows) f << fmt17(a) << ',' << fmt17(b) << '\n';
    if (!f) throw FormatError("write failed: " + path);
}

std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open: " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw FormatError("bad csv line in " + path);
        try {
            rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw FormatError("bad csv value in " + path);
        }
    }
    return rows;
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("config line " + std::to_string(lineno) + ": missing '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw FormatError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return parse_text(ss.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void KeyValueConfig::write_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path);
    for (const auto& [k, v] : values_) f << k << '=' << v << '\n';
    if (!f) throw FormatError("write failed: " + path);
}

void KeyValueConfig::set(const std::string& key, double value) { values_[key] = fmt17(value); }
void KeyValueConfig::set(const std::string& key, int value) {
    values_[key] = std::to_string(value);
}

std::string KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw FormatError("missing config key: " + key);
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    try {
        return std::stod(get(key));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception&) {
        throw FormatError("config key is not a number: " + key);
    }
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
    try {
        return std::stoi(get(key));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception&) {
        throw FormatError("config key is not an integer: " + key);
    }
}

int KeyValueConfig::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw FormatError("config key is not a boolean: " + key);
}

}  // namespace occtomo
