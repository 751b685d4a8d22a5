#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aperture_forge::cli {

// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Rows as lines, values separated by commas, %.17g (round-trips every double).
inline std::string csv_matrix(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            if (k) out += ',';
            out += format_double(m(i, k));
        }
        out += '\n';
    }
    return out;
}

inline Eigen::MatrixXd read_csv_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> r;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) r.push_back(std::strtod(cell.c_str(), nullptr));
        if (!rows.empty() && r.size() != rows.front().size()) throw std::invalid_argument("ragged CSV matrix");
        rows.push_back(std::move(r));
    }
    if (rows.empty()) return {};
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t k = 0; k < rows[i].size(); ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    return m;
}

// Header row plus named columns of equal length.
inline std::string csv_columns(const std::vector<std::string>& names, const std::vector<Eigen::VectorXd>& cols) {
    if (names.size() != cols.size() || cols.empty()) throw std::invalid_argument("one name per column required");
    for (const auto& c : cols)
        if (c.size() != cols.front().size()) throw std::invalid_argument("columns differ in length");
    std::string out;
    for (size_t k = 0; k < names.size(); ++k) out += (k ? "," : "") + names[k];
    out += '\n';
    for (Eigen::Index i = 0; i < cols.front().size(); ++i) {
        for (size_t k = 0; k < cols.size(); ++k) {
            if (k) out += ',';
            out += format_double(cols[k](i));
        }
        out += '\n';
    }
    return out;
}

// How render_pgm reads its input: already in dB, a power (10 log10) or a field magnitude (20 log10).
enum class ImageScale { db, power, magnitude };

// ASCII P2 graymap, 8 bit. [peak - dynamic_range, peak] dB maps linearly onto [0, 255]; values below
// the floor (including zero power) clip to 0. Matrix row i is image line i.
inline std::string render_pgm(const Eigen::MatrixXd& grid, double dynamic_range_db, ImageScale scale = ImageScale::db) {
    if (grid.size() == 0) throw std::invalid_argument("cannot render an empty grid");
    if (!grid.allFinite()) throw std::invalid_argument("cannot render non-finite data");
    if (!(dynamic_range_db > 0.0) || !std::isfinite(dynamic_range_db)) throw std::invalid_argument("dynamic range must be positive");
    Eigen::MatrixXd db(grid.rows(), grid.cols());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double v = grid(i);
        switch (scale) {
            case ImageScale::db: db(i) = v; break;
            case ImageScale::power: db(i) = 10.0 * std::log10(std::abs(v)); break;
            case ImageScale::magnitude: db(i) = 20.0 * std::log10(std::abs(v)); break;
        }
    }
    const double peak = db.maxCoeff();
    std::string out = "P2\n# dynamic range " + format_double(dynamic_range_db) + " dB below peak\n";
    out += std::to_string(grid.cols()) + " " + std::to_string(grid.rows()) + "\n255\n";
    if (!std::isfinite(peak)) {
        // all-zero linear input: nothing above the floor
        for (Eigen::Index i = 0; i < grid.rows(); ++i) {
            for (Eigen::Index k = 0; k < grid.cols(); ++k) out += k ? " 0" : "0";
            out += '\n';
        }
        return out;
    }
    const double floor = peak - dynamic_range_db;
    for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        for (Eigen::Index k = 0; k < grid.cols(); ++k) {
            const double t = (db(i, k) - floor) / dynamic_range_db;
            const long px = std::isfinite(t) ? std::clamp(std::lround(255.0 * t), 0L, 255L) : 0L;
            if (k) out += ' ';
            out += std::to_string(px);
        }
        out += '\n';
    }
    return out;
}

inline Eigen::MatrixXi read_pgm(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::vector<long> vals;
    bool magic = false;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::getline(in, tok);
            continue;
        }
        if (!magic) {
            if (tok != "P2") throw std::invalid_argument("not an ASCII graymap");
            magic = true;
            continue;
        }
        vals.push_back(std::stol(tok));
    }
    if (vals.size() < 3) throw std::invalid_argument("truncated graymap");
    const auto w = vals[0], h = vals[1];
    if (static_cast<long>(vals.size()) != 3 + w * h) throw std::invalid_argument("graymap size mismatch");
    Eigen::MatrixXi img(h, w);
    for (long i = 0; i < h; ++i)
        for (long k = 0; k < w; ++k) img(i, k) = static_cast<int>(vals[static_cast<size_t>(3 + i * w + k)]);
    return img;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Writes the graymap to `path` and the raw values to the same path with a .csv extension.
inline void render_image(const Eigen::MatrixXd& grid, const std::filesystem::path& path, double dynamic_range_db,
                         ImageScale scale = ImageScale::db) {
    const std::string pgm = render_pgm(grid, dynamic_range_db, scale);
    write_file(path, pgm);
    auto csv = path;
    csv.replace_extension(".csv");
    write_file(csv, csv_matrix(grid));
}

struct Artifact {
    std::string path;  // relative to the output directory
    std::string kind;
    std::size_t bytes = 0;
    std::uint64_t checksum = 0;
};

// Writes artifacts under one directory and keeps the manifest.
class ArtifactWriter {
public:
    ArtifactWriter(std::filesystem::path dir, bool images, bool csv) : dir_(std::move(dir)), images_(images), csv_(csv) {}

    const std::filesystem::path& dir() const { return dir_; }
    const std::vector<Artifact>& manifest() const { return manifest_; }

    void text(const std::string& name, const std::string& content, const std::string& kind) {
        write_file(dir_ / name, content);
        manifest_.push_back({name, kind, content.size(), fnv1a64(content)});
    }

    void csv(const std::string& name, const std::string& content) {
        if (csv_) text(name, content, "csv");
    }

    // name without extension: name.pgm plus companion name.csv
    void image(const std::string& name, const Eigen::MatrixXd& grid, double dynamic_range_db, ImageScale scale) {
        if (images_) text(name + ".pgm", render_pgm(grid, dynamic_range_db, scale), "pgm");
        if (csv_) text(name + ".csv", csv_matrix(grid), "csv");
    }

private:
    std::filesystem::path dir_;
    bool images_, csv_;
    std::vector<Artifact> manifest_;
};

}  // namespace aperture_forge::cli
