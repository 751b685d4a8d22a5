#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"

namespace aperture_forge {

// Text interchange:
//   # aperture-forge sweep v1
//   # lattice nx=<int> ny=<int> dx=<m> dy=<m> z=<m>
//   # grid f_start=<Hz> f_stop=<Hz> df=<Hz>
//   position_index,x,y,z,f_Hz,re,im
// followed by one row per (active position, tone). Inactive positions have no rows.
inline void write_sweep_csv(std::ostream& os, const SweepData& sw) {
    sw.validate();
    char buf[512];
    const auto& L = sw.lattice;
    const auto& g = sw.grid;
    os << "# aperture-forge sweep v1\n";
    std::snprintf(buf, sizeof buf, "# lattice nx=%lld ny=%lld dx=%.17g dy=%.17g z=%.17g\n", static_cast<long long>(L.nx),
                  static_cast<long long>(L.ny), L.dx, L.dy, L.z);
    os << buf;
    std::snprintf(buf, sizeof buf, "# grid f_start=%.17g f_stop=%.17g df=%.17g\n", g.f_start, g.f_stop, g.df);
    os << buf;
    os << "position_index,x,y,z,f_Hz,re,im\n";
    const auto idx = L.active_indices();
    const Eigen::Index S = g.size();
    for (size_t i = 0; i < idx.size(); ++i) {
        const Eigen::Index p = idx[i];
        for (Eigen::Index s = 0; s < S; ++s) {
            const cplx v = sw.s21(static_cast<Eigen::Index>(i), s);
            std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", static_cast<long long>(p),
                          L.x(p % L.nx), L.y(p / L.nx), L.z, g[s], v.real(), v.imag());
            os << buf;
        }
    }
}

namespace detail {

inline std::map<std::string, std::string> header_fields(const std::string& line, const std::string& tag) {
    std::istringstream is(line);
    std::string hash, name;
    is >> hash >> name;
    if (hash != "#" || name != tag) throw std::invalid_argument("sweep header: expected '# " + tag + "'");
    std::map<std::string, std::string> kv;
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("sweep header: malformed field '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

inline double field(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("sweep header: missing field '" + key + "'");
    size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("sweep header: bad number for '" + key + "'");
    return v;
}

}  // namespace detail

inline SweepData read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "# aperture-forge sweep v1") throw std::invalid_argument("not a sweep file");
    if (!std::getline(is, line)) throw std::invalid_argument("sweep file truncated");
    const auto lk = detail::header_fields(line, "lattice");
    if (!std::getline(is, line)) throw std::invalid_argument("sweep file truncated");
    const auto gk = detail::header_fields(line, "grid");
    SamplingLattice L{static_cast<Eigen::Index>(detail::field(lk, "nx")), static_cast<Eigen::Index>(detail::field(lk, "ny")),
                      detail::field(lk, "dx"), detail::field(lk, "dy"), detail::field(lk, "z"), {}};
    FrequencyGrid g{detail::field(gk, "f_start"), detail::field(gk, "f_stop"), detail::field(gk, "df")};
    const Eigen::Index S = g.size();
    if (!std::getline(is, line) || line != "position_index,x,y,z,f_Hz,re,im") throw std::invalid_argument("sweep file: bad column header");

    std::map<Eigen::Index, std::vector<cplx>> rows;
    std::map<Eigen::Index, std::vector<bool>> seen;
    size_t lineno = 4;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        double v[7];
        std::istringstream ls(line);
        std::string cell;
        int c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= 7) break;
            size_t used = 0;
            try {
                v[c] = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cell.size()) throw std::invalid_argument("sweep file: bad number on line " + std::to_string(lineno));
            ++c;
        }
        if (c != 7 || ls.rdbuf()->in_avail() > 0) throw std::invalid_argument("sweep file: expected 7 columns on line " + std::to_string(lineno));
        const auto p = static_cast<Eigen::Index>(v[0]);
        if (static_cast<double>(p) != v[0] || p < 0 || p >= L.total())
            throw std::invalid_argument("sweep file: bad position index on line " + std::to_string(lineno));
        const double tol = 1e-9 * std::max(L.dx, L.dy);
        if (std::abs(v[1] - L.x(p % L.nx)) > tol || std::abs(v[2] - L.y(p / L.nx)) > tol || std::abs(v[3] - L.z) > tol)
            throw std::invalid_argument("sweep file: position does not match lattice on line " + std::to_string(lineno));
        const double sf = (v[4] - g.f_start) / g.df;
        const auto s = static_cast<Eigen::Index>(std::llround(sf));
        if (std::abs(sf - static_cast<double>(s)) > 1e-6 || s < 0 || s >= S)
            throw std::invalid_argument("sweep file: frequency off the grid on line " + std::to_string(lineno));
        auto& r = rows[p];
        auto& sn = seen[p];
        if (r.empty()) {
            r.assign(static_cast<size_t>(S), cplx{});
            sn.assign(static_cast<size_t>(S), false);
        }
        if (sn[static_cast<size_t>(s)]) throw std::invalid_argument("sweep file: duplicate entry on line " + std::to_string(lineno));
        sn[static_cast<size_t>(s)] = true;
        r[static_cast<size_t>(s)] = {v[5], v[6]};
    }
    if (rows.empty()) throw std::invalid_argument("sweep file has no data rows");
    L.active.assign(static_cast<size_t>(L.total()), false);
    for (const auto& [p, sn] : seen) {
        for (bool b : sn)
            if (!b) throw std::invalid_argument("sweep file: position " + std::to_string(p) + " is missing tones");
        L.active[static_cast<size_t>(p)] = true;
    }
    if (L.full()) L.active.clear();
    SweepData sw{Eigen::MatrixXcd(static_cast<Eigen::Index>(rows.size()), S), L, g};
    Eigen::Index i = 0;
    for (const auto& [p, r] : rows) {
        for (Eigen::Index s = 0; s < S; ++s) sw.s21(i, s) = r[static_cast<size_t>(s)];
        ++i;
    }
    sw.validate();
    return sw;
}

}  // namespace aperture_forge
