// File output: the binary field snapshot format and the diagnostics CSV.
//
// Snapshot layout (little-endian):
//   magic "MHDF" | version u32 = 1 | dim u32 | components u32 | N u32 | L f64
//   then per component, coefficients as interleaved (re, im) f64 in row-major
//   lattice order, full spectrum.  Round-trips bit-exactly.
//
// CSV: UTF-8, comma-separated, one header row naming every DiagnosticsRecord
// field, one record per line, scientific notation with 17 significant digits.

#ifndef SPECMHD_IO_HPP
#define SPECMHD_IO_HPP

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "specmhd/diagnostics.hpp"
#include "specmhd/field.hpp"

namespace specmhd {

namespace detail {

inline void require_little_endian() {
    if constexpr (std::endian::native != std::endian::little)
        throw std::runtime_error("snapshot: only little-endian hosts are supported");
}

template <class T>
void write_raw(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
void read_raw(std::ifstream& in, T& value, const std::string& what) {
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(T)))
        throw std::runtime_error("snapshot: truncated file while reading " + what);
}

}  // namespace detail

inline constexpr char snapshot_magic[4] = {'M', 'H', 'D', 'F'};
inline constexpr std::uint32_t snapshot_version = 1;

inline void write_snapshot(const SpectralField& f, const std::string& path) {
    detail::require_little_endian();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out.write(snapshot_magic, 4);
    detail::write_raw(out, snapshot_version);
    detail::write_raw(out, static_cast<std::uint32_t>(f.domain().dim));
    detail::write_raw(out, static_cast<std::uint32_t>(f.components()));
    detail::write_raw(out, static_cast<std::uint32_t>(f.domain().points_per_axis));
    detail::write_raw(out, f.domain().scale);
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        out.write(reinterpret_cast<const char*>(c.data()),
                  static_cast<std::streamsize>(c.size() * sizeof(Complex)));
    }
    if (!out) throw std::runtime_error("write_snapshot: write failure on " + path);
}

inline SpectralField read_snapshot(const std::string& path) {
    detail::require_little_endian();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);

    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, snapshot_magic, 4) != 0)
        throw std::runtime_error("read_snapshot: bad magic in " + path);
    std::uint32_t version, dim, components, n;
    detail::read_raw(in, version, "version");
    if (version != snapshot_version)
        throw std::runtime_error("read_snapshot: unsupported version " + std::to_string(version));
    detail::read_raw(in, dim, "dim");
    detail::read_raw(in, components, "components");
    detail::read_raw(in, n, "points_per_axis");
    double scale;
    detail::read_raw(in, scale, "scale");

    DomainSpec domain;
    domain.dim = static_cast<int>(dim);
    domain.scale = scale;
    domain.points_per_axis = static_cast<int>(n);
    domain.validate();

    SpectralField f(domain, static_cast<int>(components));
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        const std::streamsize bytes = static_cast<std::streamsize>(c.size() * sizeof(Complex));
        in.read(reinterpret_cast<char*>(c.data()), bytes);
        if (in.gcount() != bytes)
            throw std::runtime_error("read_snapshot: truncated file " + path + " (component " +
                                     std::to_string(m) + ": got " + std::to_string(in.gcount()) +
                                     " of " + std::to_string(bytes) + " bytes)");
    }
    return f;
}

inline void write_csv(const std::vector<DiagnosticsRecord>& trajectory, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "t,h3_v,h3_c,l2_energy,dissipation_rate,forcing_work_rate,h3_f,h3_h,h3_G,"
           "bernstein_ratio_U,bernstein_ratio_B,lemma33_ratio_f,lemma33_ratio_G,bootstrap_ok\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof(buf), "%.16e", v);
        out << buf << sep;
    };
    for (const auto& r : trajectory) {
        put(r.t, ',');
        put(r.h3_v, ',');
        put(r.h3_c, ',');
        put(r.l2_energy, ',');
        put(r.dissipation_rate, ',');
        put(r.forcing_work_rate, ',');
        put(r.h3_f, ',');
        put(r.h3_h, ',');
        put(r.h3_G, ',');
        put(r.bernstein_ratio_U, ',');
        put(r.bernstein_ratio_B, ',');
        put(r.lemma33_ratio_f, ',');
        put(r.lemma33_ratio_G, ',');
        out << (r.bootstrap_ok ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failure on " + path);
}

inline std::vector<DiagnosticsRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
    if (line.rfind("t,h3_v,", 0) != 0)
        throw std::runtime_error("read_csv: unexpected header in " + path);

    std::vector<DiagnosticsRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> values;
        const char* p = line.c_str();
        char* end = nullptr;
        while (true) {
            const double v = std::strtod(p, &end);
            if (end == p)
                throw std::runtime_error("read_csv: bad number at " + path + ":" +
                                         std::to_string(lineno));
            values.push_back(v);
            if (*end == ',') {
                p = end + 1;
            } else {
                break;
            }
        }
        if (values.size() != 14)
            throw std::runtime_error("read_csv: expected 14 columns at " + path + ":" +
                                     std::to_string(lineno));
        DiagnosticsRecord r;
        r.t = values[0];
        r.h3_v = values[1];
        r.h3_c = values[2];
        r.l2_energy = values[3];
        r.dissipation_rate = values[4];
        r.forcing_work_rate = values[5];
        r.h3_f = values[6];
        r.h3_h = values[7];
        r.h3_G = values[8];
        r.bernstein_ratio_U = values[9];
        r.bernstein_ratio_B = values[10];
        r.lemma33_ratio_f = values[11];
        r.lemma33_ratio_G = values[12];
        r.bootstrap_ok = values[13] != 0.0;
        records.push_back(r);
    }
    return records;
}

}  // namespace specmhd

#endif
