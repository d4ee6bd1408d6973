// Torus geometry and the truncated frequency lattice.
//
// The domain is the periodic box [0, 2*pi*L)^dim sampled on N uniform points
// per axis.  Frequencies live on the lattice xi = k/L with integer k,
// |k_i| <= N/2, stored in standard FFT order (index i maps to k = i for
// i <= N/2-1 and k = i - N otherwise).  Nyquist rows (|k_i| = N/2) carry no
// Hermitian partner and are kept identically zero.

#ifndef SPECMHD_LATTICE_HPP
#define SPECMHD_LATTICE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specmhd {

inline constexpr double pi = std::numbers::pi;

struct DomainSpec {
    int dim = 2;                      // 2 or 3
    double scale = 20.0;              // L; torus side length is 2*pi*L
    int points_per_axis = 256;        // N, even, >= 16
    double dealias_fraction = 2.0 / 3.0;

    std::size_t grid_size() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points_per_axis);
        return n;
    }

    double dx() const { return 2.0 * pi * scale / points_per_axis; }

    // Physical volume of the torus, (2*pi*L)^dim.
    double volume() const { return std::pow(2.0 * pi * scale, dim); }

    // Largest |k_i| retained by the dealiasing truncation.  Nyquist is always
    // excluded; the extra decrement keeps alias images of edge-mode pairs out
    // of the retained band when N is divisible by 3.
    int dealias_cut() const {
        int cut = static_cast<int>(std::floor(dealias_fraction * (points_per_axis / 2)));
        if (3 * cut >= points_per_axis) --cut;
        if (cut > points_per_axis / 2 - 1) cut = points_per_axis / 2 - 1;
        return cut;
    }

    // Highest |xi| fully covered by the dealiased band (per-axis bound).
    double dealias_xi_max() const { return dealias_cut() / scale; }

    void validate() const {
        if (dim != 2 && dim != 3)
            throw std::invalid_argument("DomainSpec: dim must be 2 or 3, got " + std::to_string(dim));
        if (scale <= 0.0)
            throw std::invalid_argument("DomainSpec: scale must be positive, got " + std::to_string(scale));
        if (points_per_axis < 16 || points_per_axis % 2 != 0)
            throw std::invalid_argument("DomainSpec: points_per_axis must be even and >= 16, got " +
                                        std::to_string(points_per_axis));
        if (dealias_fraction <= 0.0 || dealias_fraction > 1.0)
            throw std::invalid_argument("DomainSpec: dealias_fraction must lie in (0,1], got " +
                                        std::to_string(dealias_fraction));
    }

    bool operator==(const DomainSpec&) const = default;
};

// Signed wavenumber of FFT-ordered index i in [0, N).
inline int wavenumber(int index, int n) { return index <= n / 2 - 1 ? index : index - n; }

// FFT-ordered index of signed wavenumber k in [-N/2, N/2).
inline int mode_index(int k, int n) { return k >= 0 ? k : k + n; }

// Integer wavevector of a flat lattice index (row-major, axis 0 slowest).
inline std::array<int, 3> wavevector(const DomainSpec& d, std::size_t flat) {
    const int n = d.points_per_axis;
    std::array<int, 3> k{0, 0, 0};
    if (d.dim == 2) {
        k[1] = wavenumber(static_cast<int>(flat % n), n);
        k[0] = wavenumber(static_cast<int>(flat / n), n);
    } else {
        k[2] = wavenumber(static_cast<int>(flat % n), n);
        flat /= n;
        k[1] = wavenumber(static_cast<int>(flat % n), n);
        k[0] = wavenumber(static_cast<int>(flat / n), n);
    }
    return k;
}

inline std::size_t flat_index(const DomainSpec& d, const std::array<int, 3>& k) {
    const int n = d.points_per_axis;
    if (d.dim == 2)
        return static_cast<std::size_t>(mode_index(k[0], n)) * n + mode_index(k[1], n);
    return (static_cast<std::size_t>(mode_index(k[0], n)) * n + mode_index(k[1], n)) * n +
           mode_index(k[2], n);
}

// Flat index of the Hermitian partner -k.
inline std::size_t conjugate_index(const DomainSpec& d, std::size_t flat) {
    const int n = d.points_per_axis;
    if (d.dim == 2) {
        const int i0 = static_cast<int>(flat / n), i1 = static_cast<int>(flat % n);
        return static_cast<std::size_t>((n - i0) % n) * n + (n - i1) % n;
    }
    const int i2 = static_cast<int>(flat % n);
    const std::size_t rest = flat / n;
    const int i1 = static_cast<int>(rest % n);
    const int i0 = static_cast<int>(rest / n);
    return (static_cast<std::size_t>((n - i0) % n) * n + (n - i1) % n) * n + (n - i2) % n;
}

inline bool is_nyquist(const DomainSpec& d, const std::array<int, 3>& k) {
    for (int a = 0; a < d.dim; ++a)
        if (k[a] == -d.points_per_axis / 2) return true;
    return false;
}

// Visits every lattice mode as fn(flat_index, k) with k the integer
// wavevector.  Loops are data-parallel; nothing here mutates shared state.
template <class Fn>
inline void for_each_mode(const DomainSpec& d, Fn&& fn) {
    const int n = d.points_per_axis;
    if (d.dim == 2) {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            const int k0 = wavenumber(i0, n);
            for (int i1 = 0; i1 < n; ++i1, ++flat) fn(flat, std::array<int, 3>{k0, wavenumber(i1, n), 0});
        }
    } else {
        std::size_t flat = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            const int k0 = wavenumber(i0, n);
            for (int i1 = 0; i1 < n; ++i1) {
                const int k1 = wavenumber(i1, n);
                for (int i2 = 0; i2 < n; ++i2, ++flat)
                    fn(flat, std::array<int, 3>{k0, k1, wavenumber(i2, n)});
            }
        }
    }
}

inline double xi_norm_sq(const DomainSpec& d, const std::array<int, 3>& k) {
    double s = 0.0;
    for (int a = 0; a < d.dim; ++a) s += static_cast<double>(k[a]) * k[a];
    return s / (d.scale * d.scale);
}

// Number of lattice modes whose |xi| falls inside [1-eps, 1+eps].  The paper
// works on the whole space; on the torus surrogate this count measures how
// well the annulus is resolved and is reported alongside every construction.
inline std::size_t annulus_mode_count(const DomainSpec& d, double epsilon) {
    std::size_t count = 0;
    const double lo = (1.0 - epsilon) * (1.0 - epsilon);
    const double hi = (1.0 + epsilon) * (1.0 + epsilon);
    for_each_mode(d, [&](std::size_t, const std::array<int, 3>& k) {
        const double x2 = xi_norm_sq(d, k);
        if (x2 >= lo && x2 <= hi && !is_nyquist(d, k)) ++count;
    });
    return count;
}

}  // namespace specmhd

#endif
