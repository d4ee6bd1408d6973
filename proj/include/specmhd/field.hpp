// Value-semantic field containers: Fourier coefficients on the truncated
// lattice (SpectralField) and real collocation samples (PhysicalField).

#ifndef SPECMHD_FIELD_HPP
#define SPECMHD_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "specmhd/lattice.hpp"

namespace specmhd {

using Complex = std::complex<double>;

class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(const DomainSpec& domain, int components)
        : domain_(domain),
          components_(components),
          data_(domain.grid_size() * static_cast<std::size_t>(components), Complex{0.0, 0.0}) {
        if (components < 1) throw std::invalid_argument("SpectralField: components must be >= 1");
    }

    const DomainSpec& domain() const { return domain_; }
    int components() const { return components_; }
    std::size_t modes() const { return domain_.grid_size(); }

    Complex& at(int comp, std::size_t flat) { return data_[comp * modes() + flat]; }
    const Complex& at(int comp, std::size_t flat) const { return data_[comp * modes() + flat]; }

    std::span<Complex> component(int comp) { return {data_.data() + comp * modes(), modes()}; }
    std::span<const Complex> component(int comp) const {
        return {data_.data() + comp * modes(), modes()};
    }

    std::span<Complex> raw() { return data_; }
    std::span<const Complex> raw() const { return data_; }

    SpectralField& operator+=(const SpectralField& other) {
        check_compatible(other);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& other) {
        check_compatible(other);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& c : data_) c *= a;
        return *this;
    }

    friend SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
    friend SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

    // y += a*x, the workhorse of the time stepper.
    void axpy(double a, const SpectralField& x) {
        check_compatible(x);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += a * x.data_[i];
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& c : data_) m = std::max(m, std::abs(c));
        return m;
    }

    bool all_finite() const {
        for (const auto& c : data_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        return true;
    }

    // True when every coefficient except the mean mode is exactly zero.
    bool is_constant() const {
        for (int m = 0; m < components_; ++m) {
            auto c = component(m);
            for (std::size_t i = 1; i < c.size(); ++i)
                if (c[i] != Complex{0.0, 0.0}) return false;
        }
        return true;
    }

    void check_compatible(const SpectralField& other) const {
        if (!(domain_ == other.domain_) || components_ != other.components_)
            throw std::invalid_argument("SpectralField: domain/component mismatch");
    }

  private:
    DomainSpec domain_;
    int components_ = 0;
    std::vector<Complex> data_;
};

class PhysicalField {
  public:
    PhysicalField() = default;
    PhysicalField(const DomainSpec& domain, int components)
        : domain_(domain),
          components_(components),
          data_(domain.grid_size() * static_cast<std::size_t>(components), 0.0) {
        if (components < 1) throw std::invalid_argument("PhysicalField: components must be >= 1");
    }

    const DomainSpec& domain() const { return domain_; }
    int components() const { return components_; }
    std::size_t points() const { return domain_.grid_size(); }

    double& at(int comp, std::size_t p) { return data_[comp * points() + p]; }
    const double& at(int comp, std::size_t p) const { return data_[comp * points() + p]; }

    std::span<double> component(int comp) { return {data_.data() + comp * points(), points()}; }
    std::span<const double> component(int comp) const {
        return {data_.data() + comp * points(), points()};
    }

    std::span<double> raw() { return data_; }
    std::span<const double> raw() const { return data_; }

  private:
    DomainSpec domain_;
    int components_ = 0;
    std::vector<double> data_;
};

// Largest |coeff(xi) - conj(coeff(-xi))| over all modes and components.
inline double hermitian_asymmetry(const SpectralField& f) {
    double worst = 0.0;
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        for_each_mode(f.domain(), [&](std::size_t flat, const std::array<int, 3>&) {
            const std::size_t partner = conjugate_index(f.domain(), flat);
            if (partner < flat) return;
            worst = std::max(worst, std::abs(c[flat] - std::conj(c[partner])));
        });
    }
    return worst;
}

// Projects onto the Hermitian-symmetric part; self-paired modes become real.
inline void enforce_hermitian(SpectralField& f) {
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        for_each_mode(f.domain(), [&](std::size_t flat, const std::array<int, 3>&) {
            const std::size_t partner = conjugate_index(f.domain(), flat);
            if (partner < flat) return;
            if (partner == flat) {
                c[flat] = Complex{c[flat].real(), 0.0};
            } else {
                const Complex avg = 0.5 * (c[flat] + std::conj(c[partner]));
                c[flat] = avg;
                c[partner] = std::conj(avg);
            }
        });
    }
}

inline void zero_nyquist(SpectralField& f) {
    for (int m = 0; m < f.components(); ++m) {
        auto c = f.component(m);
        for_each_mode(f.domain(), [&](std::size_t flat, const std::array<int, 3>& k) {
            if (is_nyquist(f.domain(), k)) c[flat] = Complex{0.0, 0.0};
        });
    }
}

// max_k |xi . coeff(xi)|, zero for solenoidal fields.
inline double divergence_max(const SpectralField& f) {
    if (f.components() != f.domain().dim)
        throw std::invalid_argument("divergence_max: needs a full vector field");
    const double inv_l = 1.0 / f.domain().scale;
    double worst = 0.0;
    for_each_mode(f.domain(), [&](std::size_t flat, const std::array<int, 3>& k) {
        Complex dot{0.0, 0.0};
        for (int a = 0; a < f.domain().dim; ++a) dot += (k[a] * inv_l) * f.at(a, flat);
        worst = std::max(worst, std::abs(dot));
    });
    return worst;
}

}  // namespace specmhd

#endif
