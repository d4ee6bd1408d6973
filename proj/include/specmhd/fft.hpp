// Forward/inverse transforms between collocation samples and lattice
// coefficients, backed by FFTW3.
//
// Convention: the forward transform carries the 1/N^d factor, so a plain
// Fourier mode e^{i k.x/L} has unit coefficient and Parseval reads
// ||f||_L2^2 = (2 pi L)^d sum_xi |fhat(xi)|^2.
//
// Plans are created with FFTW_ESTIMATE so that coefficient output is a
// deterministic function of the input (required for byte-identical reruns).

#ifndef SPECMHD_FFT_HPP
#define SPECMHD_FFT_HPP

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "specmhd/field.hpp"

namespace specmhd {

namespace detail {

class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    // Executes an out-of-place c2c transform of one component.
    void execute(const DomainSpec& d, int sign, const Complex* in, Complex* out) {
        fftw_plan plan = get(d, sign);
        // new-array execute; plans are created FFTW_UNALIGNED so any buffer works
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

  private:
    fftw_plan get(const DomainSpec& d, int sign) {
        std::scoped_lock lock(mutex_);
        const Key key{d.dim, d.points_per_axis, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<Complex> a(d.grid_size()), b(d.grid_size());
        const int n = d.points_per_axis;
        fftw_plan plan =
            d.dim == 2
                ? fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED)
                : fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fft: plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

}  // namespace detail

// Wraps raw samples, rejecting buffers that do not conform to the domain.
inline PhysicalField physical_from_samples(const DomainSpec& domain, int components,
                                           const std::vector<double>& samples) {
    domain.validate();
    const std::size_t expected = domain.grid_size() * static_cast<std::size_t>(components);
    if (samples.size() != expected)
        throw std::invalid_argument("physical_from_samples: expected " + std::to_string(expected) +
                                    " samples, got " + std::to_string(samples.size()));
    PhysicalField f(domain, components);
    std::copy(samples.begin(), samples.end(), f.raw().begin());
    return f;
}

inline SpectralField forward_transform(const PhysicalField& f) {
    const DomainSpec& d = f.domain();
    SpectralField out(d, f.components());
    const double norm = 1.0 / static_cast<double>(d.grid_size());
    std::vector<Complex> in(d.grid_size());
    for (int m = 0; m < f.components(); ++m) {
        auto samples = f.component(m);
        for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex{samples[i], 0.0};
        detail::PlanCache::instance().execute(d, FFTW_FORWARD, in.data(),
                                              out.component(m).data());
        for (auto& c : out.component(m)) c *= norm;
    }
    zero_nyquist(out);
    enforce_hermitian(out);
    return out;
}

inline PhysicalField inverse_transform(const SpectralField& f) {
    const DomainSpec& d = f.domain();
    const double asym = hermitian_asymmetry(f);
    const double scale = f.max_abs();
    if (asym > 1e-8 * scale && asym > 1e-300)
        throw std::invalid_argument("inverse_transform: non-Hermitian input, max asymmetry " +
                                    std::to_string(asym) + " against coefficient scale " +
                                    std::to_string(scale));
    PhysicalField out(d, f.components());
    std::vector<Complex> buf(d.grid_size());
    for (int m = 0; m < f.components(); ++m) {
        detail::PlanCache::instance().execute(d, FFTW_BACKWARD, f.component(m).data(), buf.data());
        auto samples = out.component(m);
        for (std::size_t i = 0; i < buf.size(); ++i) samples[i] = buf[i].real();
    }
    return out;
}

}  // namespace specmhd

#endif
