// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

// Thin RAII layer over FFTW. Plans are created once per size with
// FFTW_ESTIMATE (deterministic plan choice across runs) and executed through
// the new-array interface, which is safe to call concurrently.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace edgediff::detail {

struct FftwFree {
    void operator()(void* p) const noexcept;
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<std::complex<double>[], FftwFree>;

RealBuffer make_real_buffer(std::size_t n);
ComplexBuffer make_complex_buffer(std::size_t n);

class RealFftPlan;

/// 2-D DCT-II (forward) and DCT-III (inverse) on a height x width row-major
/// array, scaled like FFTW's REDFT10 / REDFT01.
/// normalization() * inverse(forward(x)) == x.
///
/// forward/inverse reorder the input and run one real FFT of the same size
/// (Makhoul's construction), several times faster than FFTW's r2r kinds
/// under FFTW_ESTIMATE. The *_reference members run FFTW's REDFT10/REDFT01
/// directly.
class DctPlan {
public:
    static const DctPlan& get(int width, int height);

    void forward(const double* in, double* out) const;
    void inverse(const double* in, double* out) const;
    void forward_reference(const double* in, double* out) const;
    void inverse_reference(const double* in, double* out) const;
    double normalization() const noexcept { return norm_; }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    DctPlan(int width, int height);
    ~DctPlan();
    DctPlan(const DctPlan&) = delete;
    DctPlan& operator=(const DctPlan&) = delete;

private:
    int width_;
    int height_;
    double norm_;
    const RealFftPlan* fft_;
    std::vector<int> perm_w_;
    std::vector<int> perm_h_;
    std::vector<std::complex<double>> twiddle_w_;  // exp(-i pi k / (2 W))
    std::vector<std::complex<double>> twiddle_h_;
    void* forward_ = nullptr;
    void* inverse_ = nullptr;
};

/// 2-D real-to-complex transform pair on a height x width array; the
/// spectrum holds height x (width/2 + 1) bins.
class RealFftPlan {
public:
    static const RealFftPlan& get(int width, int height);

    void forward(const double* in, std::complex<double>* out) const;
    /// Destroys `in`.
    void inverse(std::complex<double>* in, double* out) const;
    double normalization() const noexcept { return norm_; }
    int spectrum_width() const noexcept { return width_ / 2 + 1; }

    RealFftPlan(int width, int height);
    ~RealFftPlan();
    RealFftPlan(const RealFftPlan&) = delete;
    RealFftPlan& operator=(const RealFftPlan&) = delete;

private:
    int width_;
    int height_;
    double norm_;
    void* forward_ = nullptr;
    void* inverse_ = nullptr;
};

}  // namespace edgediff::detail
