// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <new>
#include <utility>

#include <fftw3.h>

namespace edgediff::detail {

namespace {

// FFTW's planner is not thread-safe; every plan creation and destruction
// goes through this lock.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

template<class Plan>
const Plan& cached_plan(int width, int height)
{
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<Plan>> cache;
    std::lock_guard lock(cache_mutex);
    auto& slot = cache[{width, height}];
    if (!slot)
        slot = std::make_unique<Plan>(width, height);
    return *slot;
}

// Even samples ascending, then odd samples descending.
std::vector<int> makhoul_permutation(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        p[i] = i < (n + 1) / 2 ? 2 * i : 2 * (n - 1 - i) + 1;
    return p;
}

std::vector<std::complex<double>> quarter_twiddles(int n)
{
    std::vector<std::complex<double>> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        t[k] = std::polar(1.0, -std::numbers::pi * k / (2.0 * n));
    return t;
}

struct DctScratch {
    std::size_t real_size = 0;
    std::size_t spec_size = 0;
    RealBuffer real;
    ComplexBuffer spec;
};

DctScratch& dct_scratch(std::size_t real_size, std::size_t spec_size);

}  // namespace

void FftwFree::operator()(void* p) const noexcept
{
    fftw_free(p);
}

RealBuffer make_real_buffer(std::size_t n)
{
    auto* p = fftw_alloc_real(n);
    if (!p)
        throw std::bad_alloc();
    return RealBuffer(p);
}

ComplexBuffer make_complex_buffer(std::size_t n)
{
    auto* p = fftw_alloc_complex(n);
    if (!p)
        throw std::bad_alloc();
    return ComplexBuffer(reinterpret_cast<std::complex<double>*>(p));
}

namespace {

DctScratch& dct_scratch(std::size_t real_size, std::size_t spec_size)
{
    thread_local DctScratch s;
    if (s.real_size < real_size) {
        s.real = make_real_buffer(real_size);
        s.real_size = real_size;
    }
    if (s.spec_size < spec_size) {
        s.spec = make_complex_buffer(spec_size);
        s.spec_size = spec_size;
    }
    return s;
}

}  // namespace

DctPlan::DctPlan(int width, int height)
    : width_(width),
      height_(height),
      norm_(1.0 / (4.0 * width * height)),
      fft_(&RealFftPlan::get(width, height)),
      perm_w_(makhoul_permutation(width)),
      perm_h_(makhoul_permutation(height)),
      twiddle_w_(quarter_twiddles(width)),
      twiddle_h_(quarter_twiddles(height))
{
    const std::size_t n = static_cast<std::size_t>(width) * height;
    auto a = make_real_buffer(n);
    auto b = make_real_buffer(n);
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_r2r_2d(height, width, a.get(), b.get(), FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
    inverse_ = fftw_plan_r2r_2d(height, width, a.get(), b.get(), FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
}

DctPlan::~DctPlan()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_));
}

const DctPlan& DctPlan::get(int width, int height)
{
    return cached_plan<DctPlan>(width, height);
}

// With v the reordered input and V = FFT(v):
// X(k1, k2) = 2 Re[t1(k1) (t2(k2) V(k1, k2) + conj(t2(k2)) V(k1, -k2))].
void DctPlan::forward(const double* in, double* out) const
{
    const int w = width_;
    const int h = height_;
    const int hw = w / 2 + 1;
    DctScratch& s = dct_scratch(static_cast<std::size_t>(w) * h, static_cast<std::size_t>(h) * hw);

    for (int r = 0; r < h; ++r) {
        const double* src = in + static_cast<std::size_t>(perm_h_[r]) * w;
        double* dst = s.real.get() + static_cast<std::size_t>(r) * w;
        for (int c = 0; c < w; ++c)
            dst[c] = src[perm_w_[c]];
    }
    fft_->forward(s.real.get(), s.spec.get());

    for (int k1 = 0; k1 < h; ++k1) {
        const std::complex<double>* row = s.spec.get() + static_cast<std::size_t>(k1) * hw;
        const std::complex<double>* mirror = s.spec.get() + static_cast<std::size_t>((h - k1) % h) * hw;
        // Full-spectrum lookup through Hermitian symmetry.
        auto spectrum = [&](int k2) { return k2 < hw ? row[k2] : std::conj(mirror[w - k2]); };
        const std::complex<double> t1 = twiddle_h_[k1];
        double* dst = out + static_cast<std::size_t>(k1) * w;
        dst[0] = 4.0 * std::real(t1 * row[0]);
        for (int k2 = 1; k2 < w; ++k2) {
            const std::complex<double> t2 = twiddle_w_[k2];
            dst[k2] = 2.0 * std::real(t1 * (t2 * spectrum(k2) + std::conj(t2) * spectrum(w - k2)));
        }
    }
}

// Z(k1, k2) = conj(t1 t2) [(X(k1,k2) - X(-k1,-k2)) - i (X(-k1,k2) + X(k1,-k2))]
// with X(N, .) = X(., N) = 0; the inverse real FFT of Z is the reordered output.
void DctPlan::inverse(const double* in, double* out) const
{
    const int w = width_;
    const int h = height_;
    const int hw = w / 2 + 1;
    DctScratch& s = dct_scratch(static_cast<std::size_t>(w) * h, static_cast<std::size_t>(h) * hw);

    auto x = [&](int r, int c) {
        return (r == h || c == w) ? 0.0 : in[static_cast<std::size_t>(r) * w + c];
    };
    for (int k1 = 0; k1 < h; ++k1) {
        const int m1 = k1 == 0 ? h : h - k1;
        std::complex<double>* dst = s.spec.get() + static_cast<std::size_t>(k1) * hw;
        const std::complex<double> t1 = std::conj(twiddle_h_[k1]);
        for (int k2 = 0; k2 < hw; ++k2) {
            const int m2 = k2 == 0 ? w : w - k2;
            const std::complex<double> z(x(k1, k2) - x(m1, m2), -(x(m1, k2) + x(k1, m2)));
            dst[k2] = t1 * std::conj(twiddle_w_[k2]) * z;
        }
    }
    fft_->inverse(s.spec.get(), s.real.get());

    for (int r = 0; r < h; ++r) {
        const double* src = s.real.get() + static_cast<std::size_t>(r) * w;
        double* dst = out + static_cast<std::size_t>(perm_h_[r]) * w;
        for (int c = 0; c < w; ++c)
            dst[perm_w_[c]] = src[c];
    }
}

void DctPlan::forward_reference(const double* in, double* out) const
{
    fftw_execute_r2r(static_cast<fftw_plan>(forward_), const_cast<double*>(in), out);
}

void DctPlan::inverse_reference(const double* in, double* out) const
{
    fftw_execute_r2r(static_cast<fftw_plan>(inverse_), const_cast<double*>(in), out);
}

RealFftPlan::RealFftPlan(int width, int height)
    : width_(width), height_(height), norm_(1.0 / (static_cast<double>(width) * height))
{
    const std::size_t n = static_cast<std::size_t>(width) * height;
    const std::size_t nc = static_cast<std::size_t>(height) * (width / 2 + 1);
    auto a = make_real_buffer(n);
    auto b = make_complex_buffer(nc);
    auto* spec = reinterpret_cast<fftw_complex*>(b.get());
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_2d(height, width, a.get(), spec, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_2d(height, width, spec, a.get(), FFTW_ESTIMATE);
}

RealFftPlan::~RealFftPlan()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_));
}

const RealFftPlan& RealFftPlan::get(int width, int height)
{
    return cached_plan<RealFftPlan>(width, height);
}

void RealFftPlan::forward(const double* in, std::complex<double>* out) const
{
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void RealFftPlan::inverse(std::complex<double>* in, double* out) const
{
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_), reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace edgediff::detail
