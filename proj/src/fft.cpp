#include "phaseflow/fft.hpp"

#include "phaseflow/errors.hpp"

#include <fftw3.h>

#include <algorithm>

namespace phaseflow {

FftBuffer::FftBuffer(std::size_t n) : n_(n)
{
    if (n == 0)
        fail(ErrorKind::config, "fft size must be positive");
    auto* raw = fftw_alloc_complex(n);
    if (!raw)
        throw std::bad_alloc();
    data_ = reinterpret_cast<cplx*>(raw);
    const int len = static_cast<int>(n);
    fwd_ = fftw_plan_dft_1d(len, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(len, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    std::fill(data_, data_ + n_, cplx(0, 0));
}

FftBuffer::~FftBuffer()
{
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(data_);
}

void FftBuffer::forward()
{
    fftw_execute(static_cast<fftw_plan>(fwd_));
}

void FftBuffer::backward()
{
    fftw_execute(static_cast<fftw_plan>(bwd_));
}

std::size_t good_fft_size(std::size_t n)
{
    for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
        std::size_t r = m;
        for (std::size_t f : {2u, 3u, 5u})
            while (r % f == 0)
                r /= f;
        if (r == 1)
            return m;
    }
}

} // namespace phaseflow
