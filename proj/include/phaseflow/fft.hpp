#pragma once

#include "phaseflow/types.hpp"

#include <cstddef>

namespace phaseflow {

// Owns an FFTW-aligned buffer with forward/backward plans. Planning uses
// FFTW_ESTIMATE so repeated runs produce identical output. Not thread safe.
class FftBuffer {
public:
    explicit FftBuffer(std::size_t n);
    ~FftBuffer();
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;

    std::size_t size() const { return n_; }
    cplx* data() { return data_; }
    const cplx* data() const { return data_; }
    cplx& operator[](std::size_t i) { return data_[i]; }

    // unnormalized: X_k = sum_j x_j exp(-2 pi i jk/n)
    void forward();
    // unnormalized: x_j = sum_k X_k exp(+2 pi i jk/n)
    void backward();

private:
    std::size_t n_;
    cplx* data_;
    void* fwd_;
    void* bwd_;
};

// smallest size >= n with only factors 2, 3, 5
std::size_t good_fft_size(std::size_t n);

} // namespace phaseflow
