#pragma once

#include <complex>
#include <vector>

namespace fraclab {

// Thin serialized wrapper over FFTW (unnormalized transforms). FFTW's
// planner is not thread-safe, so plan creation and execution go through a
// per-size cached plan behind one mutex; buffers are fftw-allocated to keep
// alignment guarantees.
void fft(std::vector<std::complex<double>>& a, bool inverse);

// linear convolution of real sequences, out[k] = sum_j a[j] b[k-j]
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace fraclab
