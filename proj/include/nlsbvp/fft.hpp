#pragma once

#include <unsupported/Eigen/FFT>

#include "nlsbvp/types.hpp"

namespace nlsbvp {

inline Vec fft_forward(const Vec& in) {
  Eigen::FFT<Real> fft;
  Vec out(in.size());
  fft.fwd(out.data(), in.data(), static_cast<int>(in.size()));
  return out;
}

inline Vec fft_inverse(const Vec& in) {
  Eigen::FFT<Real> fft;
  Vec out(in.size());
  fft.inv(out.data(), in.data(), static_cast<int>(in.size()));
  return out;
}

/// Signed angular frequencies for an n-point DFT with sample spacing dx,
/// in DFT bin order: xi_j = 2 pi j / (n dx) for j < n/2, negative branch after.
inline RVec fft_frequencies(Index n, Real dx) {
  RVec xi(n);
  const Real d = 2.0 * kPi / (Real(n) * dx);
  for (Index j = 0; j < n; ++j) {
    const Index k = (j <= (n - 1) / 2) ? j : j - n;
    xi[j] = d * Real(k);
  }
  return xi;
}

inline Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace nlsbvp
