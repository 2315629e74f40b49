#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "photocool/constants.hpp"
#include "photocool/fft.hpp"

namespace photocool {

// Two-sided spectral density over signed angular frequency, ascending; the
// variance convention is var = integral S domega / (2 pi), i.e. sum S / (N dt).
struct Spectrum {
  std::vector<double> omega;  // [rad/s]
  std::vector<double> S;      // [unit^2 s]
};

enum class PsdWindow { rectangular, hann };

// Averaged periodogram (segmented, 50% overlap). The rectangular window keeps
// the per-segment Parseval identity exact; Hann trades that for less leakage.
inline Spectrum estimate_psd(const std::vector<double>& x, double dt,
                             std::size_t segment_length,
                             PsdWindow window = PsdWindow::rectangular) {
  const std::size_t n = segment_length;
  if (!is_power_of_two(n)) throw std::invalid_argument("estimate_psd: segment length must be a power of two");
  if (n > x.size()) throw std::invalid_argument("estimate_psd: segment longer than trajectory");
  if (!(dt > 0.0)) throw std::invalid_argument("estimate_psd: dt must be positive");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());

  std::vector<double> w(n, 1.0);
  if (window == PsdWindow::hann) {
    for (std::size_t i = 0; i < n; ++i)
      w[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(n));
  }
  double w2 = 0.0;
  for (double v : w) w2 += v * v;

  std::vector<double> acc(n, 0.0);
  std::vector<std::complex<double>> buf(n);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + n <= x.size(); start += n / 2) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = (x[start + i] - mean) * w[i];
    fft(buf);
    for (std::size_t i = 0; i < n; ++i) acc[i] += std::norm(buf[i]);
    ++segments;
  }

  const double scale = dt / (w2 * static_cast<double>(segments));
  Spectrum out;
  out.omega.resize(n);
  out.S.resize(n);
  const double domega = 2.0 * pi / (static_cast<double>(n) * dt);
  // reorder bins to signed frequencies -N/2 .. N/2-1
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + n / 2) % n;  // FFT bin index
    const double signed_index = static_cast<double>(j) - static_cast<double>(n / 2);
    out.omega[j] = signed_index * domega;
    out.S[j] = acc[k] * scale;
  }
  return out;
}

// Discrete Parseval sum: integral S domega / (2 pi).
inline double spectrum_integral(const Spectrum& sp, double dt, std::size_t segment_length) {
  double sum = 0.0;
  for (double v : sp.S) sum += v;
  return sum / (static_cast<double>(segment_length) * dt);
}

}  // namespace photocool
