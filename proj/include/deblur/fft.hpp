#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace deblur {

/// One-dimensional complex DFT of a fixed length.
///
/// Lengths whose prime factors are all at most kMaxDirectRadix run through a
/// recursive mixed-radix Cooley-Tukey decomposition; anything else is
/// rewritten as a power-of-two convolution (Bluestein's chirp-z). Both
/// transforms are unnormalized. A plan is immutable once built and may be
/// shared between threads.
template <typename Scalar>
class FftPlan {
 public:
  using Complex = std::complex<Scalar>;

  static constexpr std::size_t kMaxDirectRadix = 97;

  explicit FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("FftPlan: length must be positive");
    factors_ = factorize(n);
    if (!factors_.empty() && factors_.back() > kMaxDirectRadix) {
      factors_.clear();
      init_bluestein();
    } else {
      twiddles_.resize(n);
      for (std::size_t k = 0; k < n; ++k) twiddles_[k] = unit_root(k, n);
      for (std::size_t p : factors_) max_radix_ = std::max(max_radix_, p);
    }
  }

  std::size_t size() const { return n_; }
  bool uses_bluestein() const { return bluestein_ != nullptr; }

  /// X[k] = sum_j x[j] exp(-2 pi i j k / n), in place.
  void forward(std::span<Complex> data) const {
    if (data.size() != n_) throw std::invalid_argument("FftPlan: length mismatch");
    if (n_ == 1) return;
    if (bluestein_) {
      run_bluestein(data);
      return;
    }
    std::vector<Complex> in(data.begin(), data.end());
    std::vector<Complex> scratch(max_radix_);
    work(data.data(), in.data(), 1, 0, scratch.data());
  }

  /// x[j] = sum_k X[k] exp(+2 pi i j k / n), in place (no 1/n factor).
  void inverse(std::span<Complex> data) const {
    for (auto& v : data) v = std::conj(v);
    forward(data);
    for (auto& v : data) v = std::conj(v);
  }

 private:
  struct Bluestein {
    std::size_t m = 0;
    std::unique_ptr<FftPlan> plan;
    std::vector<Complex> chirp;            // exp(-i pi k^2 / n)
    std::vector<Complex> filter_spectrum;  // FFT of the conjugate chirp, wrapped
  };

  static Complex unit_root(std::size_t k, std::size_t n) {
    // Angles are reduced in integer arithmetic to keep twiddles accurate for
    // large k.
    const long double angle =
        -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k % n) /
        static_cast<long double>(n);
    return {static_cast<Scalar>(std::cos(angle)), static_cast<Scalar>(std::sin(angle))};
  }

  static std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t p = 2; p * p <= n; ++p) {
      while (n % p == 0) {
        out.push_back(p);
        n /= p;
      }
    }
    if (n > 1) out.push_back(n);
    return out;
  }

  // Decimation in time: split `in` (read with stride `stride`) into p
  // interleaved subsequences of length m, transform each into consecutive
  // blocks of `out`, then combine with radix-p butterflies.
  void work(Complex* out, const Complex* in, std::size_t stride, std::size_t stage,
            Complex* scratch) const {
    const std::size_t p = factors_[stage];
    std::size_t m = 1;
    for (std::size_t s = stage + 1; s < factors_.size(); ++s) m *= factors_[s];

    if (m == 1) {
      for (std::size_t q = 0; q < p; ++q) out[q] = in[q * stride];
    } else {
      for (std::size_t q = 0; q < p; ++q) {
        work(out + q * m, in + q * stride, stride * p, stage + 1, scratch);
      }
    }
    if (p == 2) {
      butterfly2(out, stride, m);
    } else {
      butterfly_generic(out, stride, m, p, scratch);
    }
  }

  void butterfly2(Complex* out, std::size_t stride, std::size_t m) const {
    for (std::size_t k = 0; k < m; ++k) {
      const Complex t = out[k + m] * twiddles_[k * stride];
      out[k + m] = out[k] - t;
      out[k] += t;
    }
  }

  void butterfly_generic(Complex* out, std::size_t stride, std::size_t m, std::size_t p,
                         Complex* scratch) const {
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t q = 0; q < p; ++q) scratch[q] = out[u + q * m];
      for (std::size_t q1 = 0; q1 < p; ++q1) {
        const std::size_t k = u + q1 * m;
        const std::size_t step = stride * k % n_;
        std::size_t tw = 0;
        Complex acc = scratch[0];
        for (std::size_t q = 1; q < p; ++q) {
          tw += step;
          if (tw >= n_) tw -= n_;
          acc += scratch[q] * twiddles_[tw];
        }
        out[k] = acc;
      }
    }
  }

  void init_bluestein() {
    auto b = std::make_unique<Bluestein>();
    b->m = 1;
    while (b->m < 2 * n_ - 1) b->m <<= 1;
    b->plan = std::make_unique<FftPlan>(b->m);

    b->chirp.resize(n_);
    const std::size_t two_n = 2 * n_;
    for (std::size_t k = 0; k < n_; ++k) {
      // exp(-i pi k^2 / n) = unit_root(k^2 mod 2n, 2n)
      const std::size_t k2 = static_cast<std::size_t>(
          (static_cast<unsigned long long>(k) * k) % two_n);
      b->chirp[k] = unit_root(k2, two_n);
    }
    b->filter_spectrum.assign(b->m, Complex{});
    b->filter_spectrum[0] = std::conj(b->chirp[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      b->filter_spectrum[k] = b->filter_spectrum[b->m - k] = std::conj(b->chirp[k]);
    }
    b->plan->forward(b->filter_spectrum);
    bluestein_ = std::move(b);
  }

  void run_bluestein(std::span<Complex> data) const {
    const Bluestein& b = *bluestein_;
    std::vector<Complex> a(b.m, Complex{});
    for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * b.chirp[k];
    b.plan->forward(a);
    for (std::size_t k = 0; k < b.m; ++k) a[k] *= b.filter_spectrum[k];
    b.plan->inverse(a);
    const Scalar scale = Scalar(1) / static_cast<Scalar>(b.m);
    for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * b.chirp[k] * scale;
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<Complex> twiddles_;
  std::size_t max_radix_ = 1;
  std::unique_ptr<Bluestein> bluestein_;
};

}  // namespace deblur
