#include "deblur/deconv.hpp"

#include "deblur/degrade.hpp"
#include "deblur/spectral.hpp"

#include <cmath>
#include <sstream>

namespace deblur {

namespace {

constexpr double kOtfFloor = 1e-12;

void check_kernel_fits(const Image& img, const Kernel& k, const char* who) {
  if (k.rows() > img.rows() || k.cols() > img.cols()) {
    throw ShapeError(std::string(who) + ": kernel " + to_string(k.dims()) +
                     " larger than image " + to_string(img.dims()));
  }
}

}  // namespace

Image wiener(const Image& blurred, const Kernel& k, const WienerParams& p) {
  if (!(p.nsr >= 0.0) || !std::isfinite(p.nsr)) {
    throw ParameterError("wiener: nsr must be finite and non-negative");
  }
  check_kernel_fits(blurred, k, "wiener");
  const ComplexGrid h = psf_to_otf(k, blurred.dims());
  ComplexGrid spectrum = dft2(blurred.pixels());
  for (Index i = 0; i < spectrum.size(); ++i) {
    const std::complex<double> hv = h.data()[i];
    if (p.nsr == 0.0 && std::abs(hv) < kOtfFloor) {
      spectrum.data()[i] = 0.0;
    } else {
      spectrum.data()[i] *= std::conj(hv) / (std::norm(hv) + p.nsr);
    }
  }
  return Image(idft2_real(spectrum));
}

double estimate_nsr(const Image& observed, double noise_power, double floor) {
  if (!(noise_power >= 0.0) || !(floor > 0.0)) {
    throw ParameterError("estimate_nsr: noise power must be >= 0 and floor > 0");
  }
  const double s = stddev(observed);
  return noise_power / std::max(s * s - noise_power, floor);
}

Image richardson_lucy(const Image& blurred, const Kernel& k, const RlParams& p,
                      const std::optional<Image>& initial, const RlObserver& observer) {
  if (p.iterations < 1) throw ParameterError("richardson_lucy: iterations must be >= 1");
  if (!(p.epsilon > 0.0)) throw ParameterError("richardson_lucy: epsilon must be positive");
  if (std::abs(k.sum() - 1.0) > 1e-9) {
    throw ParameterError("richardson_lucy: kernel must sum to 1");
  }
  check_kernel_fits(blurred, k, "richardson_lucy");

  const Grid b = blurred.pixels().max(0.0);
  if ((b == 0.0).all()) {
    throw DegenerateInputError("richardson_lucy: observation is zero everywhere after clamping");
  }
  Grid x;
  if (initial) {
    if (initial->dims() != blurred.dims()) {
      throw ShapeError("richardson_lucy: initial estimate " + to_string(initial->dims()) +
                       " does not match " + to_string(blurred.dims()));
    }
    x = initial->pixels().max(0.0);
  } else {
    x = b;
  }

  const ComplexGrid h = psf_to_otf(k, blurred.dims());
  // For even kernel extents the plain 180 degree rotation would move the
  // center by one pixel; conj(H) is the exact adjoint and keeps flux.
  const ComplexGrid h_adjoint = h.conjugate();
  for (int it = 1; it <= p.iterations; ++it) {
    const Grid predicted = apply_otf(x, h);
    const Grid ratio = b / predicted.max(p.epsilon);
    // The correlation of non-negative grids is non-negative; drop FFT
    // round-off below zero.
    x *= apply_otf(ratio, h_adjoint).max(0.0);
    if (observer) observer(it, Image(x));
  }
  return Image(std::move(x));
}

Grid regularization_operator(const Kernel& k) {
  return laplacian_operator(std::max<Index>(k.rows(), 3), std::max<Index>(k.cols(), 3));
}

namespace {

// Everything the constrained least-squares solve needs per frequency, so a
// lambda search only does O(N) work per probe.
class ClsProblem {
 public:
  ClsProblem(const Image& blurred, const Kernel& k) : dims_(blurred.dims()) {
    const Grid op = regularization_operator(k);
    if (op.rows() > dims_.rows || op.cols() > dims_.cols) {
      throw ShapeError("regularized: regularization operator " + to_string(dims_of(op)) +
                       " larger than image " + to_string(dims_));
    }
    h_ = psf_to_otf(k, dims_);
    l_power_ = psf_to_otf(op, dims_).abs2();
    b_ = dft2(blurred.pixels());
  }

  double residual_power(double lambda) const {
    // H X - B = -B * lambda |L|^2 / den, or -B where the frequency is zeroed.
    double total = 0.0;
    for (Index i = 0; i < b_.size(); ++i) {
      const double den = denominator(i, lambda);
      const double b2 = std::norm(b_.data()[i]);
      if (den < kOtfFloor * kOtfFloor) {
        total += b2;
      } else {
        const double f = lambda * l_power_.data()[i] / den;
        total += b2 * f * f;
      }
    }
    const double n = static_cast<double>(b_.size());
    return total / (n * n);
  }

  Image solve(double lambda) const {
    ComplexGrid x = b_;
    for (Index i = 0; i < x.size(); ++i) {
      const double den = denominator(i, lambda);
      if (den < kOtfFloor * kOtfFloor) {
        x.data()[i] = 0.0;
      } else {
        x.data()[i] *= std::conj(h_.data()[i]) / den;
      }
    }
    return Image(idft2_real(x));
  }

 private:
  double denominator(Index i, double lambda) const {
    return std::norm(h_.data()[i]) + lambda * l_power_.data()[i];
  }

  Dims dims_;
  ComplexGrid h_;
  Grid l_power_;
  ComplexGrid b_;
};

double solve_lambda(const ClsProblem& problem, const SolveForNoisePower& s) {
  const double target = s.noise_power;
  const double tol = s.tolerance * target;
  const auto close_enough = [&](double r) { return std::abs(r - target) <= tol; };

  const double r_lo = problem.residual_power(s.lambda_lo);
  const double r_hi = problem.residual_power(s.lambda_hi);
  if (close_enough(r_lo)) return s.lambda_lo;
  if (close_enough(r_hi)) return s.lambda_hi;
  if (target < r_lo || target > r_hi) {
    std::ostringstream msg;
    msg << "regularized: noise power " << target << " not reachable in lambda range ["
        << s.lambda_lo << ", " << s.lambda_hi << "]; residual power is " << r_lo << " at lo and "
        << r_hi << " at hi";
    throw BracketError(msg.str(), r_lo, r_hi);
  }

  // Bisection on log10(lambda). A zero lower bound is replaced by a point
  // far enough below hi to behave like zero.
  double a = std::log10(s.lambda_lo > 0.0 ? s.lambda_lo : s.lambda_hi * 1e-16);
  double b = std::log10(s.lambda_hi);
  for (int it = 0; it < s.max_iterations; ++it) {
    const double mid = 0.5 * (a + b);
    const double lambda = std::pow(10.0, mid);
    const double r = problem.residual_power(lambda);
    if (close_enough(r)) return lambda;
    (r < target ? a : b) = mid;
  }
  throw Error("regularized: lambda search did not converge in " +
              std::to_string(s.max_iterations) + " iterations");
}

}  // namespace

RegResult regularized(const Image& blurred, const Kernel& k, const RegParams& p) {
  check_kernel_fits(blurred, k, "regularized");
  const ClsProblem problem(blurred, k);

  double lambda = 0.0;
  if (const auto* fixed = std::get_if<FixedLambda>(&p)) {
    if (!(fixed->lambda >= 0.0) || !std::isfinite(fixed->lambda)) {
      throw ParameterError("regularized: lambda must be finite and non-negative");
    }
    lambda = fixed->lambda;
  } else {
    const auto& s = std::get<SolveForNoisePower>(p);
    if (!(s.noise_power >= 0.0) || !std::isfinite(s.noise_power)) {
      throw ParameterError("regularized: noise power must be finite and non-negative");
    }
    if (!(s.lambda_lo >= 0.0) || !(s.lambda_hi > s.lambda_lo) || !std::isfinite(s.lambda_hi)) {
      throw ParameterError("regularized: lambda range must satisfy 0 <= lo < hi");
    }
    if (!(s.tolerance > 0.0) || s.max_iterations < 1) {
      throw ParameterError("regularized: tolerance and iteration budget must be positive");
    }
    lambda = solve_lambda(problem, s);
  }
  return {problem.solve(lambda), lambda, problem.residual_power(lambda)};
}

double residual_power(const Image& estimate, const Image& blurred, const Kernel& k) {
  if (estimate.dims() != blurred.dims()) {
    throw ShapeError("residual_power: estimate " + to_string(estimate.dims()) +
                     " does not match observation " + to_string(blurred.dims()));
  }
  const Image reblurred = convolve(estimate, k, BoundaryMode::kCircular);
  return (reblurred.pixels() - blurred.pixels()).square().mean();
}

}  // namespace deblur
