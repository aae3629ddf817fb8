#include "deblur/deconv.hpp"
#include "deblur/degrade.hpp"
#include "deblur/scenario.hpp"
#include "deblur/spectral.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace deblur;

namespace {

// Kernel padded to `rows x cols` with its center moved to (0, 0), by hand.
ComplexGrid naive_otf(const Grid& k, Index rows, Index cols) {
  ComplexGrid padded = ComplexGrid::Zero(rows, cols);
  for (Index a = 0; a < k.rows(); ++a) {
    for (Index b = 0; b < k.cols(); ++b) {
      padded(((a - k.rows() / 2) % rows + rows) % rows, ((b - k.cols() / 2) % cols + cols) % cols) +=
          k(a, b);
    }
  }
  return oracle::naive_dft2(padded);
}

double high_frequency_energy(const Grid& x) {
  // Energy of the discrete Laplacian response.
  return oracle::circular_convolve(x, laplacian_operator(3, 3)).square().sum();
}

Image shifted(const Image& img, Index dr, Index dc) {
  Grid out(img.rows(), img.cols());
  for (Index r = 0; r < img.rows(); ++r) {
    for (Index c = 0; c < img.cols(); ++c) out((r + dr) % img.rows(), (c + dc) % img.cols()) = img(r, c);
  }
  return Image(out);
}

}  // namespace

TEST_CASE("wiener with a delta kernel is the identity") {
  std::mt19937_64 rng(51);
  const Image x(oracle::random_grid(rng, 11, 13));
  CHECK((wiener(x, Kernel::delta(), {0.0}).pixels() - x.pixels()).abs().maxCoeff() < 1e-10);
}

TEST_CASE("wiener inverse round trip on the stand-in") {
  const Image original = standin_image();
  const Kernel k = gaussian_psf(5, 7);
  const Image blurred = convolve(original, k, BoundaryMode::kCircular);
  CHECK(rmse(wiener(blurred, k, {0.0}), original) < 1e-6);
}

TEST_CASE("wiener matches the naive DFT formula") {
  std::mt19937_64 rng(52);
  const Grid b = oracle::random_grid(rng, 4, 4);
  const Grid k = oracle::random_unit_kernel(rng, 3, 3);
  const double nsr = 0.01;
  const ComplexGrid h = naive_otf(k, 4, 4);
  const ComplexGrid bf = oracle::naive_dft2(b.cast<std::complex<double>>());
  const ComplexGrid xf = h.conjugate() * bf / (h.abs2() + nsr);
  const Grid expected = oracle::naive_dft2(xf, +1).real() / 16.0;
  const Image got = wiener(Image(b), Kernel(k), {nsr});
  CHECK((got.pixels() - expected).abs().maxCoeff() < 1e-10);
}

TEST_CASE("wiener output energy falls as nsr grows") {
  std::mt19937_64 rng(53);
  const Image x(oracle::random_grid(rng, 24, 24));
  const Kernel k = gaussian_psf(5, 1.2);
  double previous = std::numeric_limits<double>::infinity();
  for (double nsr : {1.0, 10.0, 100.0}) {
    const double energy = wiener(x, k, {nsr}).pixels().square().sum();
    CHECK(energy < previous);
    previous = energy;
  }
  CHECK_THROWS_AS(wiener(x, k, {-1.0}), ParameterError);
}

TEST_CASE("estimate_nsr") {
  const Image x = Image::from_row_major(1, 4, std::vector<double>{0, 10, 20, 30});
  // var = 500/3
  CHECK(estimate_nsr(x, 50.0) == doctest::Approx(50.0 / (500.0 / 3 - 50.0)));
  CHECK(estimate_nsr(x, 1e6) == doctest::Approx(1e6 / 1e-3));
}

TEST_CASE("richardson_lucy fixed point and restartability") {
  std::mt19937_64 rng(54);
  const Image x(oracle::random_grid(rng, 12, 12, 1, 255));
  const Image same = richardson_lucy(x, Kernel::delta(), {5});
  CHECK((same.pixels() - x.pixels()).abs().maxCoeff() < 1e-10);

  const Kernel k(oracle::random_unit_kernel(rng, 3, 3));
  const Image b = convolve(x, k, BoundaryMode::kCircular);
  const Image ten = richardson_lucy(b, k, {10});
  const Image five = richardson_lucy(b, k, {5});
  const Image resumed = richardson_lucy(b, k, {5}, five);
  CHECK(resumed == ten);

  int calls = 0;
  richardson_lucy(b, k, {7}, std::nullopt, [&](int it, const Image&) { CHECK(it == ++calls); });
  CHECK(calls == 7);
}

TEST_CASE("richardson_lucy conserves flux and stays non-negative") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const Image x(oracle::random_grid(rng, 10 + trial, 12, 0, 255));
    const Kernel k(oracle::random_unit_kernel(rng, 3, 3));
    const Image b = convolve(x, k, BoundaryMode::kCircular);
    const double flux = b.pixels().sum();
    richardson_lucy(b, k, {15}, std::nullopt, [&](int, const Image& est) {
      CHECK(std::abs(est.pixels().sum() - flux) <= 1e-9 * flux);
      CHECK((est.pixels() >= 0.0).all());
    });
  }
}

TEST_CASE("richardson_lucy input checks") {
  CHECK_THROWS_AS(richardson_lucy(Image(6, 6, 0.0), gaussian_psf(3, 1), {3}), DegenerateInputError);
  CHECK_THROWS_AS(richardson_lucy(Image(6, 6, 1.0), gaussian_psf(3, 1), {0}), ParameterError);
  CHECK_THROWS_AS(richardson_lucy(Image(6, 6, 1.0), gaussian_psf(3, 1), {3}, Image(5, 6, 1.0)),
                  ShapeError);
}

TEST_CASE("regularized with lambda 0 and a delta kernel is the identity") {
  std::mt19937_64 rng(56);
  const Image x(oracle::random_grid(rng, 9, 14));
  const RegResult r = regularized(x, Kernel::delta(), FixedLambda{0.0});
  CHECK((r.image.pixels() - x.pixels()).abs().maxCoeff() < 1e-10);
  CHECK(r.residual_power < 1e-20);
  CHECK(r.lambda == 0.0);
}

TEST_CASE("regularization operator geometry") {
  CHECK(dims_of(regularization_operator(motion_psf(15, 11))) == Dims{5, 15});
  CHECK(dims_of(regularization_operator(motion_psf(15, 0))) == Dims{3, 15});
  CHECK(dims_of(regularization_operator(Kernel::delta())) == Dims{3, 3});
}

TEST_CASE("regularized residual is monotone and smoothness grows with lambda") {
  std::mt19937_64 rng(57);
  const Image x(oracle::random_grid(rng, 32, 32));
  const Kernel k = gaussian_psf(5, 1.5);
  const Image b = add_salt_pepper(convolve(x, k, BoundaryMode::kCircular), {0.02, 3});
  double prev_residual = -1.0;
  double prev_energy = std::numeric_limits<double>::infinity();
  for (double lambda : {1e-6, 1e-4, 1e-2, 1.0, 100.0}) {
    CAPTURE(lambda);
    const RegResult r = regularized(b, k, FixedLambda{lambda});
    CHECK(r.residual_power >= prev_residual);
    const double energy = high_frequency_energy(r.image.pixels());
    CHECK(energy <= prev_energy * (1 + 1e-12));
    CHECK(r.residual_power == doctest::Approx(residual_power(r.image, b, k)).epsilon(1e-9));
    prev_residual = r.residual_power;
    prev_energy = energy;
  }
  CHECK_THROWS_AS(residual_power(x, Image(31, 32), k), ShapeError);
}

TEST_CASE("regularized solve mode hits the target noise power") {
  std::mt19937_64 rng(58);
  const Image x(oracle::random_grid(rng, 32, 32));
  const Kernel k = gaussian_psf(5, 1.5);
  const Image clean = convolve(x, k, BoundaryMode::kCircular);
  std::normal_distribution<double> noise(0.0, 2.0);
  Grid noisy = clean.pixels();
  for (Index i = 0; i < noisy.size(); ++i) noisy.data()[i] += noise(rng);
  const Image b(noisy);
  const double target = (b.pixels() - clean.pixels()).square().mean();

  const RegResult solved = regularized(b, k, SolveForNoisePower{target, 1e-9, 1e4});
  CHECK(std::abs(solved.residual_power - target) <= 0.01 * target);
  CHECK(std::abs(residual_power(solved.image, b, k) - target) <= 0.01 * target);
  const RegResult refixed = regularized(b, k, FixedLambda{solved.lambda});
  CHECK(refixed.image == solved.image);

  try {
    regularized(b, k, SolveForNoisePower{1e6, 1e-9, 1e2});
    FAIL("expected a bracket error");
  } catch (const BracketError& e) {
    CHECK(e.residual_at_lo() < e.residual_at_hi());
    CHECK(e.residual_at_hi() < 1e6);
  }
  CHECK_THROWS_AS(regularized(b, k, SolveForNoisePower{target, 1.0, 0.5}), ParameterError);
}

TEST_CASE("all methods are translation equivariant") {
  std::mt19937_64 rng(59);
  const Image x(oracle::random_grid(rng, 16, 20, 1, 255));
  const Kernel k(oracle::random_unit_kernel(rng, 3, 3));
  const Image b = convolve(x, k, BoundaryMode::kCircular);
  const Image bs = shifted(b, 5, 3);
  const auto close = [](const Image& p, const Image& q) {
    return (p.pixels() - q.pixels()).abs().maxCoeff() < 1e-8;
  };
  CHECK(close(wiener(bs, k, {0.01}), shifted(wiener(b, k, {0.01}), 5, 3)));
  CHECK(close(richardson_lucy(bs, k, {8}), shifted(richardson_lucy(b, k, {8}), 5, 3)));
  CHECK(close(regularized(bs, k, FixedLambda{0.1}).image,
              shifted(regularized(b, k, FixedLambda{0.1}).image, 5, 3)));
}

TEST_CASE("every method improves a clean blurred stand-in") {
  const Image original = standin_image();
  for (const Kernel& k : {motion_psf(15, 11), gaussian_psf(5, 7)}) {
    const Image b = convolve(original, k, BoundaryMode::kCircular);
    const double base = rmse(b, original);
    CHECK(rmse(wiener(b, k, {1e-4}), original) < base);
    CHECK(rmse(richardson_lucy(b, k, {20}), original) < base);
    CHECK(rmse(regularized(b, k, FixedLambda{1e-4}).image, original) < base);
  }
}
