#include "deblur/image.hpp"
#include "deblur/pgm.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>

using namespace deblur;

namespace {

Image row_image(std::initializer_list<double> values, Index rows, Index cols) {
  return Image::from_row_major(rows, cols, std::vector<double>(values));
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("deblur_test_" + name);
}

}  // namespace

TEST_CASE("image invariants") {
  CHECK_THROWS_AS(Image(0, 3), ShapeError);
  CHECK_THROWS_AS(Image(2, 2, std::numeric_limits<double>::quiet_NaN()), ParameterError);
  Grid g = Grid::Zero(2, 2);
  g(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Image{g}, ParameterError);
  CHECK_THROWS_AS(Image::from_row_major(2, 2, std::vector<double>{1, 2, 3}), ShapeError);
}

TEST_CASE("mean") {
  CHECK(mean(Image(7, 3, 5.0)) == doctest::Approx(5.0));
  CHECK(mean(row_image({0, 255, 0, 255}, 2, 2)) == doctest::Approx(127.5));
}

TEST_CASE("stddev uses the N-1 convention") {
  CHECK(stddev(Image(4, 4, 3.0)) == 0.0);
  CHECK(stddev(row_image({0, 2}, 1, 2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // sqrt(4 * 127.5^2 / 3)
  CHECK(stddev(row_image({0, 0, 255, 255}, 2, 2)) ==
        doctest::Approx(147.22431864335456).epsilon(1e-12));
  CHECK_THROWS_AS(stddev(Image(1, 1, 4.0)), DegenerateInputError);
}

TEST_CASE("snr") {
  CHECK(snr(row_image({0, 2}, 1, 2)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  // mean 10, std 5
  CHECK(snr(row_image({10 - 5 / std::sqrt(2.0), 10 + 5 / std::sqrt(2.0)}, 1, 2)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(snr(Image(3, 3, 9.0)), DegenerateInputError);
}

TEST_CASE("rmse") {
  const Image x = row_image({1, 2, 3, 4}, 2, 2);
  CHECK(rmse(x, x) == 0.0);
  CHECK(rmse(row_image({0, 0}, 1, 2), row_image({3, 4}, 1, 2)) ==
        doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
  CHECK_THROWS_AS(rmse(x, Image(1, 4)), ShapeError);
}

TEST_CASE("stats agree with brute-force oracles and scale properly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = oracle::random_grid(rng, 1 + trial % 7, 2 + trial % 5, -50, 300);
    const Image img(g);
    CHECK(mean(img) == doctest::Approx(oracle::brute_mean(g)).epsilon(1e-12));
    CHECK(stddev(img) == doctest::Approx(oracle::brute_sample_std(g)).epsilon(1e-12));

    const double c = -2.5;
    const Image scaled(Grid(g * c));
    CHECK(mean(scaled) == doctest::Approx(c * mean(img)).epsilon(1e-12));
    CHECK(stddev(scaled) == doctest::Approx(std::abs(c) * stddev(img)).epsilon(1e-12));
  }
}

TEST_CASE("rmse is a metric bounded by the max difference") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Image a(oracle::random_grid(rng, 6, 5));
    const Image b(oracle::random_grid(rng, 6, 5));
    const Image c(oracle::random_grid(rng, 6, 5));
    CHECK(rmse(a, b) == doctest::Approx(rmse(b, a)).epsilon(1e-15));
    CHECK(rmse(a, c) <= rmse(a, b) + rmse(b, c) + 1e-12);
    const double max_diff = (a.pixels() - b.pixels()).abs().maxCoeff();
    CHECK(rmse(a, b) <= max_diff + 1e-12);
  }
}

TEST_CASE("compute_stats reports an inf snr for constant images") {
  const StatsRow row = compute_stats(Image(4, 4, 128.0));
  CHECK(row.mean == 128.0);
  CHECK(row.std == 0.0);
  CHECK(std::isinf(row.snr));
  CHECK_FALSE(row.rmse.has_value());
  const StatsRow with_ref = compute_stats(Image(4, 4, 128.0), Image(4, 4, 125.0));
  REQUIRE(with_ref.rmse.has_value());
  CHECK(*with_ref.rmse == doctest::Approx(3.0));
}

TEST_CASE("quantize clamps and rounds half away from zero") {
  const Image q = quantize(row_image({-3.0, 0.5, 1.49, 254.5, 255.7, 127.5}, 1, 6));
  const std::vector<double> expect{0, 1, 1, 255, 255, 128};
  for (Index i = 0; i < 6; ++i) CHECK(q(0, i) == expect[i]);
}

TEST_CASE("PGM decode of a hand-built P5 file") {
  const std::string bytes = std::string("P5 2 2 255\n") + '\x00' + '\x55' + '\xAA' + '\xFF';
  const Image img = decode_pgm(bytes);
  REQUIRE(img.dims() == Dims{2, 2});
  CHECK(img(0, 0) == 0);
  CHECK(img(0, 1) == 85);
  CHECK(img(1, 0) == 170);
  CHECK(img(1, 1) == 255);

  const std::string commented = std::string("P5\n# made by hand\n2 1\n# max\n255\n") + 'A' + 'B';
  const Image c = decode_pgm(commented);
  CHECK(c.dims() == Dims{1, 2});
  CHECK(c(0, 1) == 'B');
}

TEST_CASE("PGM rejects unsupported content") {
  CHECK_THROWS_AS(decode_pgm("P6 1 1 255\nabc"), IoError);
  CHECK_THROWS_AS(decode_pgm("P2 1 1 255\n7"), IoError);
  CHECK_THROWS_AS(decode_pgm("GIF89a"), IoError);
  CHECK_THROWS_AS(decode_pgm("P5 2 2 65535\n"), IoError);
  CHECK_THROWS_AS(decode_pgm("P5 2 x 255\n"), IoError);
  CHECK_THROWS_AS(decode_pgm(std::string("P5 2 2 255\n") + "ab"), IoError);
  CHECK_THROWS_AS(load_image(temp_path("does_not_exist.pgm")), IoError);
}

TEST_CASE("save clamps to 8 bits") {
  const auto path = temp_path("clamp.pgm");
  save_image(row_image({255.7, -4.0, 12.5}, 1, 3), path);
  const Image back = load_image(path);
  CHECK(back(0, 0) == 255);
  CHECK(back(0, 1) == 0);
  CHECK(back(0, 2) == 13);
}

TEST_CASE("PGM round trip is lossless for 8-bit data and byte-stable") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int trial = 0; trial < 5; ++trial) {
    Grid g(16, 16 + trial);
    for (Index i = 0; i < g.size(); ++i) g.data()[i] = byte(rng);
    const Image img(g);
    const auto path = temp_path("roundtrip.pgm");
    save_image(img, path);
    const Image back = load_image(path);
    CHECK(back == img);
    CHECK(encode_pgm(back) == encode_pgm(img));
  }
}
