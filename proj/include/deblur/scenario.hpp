#pragma once

#include "deblur/degrade.hpp"
#include "deblur/image.hpp"
#include "deblur/psf.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deblur {

/// Procedural 183x275 8-bit test image: a five-petal flower with a dark
/// disc center and a stem over a smooth shaded background. It has flat
/// regions as well as sharp edges, so ringing is visible after deblurring.
Image standin_image();

enum class BlurType { kMotion, kGaussian };
enum class Method { kWiener, kRichardsonLucy, kRegularized };
enum class Stage { kOriginal, kBlurred, kNoisy, kDenoised, kDeblurredDirect, kDeblurredAfterDenoise };

std::string_view to_string(BlurType b);
std::string_view to_string(Method m);
std::string_view to_string(Stage s);
BlurType parse_blur_type(std::string_view name);
Method parse_method(std::string_view name);

struct ScenarioConfig {
  /// Input image; the built-in stand-in when unset.
  std::optional<std::filesystem::path> input;
  std::vector<BlurType> blur_types{BlurType::kMotion, BlurType::kGaussian};

  double motion_length = 15.0;
  double motion_angle = 11.0;
  int gaussian_size = 5;
  double gaussian_sigma = 7.0;
  BoundaryMode boundary = BoundaryMode::kCircular;

  double density = 0.07;
  std::uint64_t seed = 42;

  int max_window = 5;

  /// Overrides the noise-power based NSR estimate when set.
  std::optional<double> wiener_nsr;
  /// RL is swept over 1..rl_max_iterations and the rmse-vs-original
  /// argmin is reported.
  int rl_max_iterations = 30;
  double rl_epsilon = 1e-12;
  double lambda_lo = 1e-9;
  double lambda_hi = 1e4;
  double lambda_tolerance = 1e-3;

  /// Where images and reports go; nothing is written when unset.
  std::optional<std::filesystem::path> output_dir;

  Kernel psf(BlurType b) const;
};

struct ScenarioRecord {
  BlurType blur_type = BlurType::kMotion;
  std::optional<Method> method;
  Stage stage = Stage::kOriginal;
  StatsRow stats;
  double rmse_vs_original = 0.0;
  double rmse_vs_blurred = 0.0;
  std::optional<int> iterations;
  std::optional<double> lambda;
  std::uint64_t seed = 0;
  /// Set when the method failed for this cell; numeric fields are then void.
  std::optional<std::string> error;
};

struct ScenarioReport {
  std::uint64_t seed = 0;
  std::vector<ScenarioRecord> records;

  const ScenarioRecord* find(BlurType b, Stage s, std::optional<Method> m = std::nullopt) const;
};

/// Blur -> salt-and-pepper -> {deblur directly, adaptive median then
/// deblur} for each blur type and all three methods. Every stage image is
/// quantized to 8 bits, exactly as if it had been written to and read back
/// from a PGM. The noise power handed to Wiener and the regularized solver
/// is the mean squared difference between the deblurring input and the
/// noise-free blurred image, which the simulation knows.
ScenarioReport run_paper(const ScenarioConfig& config);

inline constexpr std::string_view kCsvHeader =
    "blur_type,method,stage,mean,std,snr,rmse_vs_original,rmse_vs_blurred,iterations,lambda,seed";

std::string format_csv(const ScenarioReport& report);
std::string format_table(const ScenarioReport& report);

/// "%.6g", with "inf"/"-inf"/"nan" spelled out.
std::string format_number(double v);

}  // namespace deblur
