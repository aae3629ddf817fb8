#include "deblur/scenario.hpp"

#include "deblur/deconv.hpp"
#include "deblur/denoise.hpp"
#include "deblur/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <tuple>

namespace deblur {

std::string_view to_string(BlurType b) {
  return b == BlurType::kMotion ? "motion" : "gaussian";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kWiener:
      return "wiener";
    case Method::kRichardsonLucy:
      return "rl";
    case Method::kRegularized:
      return "reg";
  }
  return "?";
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kOriginal:
      return "original";
    case Stage::kBlurred:
      return "blurred";
    case Stage::kNoisy:
      return "noisy";
    case Stage::kDenoised:
      return "denoised";
    case Stage::kDeblurredDirect:
      return "deblurred_direct";
    case Stage::kDeblurredAfterDenoise:
      return "deblurred_after_denoise";
  }
  return "?";
}

BlurType parse_blur_type(std::string_view name) {
  if (name == "motion") return BlurType::kMotion;
  if (name == "gaussian") return BlurType::kGaussian;
  throw ParameterError("unknown blur type '" + std::string(name) + "' (motion or gaussian)");
}

Method parse_method(std::string_view name) {
  if (name == "wiener") return Method::kWiener;
  if (name == "rl") return Method::kRichardsonLucy;
  if (name == "reg") return Method::kRegularized;
  throw ParameterError("unknown method '" + std::string(name) + "' (wiener, rl or reg)");
}

Kernel ScenarioConfig::psf(BlurType b) const {
  return b == BlurType::kMotion ? motion_psf(motion_length, motion_angle)
                                : gaussian_psf(gaussian_size, gaussian_sigma);
}

const ScenarioRecord* ScenarioReport::find(BlurType b, Stage s, std::optional<Method> m) const {
  for (const auto& r : records) {
    if (r.blur_type == b && r.stage == s && r.method == m) return &r;
  }
  return nullptr;
}

namespace {

constexpr Method kMethods[] = {Method::kWiener, Method::kRichardsonLucy, Method::kRegularized};

struct MethodOutcome {
  Image image;
  std::optional<int> iterations;
  std::optional<double> lambda;
};

class Runner {
 public:
  explicit Runner(const ScenarioConfig& config) : config_(config) {}

  ScenarioReport run() {
    const Image original = quantize(config_.input ? load_image(*config_.input) : standin_image());
    if (config_.output_dir) {
      std::filesystem::create_directories(*config_.output_dir);
      save("original.pgm", original);
    }

    ScenarioReport report;
    report.seed = config_.seed;
    for (BlurType blur : config_.blur_types) run_blur(blur, original, report.records);

    std::stable_sort(report.records.begin(), report.records.end(),
                     [](const ScenarioRecord& a, const ScenarioRecord& b) {
                       const auto key = [](const ScenarioRecord& r) {
                         return std::make_tuple(static_cast<int>(r.blur_type),
                                                static_cast<int>(r.stage),
                                                r.method ? static_cast<int>(*r.method) : -1);
                       };
                       return key(a) < key(b);
                     });

    if (config_.output_dir) {
      write_text("report.csv", format_csv(report));
      write_text("report.txt", format_table(report));
    }
    return report;
  }

 private:
  void run_blur(BlurType blur, const Image& original, std::vector<ScenarioRecord>& out) {
    const Kernel k = config_.psf(blur);
    const NoiseSpec noise{config_.density, config_.seed};

    const Image blurred = quantize(convolve(original, k, config_.boundary));
    const Image noisy = quantize(add_salt_pepper(blurred, noise));
    const Image denoised = quantize(adaptive_median(noisy, config_.max_window));

    const std::string prefix(to_string(blur));
    if (config_.output_dir) {
      std::ofstream psf_file(*config_.output_dir / (prefix + "_psf.txt"));
      write_grid_text(psf_file, k.weights());
      save(prefix + "_blurred.pgm", blurred);
      save(prefix + "_noisy.pgm", noisy);
      save(prefix + "_denoised.pgm", denoised);
    }

    const auto stage_record = [&](Stage stage, const Image& img) {
      ScenarioRecord r = base_record(blur, stage, std::nullopt);
      fill_stats(r, img, original, blurred);
      out.push_back(std::move(r));
    };
    stage_record(Stage::kOriginal, original);
    stage_record(Stage::kBlurred, blurred);
    stage_record(Stage::kNoisy, noisy);
    stage_record(Stage::kDenoised, denoised);

    const std::pair<Stage, const Image*> inputs[] = {{Stage::kDeblurredDirect, &noisy},
                                                    {Stage::kDeblurredAfterDenoise, &denoised}};
    for (const auto& [stage, input] : inputs) {
      const double noise_power = (input->pixels() - blurred.pixels()).square().mean();
      for (Method method : kMethods) {
        ScenarioRecord r = base_record(blur, stage, method);
        try {
          MethodOutcome outcome = deblur(method, *input, k, original, noise_power);
          fill_stats(r, outcome.image, original, blurred);
          r.iterations = outcome.iterations;
          r.lambda = outcome.lambda;
          if (config_.output_dir) {
            const std::string suffix =
                stage == Stage::kDeblurredDirect ? "_direct.pgm" : "_after_denoise.pgm";
            save(prefix + "_" + std::string(to_string(method)) + suffix, outcome.image);
          }
        } catch (const Error& e) {
          r.error = e.what();
        }
        out.push_back(std::move(r));
      }
    }
  }

  MethodOutcome deblur(Method method, const Image& input, const Kernel& k, const Image& original,
                       double noise_power) const {
    switch (method) {
      case Method::kWiener: {
        const double nsr = config_.wiener_nsr.value_or(estimate_nsr(input, noise_power));
        return {quantize(wiener(input, k, WienerParams{nsr})), std::nullopt, std::nullopt};
      }
      case Method::kRichardsonLucy: {
        std::optional<Image> best;
        int best_iteration = 0;
        double best_rmse = 0.0;
        const RlParams params{config_.rl_max_iterations, config_.rl_epsilon};
        richardson_lucy(input, k, params, std::nullopt, [&](int it, const Image& estimate) {
          Image q = quantize(estimate);
          const double e = rmse(q, original);
          if (!best || e < best_rmse) {
            best = std::move(q);
            best_iteration = it;
            best_rmse = e;
          }
        });
        return {*best, best_iteration, std::nullopt};
      }
      case Method::kRegularized: {
        SolveForNoisePower solve;
        solve.noise_power = noise_power;
        solve.lambda_lo = config_.lambda_lo;
        solve.lambda_hi = config_.lambda_hi;
        solve.tolerance = config_.lambda_tolerance;
        RegResult result = regularized(input, k, solve);
        return {quantize(result.image), std::nullopt, result.lambda};
      }
    }
    throw Error("unknown method");
  }

  ScenarioRecord base_record(BlurType blur, Stage stage, std::optional<Method> method) const {
    ScenarioRecord r;
    r.blur_type = blur;
    r.stage = stage;
    r.method = method;
    r.seed = config_.seed;
    return r;
  }

  static void fill_stats(ScenarioRecord& r, const Image& img, const Image& original,
                         const Image& blurred) {
    r.stats = compute_stats(img);
    r.rmse_vs_original = rmse(img, original);
    r.rmse_vs_blurred = rmse(img, blurred);
  }

  void save(const std::string& name, const Image& img) const {
    save_image(img, *config_.output_dir / name);
  }

  void write_text(const std::string& name, const std::string& text) const {
    const auto path = *config_.output_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw IoError("cannot write " + path.string());
  }

  const ScenarioConfig& config_;
};

}  // namespace

ScenarioReport run_paper(const ScenarioConfig& config) {
  if (config.rl_max_iterations < 1) throw ParameterError("rl_max_iterations must be >= 1");
  NoiseSpec{config.density, config.seed}.validate();
  return Runner(config).run();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_csv(const ScenarioReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : report.records) {
    const bool ok = !r.error;
    const auto num = [ok](double v) { return ok ? format_number(v) : std::string(); };
    out += std::string(to_string(r.blur_type)) + ',';
    out += (r.method ? std::string(to_string(*r.method)) : std::string()) + ',';
    out += std::string(to_string(r.stage)) + ',';
    out += num(r.stats.mean) + ',' + num(r.stats.std) + ',' + num(r.stats.snr) + ',';
    out += num(r.rmse_vs_original) + ',' + num(r.rmse_vs_blurred) + ',';
    out += (ok && r.iterations ? std::to_string(*r.iterations) : std::string()) + ',';
    out += (ok && r.lambda ? format_number(*r.lambda) : std::string()) + ',';
    out += std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string format_table(const ScenarioReport& report) {
  std::ostringstream out;
  out << "seed " << report.seed << "\n\n";
  out << std::left << std::setw(9) << "blur" << std::setw(8) << "method" << std::setw(25)
      << "stage" << std::right << std::setw(10) << "mean" << std::setw(10) << "std"
      << std::setw(10) << "snr" << std::setw(12) << "rmse_orig" << std::setw(12) << "rmse_blur"
      << std::setw(7) << "iters" << std::setw(12) << "lambda" << '\n';
  for (const auto& r : report.records) {
    out << std::left << std::setw(9) << to_string(r.blur_type) << std::setw(8)
        << (r.method ? to_string(*r.method) : "-") << std::setw(25) << to_string(r.stage)
        << std::right;
    if (r.error) {
      out << "  FAILED: " << *r.error << '\n';
      continue;
    }
    out << std::setw(10) << format_number(r.stats.mean) << std::setw(10)
        << format_number(r.stats.std) << std::setw(10) << format_number(r.stats.snr)
        << std::setw(12) << format_number(r.rmse_vs_original) << std::setw(12)
        << format_number(r.rmse_vs_blurred) << std::setw(7)
        << (r.iterations ? std::to_string(*r.iterations) : "") << std::setw(12)
        << (r.lambda ? format_number(*r.lambda) : "") << '\n';
  }
  return out.str();
}

}  // namespace deblur
