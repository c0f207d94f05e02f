#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pwave/tensor.hpp"

namespace pwave {

// How detail magnitudes are weighted before comparison with the threshold:
// raw coefficients, coefficients scaled by the L2 norm of their basis
// function, or additionally by 2^(s j) to steer the error toward a
// smoothness norm of order s.
enum class Weighting : std::uint32_t { Raw = 0, L2 = 1, SWeighted = 2 };

const char* to_string(Weighting weighting);
Weighting weighting_from_string(const std::string& name);

struct CodecConfig {
  ProjectorKind kind = ProjectorKind::CG;
  int order = 1;
  Ordering ordering = Ordering::Mallat;
  Weighting weighting = Weighting::L2;
  double threshold = 0.0;
  double s = 0.0;
};

struct RateDistortionReport {
  double threshold = 0.0;
  double cr = 1.0;        // retained / total coefficients
  double l2_error = 0.0;  // root mean square over the domain
  double linf_error = 0.0;
  std::vector<std::size_t> per_level_retained;
  // (rank, weighted magnitude) samples of the sorted coefficient decay
  std::vector<std::pair<std::size_t, double>> decay_samples;
};

// Thresholded coefficient pyramid with enough metadata to reconstruct.
// Byte layout (all integers little-endian u32 unless noted):
//   magic "PWAV0001" | version | dims d | size[0..d) | order q | kind |
//   levels[0..d) | ordering | weighting | f64 threshold | f64 s |
//   bitmap ceil(N/8) bytes (serialization order, bit i of byte i/8 is
//   position i, least significant bit first, set = retained) |
//   retained coefficients as f64, little-endian, in serialization order.
struct CompressedBlob {
  CodecConfig config;
  std::vector<std::size_t> dims;
  std::vector<int> levels;
  std::vector<std::uint8_t> bitmap;
  std::vector<double> payload;

  std::size_t total_coefficients() const;
  bool retained(std::size_t position) const;

  std::vector<std::uint8_t> to_bytes() const;
  static CompressedBlob from_bytes(std::span<const std::uint8_t> bytes);
};

// Threshold the transform of `data`; coefficients whose weighted magnitude
// falls below the threshold are dropped, the coarsest scaling block is
// always kept.  The report is computed against an immediate reconstruction.
std::pair<CompressedBlob, RateDistortionReport> compress(const TensorArray& data,
                                                         const CodecConfig& config);

TensorArray decompress(const CompressedBlob& blob);

struct DecayEntry {
  double magnitude;  // weighted, descending
  int level;
};
std::vector<DecayEntry> coefficient_decay(const TensorArray& data, const CodecConfig& config);

// Reports for a list of thresholds over one shared forward transform.
std::vector<RateDistortionReport> rd_sweep(const TensorArray& data, const CodecConfig& config,
                                           std::span<const double> thresholds);

std::string report_to_json(const RateDistortionReport& report);

// Bisection on the threshold against the exact reconstruction error: finds
// the largest threshold whose error stays at or below the target.  The error
// is a step function of the threshold, so an exact hit may not exist; the
// result reports the bracketing thresholds and whether the achieved error
// lies within 5% of the target.
struct ThresholdSearch {
  double threshold = 0.0;       // chosen (lower bracket)
  double upper_threshold = 0.0; // first threshold seen to exceed the target
  double upper_error = 0.0;
  int iterations = 0;
  bool within_tolerance = false;
  RateDistortionReport report;  // at the chosen threshold
};
ThresholdSearch threshold_for_l2(const TensorArray& data, const CodecConfig& config,
                                 double target_l2, int max_iterations = 40);

void write_blob_file(const std::string& path, const CompressedBlob& blob);
CompressedBlob read_blob_file(const std::string& path);

// Raw little-endian float64 array I/O for the command-line tools.
std::vector<double> read_raw_doubles(const std::string& path);
void write_raw_doubles(const std::string& path, std::span<const double> values);

}  // namespace pwave
