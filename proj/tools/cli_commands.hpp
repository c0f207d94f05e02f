#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pwave::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;

struct CompressOptions {
  std::string input;
  std::string output;
  std::string report_path;  // optional; JSON report goes to stdout otherwise
  std::vector<std::size_t> shape;
  int order = 1;
  std::string kind = "cg";
  std::string ordering = "mallat";
  std::string weighting = "l2";
  double threshold = -1.0;  // one of threshold/target_l2 must be set
  double target_l2 = -1.0;
  double s = 0.0;
};
int cmd_compress(const CompressOptions& opt);

struct DecompressOptions {
  std::string input;
  std::string output;
};
int cmd_decompress(const DecompressOptions& opt);

struct AnalyzeOptions {
  std::string input;
  std::vector<std::size_t> shape;
  int order = 1;
  std::string kind = "cg";
  std::string ordering = "mallat";
  std::string weighting = "l2";
  double s = 0.0;
  std::string csv;
};
int cmd_analyze(const AnalyzeOptions& opt);

struct BasisOptions {
  int order = 1;
  std::string kind = "cg";
  int level = 0;
  int depth = 6;
  std::string which = "psi";  // phi | psi | dual-phi | dual-psi
  std::size_t index = 0;
  std::string csv;
};
int cmd_basis(const BasisOptions& opt);

int cmd_selftest();

}  // namespace pwave::cli
