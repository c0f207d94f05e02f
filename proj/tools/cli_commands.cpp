#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "pwave/basis.hpp"
#include "pwave/codec.hpp"
#include "pwave/selftest.hpp"

namespace pwave::cli {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

CodecConfig make_config(const std::string& kind, int order, const std::string& ordering,
                        const std::string& weighting, double s) {
  CodecConfig cfg;
  cfg.kind = projector_kind_from_string(kind);
  cfg.order = order;
  cfg.ordering = ordering_from_string(ordering);
  cfg.weighting = weighting_from_string(weighting);
  cfg.s = s;
  if (s != 0.0 && cfg.weighting == Weighting::L2) cfg.weighting = Weighting::SWeighted;
  if (cfg.weighting == Weighting::SWeighted && s >= order + 0.5)
    std::cerr << "warning: smoothness weight s=" << s
              << " is beyond the stable range for order " << order << "\n";
  return cfg;
}

TensorArray load_array(const std::string& path, const std::vector<std::size_t>& shape,
                       int order) {
  if (shape.empty() || shape.size() > 3)
    throw std::invalid_argument("shape must name 1 to 3 axis sizes");
  for (std::size_t n : shape)
    if (auto err = validate_input_length(n, order, levels_for_size(n, order).value_or(1)))
      throw std::invalid_argument(*err);
  std::vector<double> values = read_raw_doubles(path);
  if (values.size() != shape_product(shape))
    throw std::invalid_argument("raw file holds " + std::to_string(values.size()) +
                                " values but the shape needs " +
                                std::to_string(shape_product(shape)));
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("input contains non-finite values");
  return TensorArray(shape, std::move(values));
}

void emit_report(const RateDistortionReport& report, const std::string& path) {
  const std::string json = report_to_json(report);
  if (path.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << json << "\n";
  }
}

}  // namespace

int cmd_compress(const CompressOptions& opt) {
  const bool has_tau = opt.threshold >= 0.0;
  const bool has_target = opt.target_l2 >= 0.0;
  if (has_tau == has_target) {
    std::cerr << "error: exactly one of --threshold or --target-l2 is required\n";
    return kUsageError;
  }
  try {
    CodecConfig cfg = make_config(opt.kind, opt.order, opt.ordering, opt.weighting, opt.s);
    const TensorArray data = load_array(opt.input, opt.shape, opt.order);
    CompressedBlob blob;
    RateDistortionReport report;
    if (has_tau) {
      cfg.threshold = opt.threshold;
      std::tie(blob, report) = compress(data, cfg);
    } else {
      const ThresholdSearch search = threshold_for_l2(data, cfg, opt.target_l2);
      cfg.threshold = search.threshold;
      if (!search.within_tolerance)
        std::cerr << "note: error is quantized near the target; thresholds [" << search.threshold
                  << ", " << search.upper_threshold << "] bracket it with errors ["
                  << search.report.l2_error << ", " << search.upper_error << "]\n";
      std::tie(blob, report) = compress(data, cfg);
    }
    write_blob_file(opt.output, blob);
    emit_report(report, opt.report_path);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
}

int cmd_decompress(const DecompressOptions& opt) {
  try {
    const CompressedBlob blob = read_blob_file(opt.input);
    const TensorArray data = decompress(blob);
    write_raw_doubles(opt.output, data.values());
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
}

int cmd_analyze(const AnalyzeOptions& opt) {
  try {
    const CodecConfig cfg = make_config(opt.kind, opt.order, opt.ordering, opt.weighting, opt.s);
    const TensorArray data = load_array(opt.input, opt.shape, opt.order);
    const std::vector<DecayEntry> decay = coefficient_decay(data, cfg);

    std::ofstream out(opt.csv);
    if (!out) throw std::runtime_error("cannot open for writing: " + opt.csv);
    out << "rank,magnitude,level\n";
    for (std::size_t r = 0; r < decay.size(); ++r)
      out << r + 1 << "," << std::scientific << decay[r].magnitude << "," << decay[r].level
          << "\n";

    int max_level = 0;
    for (const DecayEntry& e : decay) max_level = std::max(max_level, e.level);
    std::vector<double> energy(max_level + 1, 0.0);
    std::vector<std::size_t> counts(max_level + 1, 0);
    for (const DecayEntry& e : decay) {
      energy[e.level] += e.magnitude * e.magnitude;
      counts[e.level] += 1;
    }
    std::printf("%-8s%-12s%s\n", "level", "count", "energy");
    for (int l = 0; l <= max_level; ++l)
      std::printf("%-8d%-12zu%.6e\n", l, counts[l], energy[l]);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
}

int cmd_basis(const BasisOptions& opt) {
  try {
    if (opt.level < 0 || opt.level >= opt.depth) {
      std::cerr << "error: --level must lie in [0, depth)\n";
      return kUsageError;
    }
    const bool dual = opt.which == "dual-phi" || opt.which == "dual-psi";
    const bool wavelet = opt.which == "psi" || opt.which == "dual-psi";
    if (!dual && !wavelet && opt.which != "phi") {
      std::cerr << "error: --which must be phi, psi, dual-phi, or dual-psi\n";
      return kUsageError;
    }
    TransformPlan plan(projector_kind_from_string(opt.kind), opt.order, opt.depth);
    const BasisPair fns = dual ? cascade_dual(plan, opt.level) : cascade_primal(plan, opt.level);
    const DenseMatrix& cols = wavelet ? fns.psi : fns.phi;
    if (opt.index >= cols.cols()) {
      std::cerr << "error: --index out of range (have " << cols.cols() << " functions)\n";
      return kUsageError;
    }
    std::ofstream out(opt.csv);
    if (!out) throw std::runtime_error("cannot open for writing: " + opt.csv);
    out << "x,value\n";
    for (std::size_t p = 0; p < cols.rows(); ++p)
      out << plan.grid().node_coordinate(opt.depth, p) << "," << std::scientific
          << cols(p, opt.index) << "\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
}

int cmd_selftest() {
  const std::vector<CriterionResult> results = run_acceptance();
  bool all_pass = true;
  std::size_t passed = 0;
  for (const CriterionResult& r : results) {
    std::printf("%-4d %-28s %s  %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    all_pass = all_pass && r.pass;
    passed += r.pass ? 1 : 0;
  }
  std::printf("%zu/%zu criteria passed\n", passed, results.size());
  return all_pass ? kOk : kUsageError;
}

}  // namespace pwave::cli
