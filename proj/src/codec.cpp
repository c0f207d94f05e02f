#include "pwave/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pwave {

const char* to_string(Weighting weighting) {
  switch (weighting) {
    case Weighting::Raw: return "raw";
    case Weighting::L2: return "l2";
    case Weighting::SWeighted: return "s-weighted";
  }
  return "?";
}

Weighting weighting_from_string(const std::string& name) {
  if (name == "raw") return Weighting::Raw;
  if (name == "l2" || name == "l2-normalized") return Weighting::L2;
  if (name == "s-weighted" || name == "sweighted") return Weighting::SWeighted;
  throw std::invalid_argument("unknown weighting: " + name);
}

std::size_t CompressedBlob::total_coefficients() const {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

bool CompressedBlob::retained(std::size_t position) const {
  return (bitmap[position >> 3] >> (position & 7)) & 1;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(bits >> (8 * i)));
}

class ByteReader {
public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }

  std::vector<std::uint8_t> raw(std::size_t n) {
    need(n);
    std::vector<std::uint8_t> out(bytes_.begin() + pos_, bytes_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw std::invalid_argument("blob: truncated data");
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[8] = {'P', 'W', 'A', 'V', '0', '0', '0', '1'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

std::vector<std::uint8_t> CompressedBlob::to_bytes() const {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 8);
  put_u32(out, kVersion);
  put_u32(out, std::uint32_t(dims.size()));
  for (std::size_t d : dims) put_u32(out, std::uint32_t(d));
  put_u32(out, std::uint32_t(config.order));
  put_u32(out, std::uint32_t(config.kind));
  for (int j : levels) put_u32(out, std::uint32_t(j));
  put_u32(out, std::uint32_t(config.ordering));
  put_u32(out, std::uint32_t(config.weighting));
  put_f64(out, config.threshold);
  put_f64(out, config.s);
  out.insert(out.end(), bitmap.begin(), bitmap.end());
  for (double v : payload) put_f64(out, v);
  return out;
}

CompressedBlob CompressedBlob::from_bytes(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  const std::vector<std::uint8_t> magic = in.raw(8);
  if (!std::equal(magic.begin(), magic.end(), kMagic))
    throw std::invalid_argument("blob: bad magic");
  if (in.u32() != kVersion) throw std::invalid_argument("blob: unsupported version");

  CompressedBlob blob;
  const std::uint32_t rank = in.u32();
  if (rank == 0 || rank > 3) throw std::invalid_argument("blob: unsupported rank");
  for (std::uint32_t a = 0; a < rank; ++a) blob.dims.push_back(in.u32());
  blob.config.order = int(in.u32());
  const std::uint32_t kind = in.u32();
  if (kind > 2) throw std::invalid_argument("blob: unknown projector kind");
  blob.config.kind = ProjectorKind(kind);
  for (std::uint32_t a = 0; a < rank; ++a) blob.levels.push_back(int(in.u32()));
  const std::uint32_t ordering = in.u32();
  if (ordering > 1) throw std::invalid_argument("blob: unknown ordering");
  blob.config.ordering = Ordering(ordering);
  const std::uint32_t weighting = in.u32();
  if (weighting > 2) throw std::invalid_argument("blob: unknown weighting");
  blob.config.weighting = Weighting(weighting);
  blob.config.threshold = in.f64();
  blob.config.s = in.f64();

  const std::size_t total = blob.total_coefficients();
  blob.bitmap = in.raw((total + 7) / 8);
  std::size_t retained = 0;
  for (std::size_t i = 0; i < total; ++i)
    if (blob.retained(i)) ++retained;
  if (in.remaining() != retained * 8)
    throw std::invalid_argument("blob: payload length does not match the bitmap");
  blob.payload.resize(retained);
  for (std::size_t i = 0; i < retained; ++i) blob.payload[i] = in.f64();
  return blob;
}

namespace {

struct CoefficientField {
  TensorTransform transform;
  TensorArray coeffs;
  CoefficientMeta meta;
  std::vector<std::size_t> order;
  std::vector<double> weight;  // thresholding weight per linear index
};

CoefficientField analyze(const TensorArray& data, const CodecConfig& config) {
  for (double v : data.values())
    if (!std::isfinite(v)) throw std::invalid_argument("compress: input contains non-finite values");
  CoefficientField field{TensorTransform::for_shape(config.kind, config.order, data.dims()),
                         {}, {}, {}, {}};
  field.coeffs = field.transform.forward(data, config.ordering);
  field.meta = field.transform.coefficient_meta(config.ordering);
  field.order = field.transform.pyramid_order(config.ordering);
  field.weight.resize(field.coeffs.size(), 1.0);
  if (config.weighting != Weighting::Raw) {
    for (std::size_t i = 0; i < field.weight.size(); ++i) {
      double w = field.meta.norm[i];
      if (config.weighting == Weighting::SWeighted && field.meta.label[i] > 0)
        w *= std::exp2(config.s * double(field.meta.label[i] - 1));
      field.weight[i] = w;
    }
  }
  return field;
}

RateDistortionReport make_report(const CoefficientField& field, const TensorArray& data,
                                 const CodecConfig& config, double threshold,
                                 const std::vector<char>& keep, std::size_t retained,
                                 bool with_decay) {
  RateDistortionReport report;
  report.threshold = threshold;
  const std::size_t total = field.coeffs.size();
  report.cr = double(retained) / double(total);

  int max_label = 0;
  for (int l : field.meta.label) max_label = std::max(max_label, l);
  report.per_level_retained.assign(max_label + 1, 0);
  for (std::size_t i = 0; i < total; ++i)
    if (keep[i]) ++report.per_level_retained[field.meta.label[i]];

  TensorArray kept = field.coeffs;
  for (std::size_t i = 0; i < total; ++i)
    if (!keep[i]) kept[i] = 0.0;
  const TensorArray rec = field.transform.inverse(kept, config.ordering);
  double sq = 0.0, linf = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const double d = data[i] - rec[i];
    sq += d * d;
    linf = std::max(linf, std::abs(d));
  }
  report.l2_error = std::sqrt(sq / double(total));
  report.linf_error = linf;

  if (with_decay) {
    std::vector<double> mags(total);
    for (std::size_t i = 0; i < total; ++i) mags[i] = field.weight[i] * std::abs(field.coeffs[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    for (std::size_t rank = 1; rank <= total; rank *= 2)
      report.decay_samples.emplace_back(rank, mags[rank - 1]);
  }
  return report;
}

std::pair<CompressedBlob, RateDistortionReport> compress_field(const CoefficientField& field,
                                                               const TensorArray& data,
                                                               const CodecConfig& config) {
  const std::size_t total = field.coeffs.size();
  std::vector<char> keep(total, 0);
  std::size_t retained = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const bool in_alpha_block = field.meta.label[i] == 0;
    if (in_alpha_block || field.weight[i] * std::abs(field.coeffs[i]) >= config.threshold) {
      keep[i] = 1;
      ++retained;
    }
  }

  CompressedBlob blob;
  blob.config = config;
  blob.dims = data.dims();
  blob.levels = field.transform.levels();
  blob.bitmap.assign((total + 7) / 8, 0);
  blob.payload.reserve(retained);
  for (std::size_t pos = 0; pos < total; ++pos) {
    const std::size_t i = field.order[pos];
    if (keep[i]) {
      blob.bitmap[pos >> 3] |= std::uint8_t(1u << (pos & 7));
      blob.payload.push_back(field.coeffs[i]);
    }
  }
  return {std::move(blob),
          make_report(field, data, config, config.threshold, keep, retained, true)};
}

}  // namespace

std::pair<CompressedBlob, RateDistortionReport> compress(const TensorArray& data,
                                                         const CodecConfig& config) {
  return compress_field(analyze(data, config), data, config);
}

TensorArray decompress(const CompressedBlob& blob) {
  TensorTransform transform(blob.config.kind, blob.config.order, blob.levels);
  if (transform.shape() != blob.dims)
    throw std::invalid_argument("blob: dims do not match the level counts");
  TensorArray coeffs(blob.dims, 0.0);
  const std::vector<std::size_t> order = transform.pyramid_order(blob.config.ordering);
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    if (blob.retained(pos)) coeffs[order[pos]] = blob.payload.at(next++);
  return transform.inverse(coeffs, blob.config.ordering);
}

std::vector<DecayEntry> coefficient_decay(const TensorArray& data, const CodecConfig& config) {
  const CoefficientField field = analyze(data, config);
  std::vector<DecayEntry> entries(field.coeffs.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i] = {field.weight[i] * std::abs(field.coeffs[i]), field.meta.label[i]};
  std::sort(entries.begin(), entries.end(),
            [](const DecayEntry& a, const DecayEntry& b) { return a.magnitude > b.magnitude; });
  return entries;
}

std::vector<RateDistortionReport> rd_sweep(const TensorArray& data, const CodecConfig& config,
                                           std::span<const double> thresholds) {
  const CoefficientField field = analyze(data, config);
  std::vector<RateDistortionReport> reports;
  reports.reserve(thresholds.size());
  const std::size_t total = field.coeffs.size();
  std::vector<char> keep(total);
  for (double tau : thresholds) {
    std::size_t retained = 0;
    for (std::size_t i = 0; i < total; ++i) {
      keep[i] = field.meta.label[i] == 0 || field.weight[i] * std::abs(field.coeffs[i]) >= tau;
      if (keep[i]) ++retained;
    }
    reports.push_back(make_report(field, data, config, tau, keep, retained, false));
  }
  return reports;
}

ThresholdSearch threshold_for_l2(const TensorArray& data, const CodecConfig& config,
                                 double target_l2, int max_iterations) {
  if (!(target_l2 >= 0.0)) throw std::invalid_argument("threshold search: bad target");
  const CoefficientField field = analyze(data, config);
  const std::size_t total = field.coeffs.size();

  std::vector<char> keep(total);
  auto evaluate = [&](double tau) {
    std::size_t retained = 0;
    for (std::size_t i = 0; i < total; ++i) {
      keep[i] = field.meta.label[i] == 0 || field.weight[i] * std::abs(field.coeffs[i]) >= tau;
      if (keep[i]) ++retained;
    }
    return make_report(field, data, config, tau, keep, retained, false);
  };

  double hi = 0.0;
  for (std::size_t i = 0; i < total; ++i)
    hi = std::max(hi, field.weight[i] * std::abs(field.coeffs[i]));
  hi = std::nextafter(hi, std::numeric_limits<double>::infinity());

  ThresholdSearch search;
  RateDistortionReport at_hi = evaluate(hi);
  if (at_hi.l2_error <= target_l2) {
    // even dropping every detail stays within the budget
    search.threshold = hi;
    search.upper_threshold = hi;
    search.upper_error = at_hi.l2_error;
    search.report = std::move(at_hi);
    search.within_tolerance = search.report.l2_error >= 0.95 * target_l2 || target_l2 == 0.0;
    return search;
  }

  double lo = 0.0;
  RateDistortionReport at_lo = evaluate(lo);
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    RateDistortionReport r = evaluate(mid);
    ++search.iterations;
    if (r.l2_error <= target_l2) {
      lo = mid;
      at_lo = std::move(r);
    } else {
      hi = mid;
      search.upper_error = r.l2_error;
    }
  }
  search.threshold = lo;
  search.upper_threshold = hi;
  search.report = std::move(at_lo);
  search.within_tolerance = std::abs(search.report.l2_error - target_l2) <= 0.05 * target_l2;
  return search;
}

std::string report_to_json(const RateDistortionReport& report) {
  nlohmann::json j;
  j["cr"] = report.cr;
  j["l2_error"] = report.l2_error;
  j["linf_error"] = report.linf_error;
  j["per_level_retained"] = report.per_level_retained;
  j["threshold"] = report.threshold;
  return j.dump(2);
}

void write_blob_file(const std::string& path, const CompressedBlob& blob) {
  const std::vector<std::uint8_t> bytes = blob.to_bytes();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

CompressedBlob read_blob_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string s = ss.str();
  return CompressedBlob::from_bytes(
      std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::vector<double> read_raw_doubles(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string s = ss.str();
  if (s.size() % 8 != 0) throw std::runtime_error("raw file size is not a multiple of 8: " + path);
  std::vector<double> out(s.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b)
      bits |= std::uint64_t(std::uint8_t(s[8 * i + b])) << (8 * b);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

void write_raw_doubles(const std::string& path, std::span<const double> values) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(values.size() * 8);
  for (double v : values) put_f64(bytes, v);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pwave
