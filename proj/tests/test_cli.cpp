#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "cli_commands.hpp"
#include "pwave/codec.hpp"

using namespace pwave;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pwave_cli_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("lossless compress/decompress round trip is bit exact") {
  TempDir dir;
  const std::vector<double> values = random_values(33 * 17, 11);
  write_raw_doubles(dir.file("in.raw"), values);

  cli::CompressOptions comp;
  comp.input = dir.file("in.raw");
  comp.output = dir.file("out.pwav");
  comp.report_path = dir.file("report.json");
  comp.shape = {33, 17};
  comp.order = 1;
  comp.threshold = 0.0;
  CHECK(cli::cmd_compress(comp) == cli::kOk);

  cli::DecompressOptions dec;
  dec.input = dir.file("out.pwav");
  dec.output = dir.file("back.raw");
  CHECK(cli::cmd_decompress(dec) == cli::kOk);

  // the stored float64 payload is bit-exact: it holds every transform
  // coefficient of the input
  const CompressedBlob blob = read_blob_file(dir.file("out.pwav"));
  CHECK(blob.payload.size() == values.size());
  TensorTransform t(ProjectorKind::CG, 1, {5, 4});
  const TensorArray coeffs = t.forward(TensorArray({33, 17}, values), Ordering::Mallat);
  const std::vector<std::size_t> order = t.pyramid_order(Ordering::Mallat);
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    CHECK(blob.payload[pos] == coeffs[order[pos]]);

  // and the reconstruction agrees with the input to transform roundoff
  const std::vector<double> back = read_raw_doubles(dir.file("back.raw"));
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    scale = std::max(scale, std::abs(values[i]));
    diff = std::max(diff, std::abs(values[i] - back[i]));
  }
  CHECK(diff <= 1e-12 * scale);

  const std::string report = slurp(dir.file("report.json"));
  CHECK(report.find("\"cr\": 1.0") != std::string::npos);
  CHECK(report.find("l2_error") != std::string::npos);
  CHECK(report.find("per_level_retained") != std::string::npos);
  CHECK(report.find("threshold") != std::string::npos);
}

TEST_CASE("inadmissible sizes exit with a data error naming admissible sizes") {
  TempDir dir;
  write_raw_doubles(dir.file("in.raw"), random_values(10, 3));
  cli::CompressOptions comp;
  comp.input = dir.file("in.raw");
  comp.output = dir.file("out.pwav");
  comp.shape = {10};
  comp.order = 1;
  comp.threshold = 0.0;
  CHECK(cli::cmd_compress(comp) == cli::kDataError);
}

TEST_CASE("missing threshold flags are a usage error") {
  cli::CompressOptions comp;
  comp.input = "nonexistent.raw";
  comp.output = "out.pwav";
  comp.shape = {9};
  CHECK(cli::cmd_compress(comp) == cli::kUsageError);
  comp.threshold = 0.0;
  comp.target_l2 = 1e-3;
  CHECK(cli::cmd_compress(comp) == cli::kUsageError);
}

TEST_CASE("non-finite input is a data error") {
  TempDir dir;
  std::vector<double> values = random_values(9, 5);
  values[3] = std::nan("");
  write_raw_doubles(dir.file("in.raw"), values);
  cli::CompressOptions comp;
  comp.input = dir.file("in.raw");
  comp.output = dir.file("out.pwav");
  comp.shape = {9};
  comp.order = 1;
  comp.threshold = 0.0;
  CHECK(cli::cmd_compress(comp) == cli::kDataError);
}

TEST_CASE("target error selection stays within the budget") {
  TempDir dir;
  const std::size_t n = 257;
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = double(i) / double(n - 1);
    values[i] = std::sin(6.28318 * x) + 0.3 * std::sin(40.0 * x);
  }
  write_raw_doubles(dir.file("in.raw"), values);

  cli::CompressOptions comp;
  comp.input = dir.file("in.raw");
  comp.output = dir.file("out.pwav");
  comp.report_path = dir.file("report.json");
  comp.shape = {n};
  comp.order = 1;
  comp.target_l2 = 1e-4;
  CHECK(cli::cmd_compress(comp) == cli::kOk);

  cli::DecompressOptions dec;
  dec.input = dir.file("out.pwav");
  dec.output = dir.file("back.raw");
  CHECK(cli::cmd_decompress(dec) == cli::kOk);
  const std::vector<double> back = read_raw_doubles(dir.file("back.raw"));
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) sq += (back[i] - values[i]) * (back[i] - values[i]);
  CHECK(std::sqrt(sq / double(n)) <= 1e-4);
  // and the compression actually dropped coefficients
  CompressedBlob blob = read_blob_file(dir.file("out.pwav"));
  CHECK(blob.payload.size() < n);
}

TEST_CASE("analyze writes the decay CSV") {
  TempDir dir;
  const std::size_t n = 65;
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = std::exp(-double(i) / 10.0);
  write_raw_doubles(dir.file("in.raw"), values);

  cli::AnalyzeOptions ana;
  ana.input = dir.file("in.raw");
  ana.shape = {n};
  ana.order = 2;
  ana.csv = dir.file("decay.csv");
  CHECK(cli::cmd_analyze(ana) == cli::kOk);

  std::ifstream in(dir.file("decay.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header == "rank,magnitude,level");
  std::size_t rows = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::string line; std::getline(in, line);) {
    ++rows;
    const auto c1 = line.find(','), c2 = line.rfind(',');
    REQUIRE(c1 != std::string::npos);
    REQUIRE(c2 != c1);
    const double mag = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(mag <= prev);
    prev = mag;
  }
  CHECK(rows == n);
}

TEST_CASE("basis export matches the Haar step and the hat wavelet") {
  TempDir dir;
  cli::BasisOptions bas;
  bas.order = 0;
  bas.kind = "cg";
  bas.level = 0;
  bas.depth = 3;
  bas.which = "psi";
  bas.index = 0;
  bas.csv = dir.file("haar.csv");
  CHECK(cli::cmd_basis(bas) == cli::kOk);
  {
    std::ifstream in(dir.file("haar.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,value");
    std::vector<double> vals;
    while (std::getline(in, line)) vals.push_back(std::stod(line.substr(line.find(',') + 1)));
    REQUIRE(vals.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(vals[i] == (i < 4 ? -0.5 : 0.5));
  }

  // the interpolating wavelet is the next-level nodal hat
  bas.order = 1;
  bas.kind = "interp";
  bas.level = 1;
  bas.depth = 4;
  bas.index = 1;
  bas.csv = dir.file("hat.csv");
  CHECK(cli::cmd_basis(bas) == cli::kOk);
  {
    std::ifstream in(dir.file("hat.csv"));
    std::string line;
    std::getline(in, line);
    std::vector<double> vals;
    while (std::getline(in, line)) vals.push_back(std::stod(line.substr(line.find(',') + 1)));
    REQUIRE(vals.size() == 17);
    // surplus node 1 of level 1 sits at x = 3/4, deep index 12: unit peak
    // with linear decay to the level-2 neighbors
    CHECK(vals[12] == doctest::Approx(1.0));
    CHECK(vals[8] == doctest::Approx(0.0));
    CHECK(vals[16] == doctest::Approx(0.0));
    CHECK(vals[10] == doctest::Approx(0.5));
  }

  bas.which = "nope";
  CHECK(cli::cmd_basis(bas) == cli::kUsageError);
  bas.which = "psi";
  bas.index = 99;
  CHECK(cli::cmd_basis(bas) == cli::kUsageError);
}

TEST_CASE("compression through the command layer is deterministic") {
  TempDir dir;
  const std::vector<double> values = random_values(65, 9);
  write_raw_doubles(dir.file("in.raw"), values);
  cli::CompressOptions comp;
  comp.input = dir.file("in.raw");
  comp.shape = {65};
  comp.order = 2;
  comp.threshold = 0.001;
  comp.output = dir.file("a.pwav");
  CHECK(cli::cmd_compress(comp) == cli::kOk);
  comp.output = dir.file("b.pwav");
  CHECK(cli::cmd_compress(comp) == cli::kOk);
  CHECK(slurp(dir.file("a.pwav")) == slurp(dir.file("b.pwav")));
}
