#include <CLI11.hpp>

#include "cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pwave: error-controlled compression of gridded scientific data\n"
               "through a piecewise-polynomial wavelet lifting transform"};
  app.require_subcommand(1);

  pwave::cli::CompressOptions comp;
  CLI::App* compress = app.add_subcommand("compress", "threshold-code a raw float64 array");
  compress->add_option("--input", comp.input, "raw little-endian float64 file")->required();
  compress->add_option("--shape", comp.shape, "axis sizes, e.g. --shape 257,257")->required()->delimiter(',');
  compress->add_option("--order", comp.order, "polynomial order q")->default_val(1);
  compress->add_option("--kind", comp.kind, "projector family: interp|cg|dg")->default_val("cg");
  compress->add_option("--ordering", comp.ordering, "mallat|separable")->default_val("mallat");
  compress->add_option("--weighting", comp.weighting, "raw|l2|s-weighted")->default_val("l2");
  compress->add_option("--threshold", comp.threshold, "absolute threshold on weighted magnitudes");
  compress->add_option("--target-l2", comp.target_l2, "pick the threshold to meet this L2 error");
  compress->add_option("--s", comp.s, "smoothness weight exponent")->default_val(0.0);
  compress->add_option("--output", comp.output, "compressed blob path")->required();
  compress->add_option("--report", comp.report_path, "write the JSON report here");

  pwave::cli::DecompressOptions dec;
  CLI::App* decompress = app.add_subcommand("decompress", "reconstruct a raw float64 array");
  decompress->add_option("--input", dec.input, "compressed blob path")->required();
  decompress->add_option("--output", dec.output, "raw little-endian float64 output")->required();

  pwave::cli::AnalyzeOptions ana;
  CLI::App* analyze = app.add_subcommand("analyze", "export the sorted coefficient decay");
  analyze->add_option("--input", ana.input, "raw little-endian float64 file")->required();
  analyze->add_option("--shape", ana.shape, "axis sizes")->required()->delimiter(',');
  analyze->add_option("--order", ana.order, "polynomial order q")->default_val(1);
  analyze->add_option("--kind", ana.kind, "projector family: interp|cg|dg")->default_val("cg");
  analyze->add_option("--ordering", ana.ordering, "mallat|separable")->default_val("mallat");
  analyze->add_option("--weighting", ana.weighting, "raw|l2|s-weighted")->default_val("l2");
  analyze->add_option("--s", ana.s, "smoothness weight exponent")->default_val(0.0);
  analyze->add_option("--csv", ana.csv, "decay CSV output path")->required();

  pwave::cli::BasisOptions bas;
  CLI::App* basis = app.add_subcommand("basis", "sample a basis function on a deep grid");
  basis->add_option("--order", bas.order, "polynomial order q")->default_val(1);
  basis->add_option("--kind", bas.kind, "projector family: interp|cg|dg")->default_val("cg");
  basis->add_option("--level", bas.level, "level of the function")->default_val(0);
  basis->add_option("--depth", bas.depth, "sampling depth in levels")->default_val(6);
  basis->add_option("--which", bas.which, "phi|psi|dual-phi|dual-psi")->default_val("psi");
  basis->add_option("--index", bas.index, "function index within the level")->default_val(0);
  basis->add_option("--csv", bas.csv, "output CSV path (x,value)")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : pwave::cli::kUsageError;
  }

  if (compress->parsed()) return pwave::cli::cmd_compress(comp);
  if (decompress->parsed()) return pwave::cli::cmd_decompress(dec);
  if (analyze->parsed()) return pwave::cli::cmd_analyze(ana);
  if (basis->parsed()) return pwave::cli::cmd_basis(bas);
  if (selftest->parsed()) return pwave::cli::cmd_selftest();
  return pwave::cli::kUsageError;
}
