#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ricci/errors.hpp"
#include "runner.hpp"

using ricci::ErrorCode;
using ricci::GeometryError;
namespace cli = ricci::cli;

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ManifestError:
    case ErrorCode::UnknownModel: return 2;
    default: return 3;
  }
}

void report_error(ErrorCode code, const std::string& message) {
  const cli::json err = {{"schema", cli::kReportSchema},
                         {"error", {{"code", std::string(ricci::to_string(code))}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean Ricci curvatures, Weitzenboeck terms and volume expansions on model manifolds"};
  std::string manifest_path, task, manifold, out;
  std::uint64_t seed = 0;
  double tol_scale = 0.0;
  app.add_option("--manifest", manifest_path, "JSON run manifest")->check(CLI::ExistingFile);
  app.add_option("--task", task, "curvature|means|weitz|kappa|expand|verify")
      ->check(CLI::IsMember({"curvature", "means", "weitz", "kappa", "expand", "verify"}));
  app.add_option("--manifold", manifold, "catalogue model, e.g. space_form:n=5,kappa=1");
  app.add_option("--out", out, "report path (.csv selects the table output)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (default 0x5EED)");
  auto* tol_opt = app.add_option("--tol-scale", tol_scale, "multiplier on every tolerance")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    cli::RunManifest m;
    if (!manifest_path.empty()) {
      std::ifstream f(manifest_path);
      cli::json doc;
      try {
        doc = cli::json::parse(f);
      } catch (const cli::json::exception& e) {
        throw GeometryError(ErrorCode::ManifestError, std::string("unreadable manifest: ") + e.what());
      }
      m = cli::parse_manifest(doc);
    }
    if (!manifold.empty()) cli::apply_manifold_flag(m, manifold);
    if (!task.empty()) m.task = cli::parse_task(task);
    if (!out.empty()) m.out_path = out;
    if (*seed_opt) m.seed = seed;
    if (*tol_opt) m.tol_scale = tol_scale;
    return cli::emit(m, cli::run(m));
  } catch (const GeometryError& e) {
    report_error(e.code(), e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    report_error(ErrorCode::TaskError, e.what());
    return 3;
  }
}
