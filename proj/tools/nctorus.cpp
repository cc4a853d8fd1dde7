#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "nctorus/errors.hpp"
#include "nctorus/manifest.hpp"
#include "nctorus/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverings, induced connections and curvature on noncommutative tori"};
  app.require_subcommand(1);

  std::string manifest_path;
  std::string json_path;
  std::optional<std::uint64_t> seed;
  bool negative_control = false;
  std::size_t enumerate_cap = nct::kDefaultEnumerateCap;
  int samples = 10;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest_path, "Run description (key = value lines)")->required();
    sub->add_option("--json", json_path, "Also write the report as JSON to this path");
    sub->add_option("--seed", seed, "Override the manifest seed");
    sub->add_flag("--negative-control", negative_control, "Add the deliberately broken checks");
    sub->add_option("--enumerate-cap", enumerate_cap, "Maximum number of covering branches")->check(CLI::PositiveNumber);
    sub->add_option("--samples", samples, "Random samples per randomized check")->check(CLI::Range(1, 1000));
  };
  auto* cover = app.add_subcommand("cover", "List covering branches and check the congruence");
  auto* connection = app.add_subcommand("connection", "Projector ranks and Leibniz residuals");
  auto* curvature = app.add_subcommand("curvature", "Curvature of the induced connection");
  auto* verify = app.add_subcommand("verify", "Run every invariant suite");
  for (auto* sub : {cover, connection, curvature, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    auto manifest = nct::load_manifest(manifest_path);
    if (seed) manifest.seed = *seed;
    const nct::RunOptions opt{negative_control, enumerate_cap, samples};

    nct::Report report;
    if (cover->parsed()) report = nct::cmd_cover(manifest, opt);
    if (connection->parsed()) report = nct::cmd_connection(manifest, opt);
    if (curvature->parsed()) report = nct::cmd_curvature(manifest, opt);
    if (verify->parsed()) report = nct::cmd_verify(manifest, opt);

    std::fputs(report.text().c_str(), stdout);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return kExitUsage;
      }
      out << report.json().dump(2) << "\n";
    }
    return report.ok() ? kExitPass : kExitFail;
  } catch (const nct::ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << " (raise --enumerate-cap)\n";
  } catch (const nct::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
