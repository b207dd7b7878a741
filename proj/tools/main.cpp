// quatvisc: runs the verification suites and writes JSON reports.
//
//   quatvisc verify-spectral | verify-hessian | build-operator | viscosity-test | report
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad usage or config,
// 3 unusable inputs (corrupt cache, missing reports).

#include "quatvisc/operator.hpp"
#include "quatvisc/verify/config.hpp"
#include "quatvisc/verify/report.hpp"
#include "quatvisc/verify/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

namespace qv = quatvisc::verify;

namespace {

void print_report(const qv::Report& report) {
  for (const auto& c : report.checks) {
    std::printf("%s  %-28s worst %-14.6g %s %-12.6g (%zu samples)", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.worst,
                c.relation.c_str(), c.threshold, c.samples);
    if (!c.pass && c.witness) {
      std::printf("  witness seed=%llu stream=%s index=%llu",
                  static_cast<unsigned long long>(c.witness->seed.value_or(report.seed)), c.witness->stream.c_str(),
                  static_cast<unsigned long long>(c.witness->index));
    }
    std::printf("\n");
  }
  for (const auto& [key, value] : report.constants.items()) {
    if (value.is_primitive()) std::printf("  %s = %s\n", key.c_str(), value.dump().c_str());
  }
  std::printf("%s: %s\n", report.suite.c_str(), report.pass() ? "pass" : "FAIL");
}

int run_suite(const std::string& suite, qv::RunConfig config,
              const std::function<qv::Report(const qv::RunConfig&)>& run) {
  qv::finalize(config, suite);
  std::filesystem::create_directories(config.out);
  const qv::Report report = run(config);
  qv::write_json(report.to_json(), qv::suite_report_path(config.out, suite));
  print_report(report);
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of a nonclassical viscosity solution built from the quaternion cubic"};
  qv::RunConfig config;
  qv::add_run_options(app, config);
  app.require_subcommand(1);

  const std::map<std::string, std::function<qv::Report(const qv::RunConfig&)>> suites{
      {"verify-spectral", qv::run_verify_spectral},
      {"verify-hessian", qv::run_verify_hessian},
      {"build-operator", qv::run_build_operator},
      {"viscosity-test", qv::run_viscosity_test},
  };
  const std::map<std::string, std::string> help{
      {"verify-spectral", "Spectrum of the cubic form: characteristic roots, bounds, delta"},
      {"verify-hessian", "Hessian map: finite differences, separation witnesses, pair ratios"},
      {"build-operator", "Sample Sigma, build F, check cone condition, zero level set, ellipticity"},
      {"viscosity-test", "Touch w by quadratics and evaluate F (needs sigma.cache)"},
  };
  for (const auto& [name, text] : help) app.add_subcommand(name, text)->fallthrough();
  app.add_subcommand("report", "Merge suite reports into report.json and tables/*.csv")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "report") {
      const qv::Json merged = qv::run_report(config.out);
      std::printf("wrote %s\n", (config.out / "report.json").string().c_str());
      return merged["pass"].get<bool>() ? 0 : 1;
    }
    return run_suite(name, config, suites.at(name));
  } catch (const qv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const quatvisc::CacheError& e) {
    std::cerr << "cache error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
