// SPDX-FileCopyrightText: © 2026 The npuperf Authors
//
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "npuperf/error.hpp"
#include "npuperf/operator_models.hpp"
#include "npuperf/report.hpp"
#include "npuperf/scenario.hpp"
#include "npuperf/spec_library.hpp"

namespace {

using namespace npuperf;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << text;
  if (!out) throw IoError("cannot write '" + out_path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"npuperf: analytical performance models for AI accelerators"};
  app.set_version_flag("--version", std::string(NPUPERF_VERSION));
  app.require_subcommand(1);

  std::string scenario_ref;
  std::string device;
  std::string format = "csv";
  std::string out_path;
  auto* run = app.add_subcommand("run", "Evaluate a scenario and emit a report");
  run->add_option("scenario", scenario_ref, "Scenario name or path")->required();
  run->add_option("--device", device, "Evaluate on this device instead of the scenario's own");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", out_path, "Output file (default stdout)");

  std::string device_a;
  std::string device_b;
  auto* compare = app.add_subcommand("compare", "Evaluate a scenario on two devices side by side");
  compare->add_option("scenario", scenario_ref, "Scenario name or path")->required();
  compare->add_option("--device-a", device_a, "First device")->required();
  compare->add_option("--device-b", device_b, "Second device")->required();
  compare->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  compare->add_option("--out", out_path, "Output file (default stdout)");

  auto* list = app.add_subcommand("list-presets", "List bundled devices and scenarios");

  double target = 7.4;
  auto* fit = app.add_subcommand("fit-overlap", "Fit pipeline_overlap to a target mean PagedAttention speedup");
  fit->add_option("--device", device, "Device to fit")->required();
  fit->add_option("--target", target, "Mean block_list speedup on the calibration grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      ScenarioSpec scenario = load_scenario_file(resolve_scenario_path(scenario_ref));
      if (!device.empty()) scenario.devices = {device};
      write_output(emit_report(run_scenario(scenario), report_format_from_string(format)), out_path);
    } else if (compare->parsed()) {
      const ScenarioSpec scenario = load_scenario_file(resolve_scenario_path(scenario_ref));
      const ReportTable table = compare_devices(scenario, load_device(device_a), load_device(device_b));
      write_output(emit_report(table, report_format_from_string(format)), out_path);
    } else if (list->parsed()) {
      std::string text = "devices:\n";
      for (const auto& p : list_device_presets()) text += "  " + p.name + "  " + p.description + "\n";
      text += "scenarios:\n";
      for (const auto& p : list_scenario_presets()) text += "  " + p.name + "  " + p.description + "\n";
      write_output(text, "");
    } else if (fit->parsed()) {
      const DeviceSpec spec = load_device(device);
      const double overlap = fit_pipeline_overlap(spec, overlap_calibration_grid(), target);
      write_output("pipeline_overlap = " + format_double(overlap) + "\n", "");
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
