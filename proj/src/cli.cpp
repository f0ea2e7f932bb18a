#include "dtcmc/cli.hpp"

#include <fstream>
#include <future>

#include <CLI11.hpp>

#include "dtcmc/errors.hpp"
#include "dtcmc/scenario_io.hpp"

namespace dtcmc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ValidationError("cannot create output directory " + dir.string(), "output");
  }
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + p.string(), "output");
  return f;
}

void write_json(const fs::path& p, const json& j) { open_out(p) << j.dump(2) << "\n"; }

RunSummary write_run(const SimResult& res, const fs::path& dir, const RunManifest& manifest) {
  ensure_dir(dir);
  {
    auto f = open_out(dir / "timeseries.csv");
    write_timeseries_csv(res, f);
  }
  RunSummary s = summarize(res);
  write_json(dir / "summary.json", to_json(s));
  {
    auto f = open_out(dir / "table3_concordance.csv");
    write_table3_concordance_csv(compare_table3(table3()), f);
  }
  write_json(dir / "scenario.resolved.json", scenario_to_json(res.scenario));
  write_json(dir / "manifest.json", manifest.to_json());
  return s;
}

}  // namespace

json RunManifest::to_json() const {
  return {{"command", command},
          {"scenario_file", scenario_file.generic_string()},
          {"output_dir", output_dir.generic_string()},
          {"determinism", determinism},
          {"tool_version", tool_version},
          {"timeseries_version", kTimeseriesVersion}};
}

RunSummary cmd_run(const fs::path& scenario_file, const fs::path& out_dir) {
  const Scenario scn = load_scenario(scenario_file);
  ensure_dir(out_dir);
  const SimResult res = run_scenario(scn);
  return write_run(res, out_dir, RunManifest{scenario_file, out_dir, "run"});
}

json cmd_compare(const fs::path& scenario_file, const fs::path& out_dir) {
  Scenario fixed = load_scenario(scenario_file);
  if (!fixed.carrier.enabled()) {
    throw ValidationError("compare requires a carrier config", "carrier");
  }
  fixed.mode = ControlMode::kFixedFrequency;
  Scenario baseline = fixed;
  baseline.mode = ControlMode::kVariableFrequency;
  ensure_dir(out_dir);

  auto fut = std::async(std::launch::async, [&baseline] { return run_scenario(baseline); });
  SimResult res_fixed;
  try {
    res_fixed = run_scenario(fixed);
  } catch (...) {
    fut.wait();
    throw;
  }
  const SimResult res_base = fut.get();

  const RunSummary sf = write_run(res_fixed, out_dir / "fixed", RunManifest{scenario_file, out_dir / "fixed", "compare"});
  const RunSummary sb =
      write_run(res_base, out_dir / "baseline", RunManifest{scenario_file, out_dir / "baseline", "compare"});
  json delta = compare_summaries(sf, sb);
  write_json(out_dir / "compare.json", delta);
  write_json(out_dir / "manifest.json", RunManifest{scenario_file, out_dir, "compare"}.to_json());
  return delta;
}

int cmd_tables(const fs::path& out_dir, std::ostream& text_out) {
  ensure_dir(out_dir);
  {
    auto f = open_out(out_dir / "table1.csv");
    write_table1_csv(f);
  }
  const auto& t3 = table3();
  {
    auto f = open_out(out_dir / "table3_derived.csv");
    write_table3_csv(t3, f);
  }
  const auto c3 = compare_table3(t3);
  {
    auto f = open_out(out_dir / "table3_concordance.csv");
    write_table3_concordance_csv(c3, f);
  }
  {
    auto f = open_out(out_dir / "table2_concordance.csv");
    write_table2_concordance_csv(check_table2(), f);
  }
  const std::string text = render_tables_text();
  open_out(out_dir / "tables.txt") << text;
  text_out << text;
  return c3.mismatches();
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-frequency DTC of an induction machine fed by a direct matrix converter"};
  app.require_subcommand(1);
  std::string scenario_path, out_dir;

  auto* run = app.add_subcommand("run", "simulate one scenario");
  run->add_option("file", scenario_path, "scenario JSON")->required();
  run->add_option("-o,--output", out_dir, "output directory")->required();

  auto* cmp = app.add_subcommand("compare", "fixed-frequency vs baseline paired runs");
  cmp->add_option("file", scenario_path, "scenario JSON")->required();
  cmp->add_option("-o,--output", out_dir, "output directory")->required();

  auto* tab = app.add_subcommand("tables", "dump switching tables and concordance reports");
  tab->add_option("-o,--output", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (run->parsed()) {
      const RunSummary s = cmd_run(scenario_path, out_dir);
      out << "wrote " << out_dir << " (" << s.ticks << " control periods)\n";
      if (s.carrier_check) out << "carrier: " << s.carrier_check->describe() << "\n";
      for (const auto& seg : s.segments) {
        out << "  [" << seg.t_start << ", " << seg.t_end << ") s: mean Te " << seg.torque.mean
            << " N m, torque std " << seg.torque.std << ", mean |phi_s| " << seg.flux_mean_magnitude
            << " Wb\n";
      }
    } else if (cmp->parsed()) {
      const json delta = cmd_compare(scenario_path, out_dir);
      out << delta.dump(2) << "\n";
    } else if (tab->parsed()) {
      const int mismatches = cmd_tables(out_dir, out);
      return mismatches > 0 ? kExitTableMismatch : kExitOk;
    }
  } catch (const CarrierViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const DomainError& e) {
    err << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  }
  return kExitOk;
}

}  // namespace dtcmc
