#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "covplan/io.hpp"

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

void report_error(const covplan::PlanningError& err) {
  std::cerr << "{\"error\":\"" << covplan::error_code_name(err.code()) << "\",\"module\":\""
            << json_escape(err.module()) << "\",\"message\":\"" << json_escape(err.what())
            << "\"}" << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boustrophedon coverage path planner for survey regions with exclusion zones"};

  std::string input_path;
  std::string out_prefix;
  covplan::PlannerConfig config;
  double sweep_deg = 0.0;
  std::string first_line = "paper";
  std::string origin;

  app.add_option("--input", input_path, "Region file (GeoJSON or CSV ring blocks)")
      ->required();
  app.add_option("--wind-deg", config.wind_direction_deg,
                 "Wind direction in degrees; sweep lines run perpendicular to it")
      ->required();
  auto* sweep_opt =
      app.add_option("--sweep-deg", sweep_deg, "Override the sweep-line angle directly");
  app.add_option("--safe-dist", config.safe_distance_m,
                 "Standoff distance from exclusion zones, meters")
      ->required();
  app.add_option("--swath", config.swath_width_m, "Across-track image footprint, meters")
      ->required();
  app.add_option("--sidelap", config.sidelap, "Fractional overlap between adjacent lines [0,1)")
      ->required();
  app.add_option("--first-line", first_line, "Line placement rule: paper | centered")
      ->check(CLI::IsMember({"paper", "centered"}));
  auto* origin_opt =
      app.add_option("--origin", origin, "Projection origin as lon,lat for geographic input");
  app.add_option("--out", out_prefix, "Output prefix for .geojson/.csv/.svg")->required();

  CLI11_PARSE(app, argc, argv);

  if (*sweep_opt) config.sweep_angle_override_deg = sweep_deg;
  config.first_line_mode = first_line == "centered" ? covplan::FirstLineMode::Centered
                                                    : covplan::FirstLineMode::PaperRule;
  if (*origin_opt) {
    auto comma = origin.find(',');
    if (comma == std::string::npos) {
      std::cerr << "{\"error\":\"ParseError\",\"module\":\"cli_io\",\"message\":\"--origin "
                   "expects lon,lat\"}"
                << std::endl;
      return 2;
    }
    try {
      config.origin_lonlat = {std::stod(origin.substr(0, comma)),
                              std::stod(origin.substr(comma + 1))};
    } catch (const std::exception&) {
      std::cerr << "{\"error\":\"ParseError\",\"module\":\"cli_io\",\"message\":\"--origin "
                   "expects numeric lon,lat\"}"
                << std::endl;
      return 2;
    }
  }

  const char* debug_env = std::getenv("COVPLAN_DEBUG_SKELETON");
  const bool want_debug = debug_env != nullptr && std::string(debug_env) == "1";

  try {
    covplan::ParsedInput region = covplan::parse_region(input_path, config);
    covplan::SkeletonDebugLog debug;
    covplan::CoveragePlan plan =
        covplan::run_pipeline(region, config, want_debug ? &debug : nullptr);
    covplan::emit_outputs(plan, out_prefix);
    if (want_debug) covplan::emit_skeleton_debug(debug, out_prefix + "_skeleton.json");
  } catch (const covplan::PlanningError& err) {
    report_error(err);
    return err.is_input_error() ? 2 : 3;
  } catch (const std::exception& err) {
    std::cerr << "{\"error\":\"Internal\",\"module\":\"cli\",\"message\":\""
              << json_escape(err.what()) << "\"}" << std::endl;
    return 3;
  }
  return 0;
}
