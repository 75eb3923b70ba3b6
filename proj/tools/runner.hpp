#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ricci/catalogue.hpp"

namespace ricci::cli {

using json = nlohmann::json;

inline constexpr int kReportSchema = 1;

enum class Task { Curvature, Means, Weitz, Kappa, Expand, Verify };

struct RunManifest {
  std::string model;
  json params = json::object();
  Task task = Task::Verify;
  json task_params = json::object();
  std::string out_path;     // empty: stdout
  std::string out_format = "json";
  std::uint64_t seed = kDefaultSeed;
  double tol_scale = 1.0;
};

/// Result of a task: a JSON report, an optional CSV table and the exit status.
struct RunResult {
  json report;
  std::string csv;
  int status = 0;
};

Task parse_task(const std::string& name);
std::string task_name(Task task);

/// Parses a manifest document; throws GeometryError(ManifestError).
RunManifest parse_manifest(const json& doc);

/// "name" or "name:key=value,key=value" into (model, params).
void apply_manifold_flag(RunManifest& m, const std::string& spec);

/// Instantiates a catalogue entry by name and parameters.
CatalogueEntry make_entry(const std::string& model, const json& params);

/// Executes the manifest's task.
RunResult run(const RunManifest& manifest);

/// Writes the report (or CSV) to the manifest's output and returns the status.
int emit(const RunManifest& manifest, const RunResult& result);

}  // namespace ricci::cli
