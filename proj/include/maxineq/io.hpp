#pragma once

#include "maxineq/azema_yor.hpp"
#include "maxineq/integral.hpp"
#include "maxineq/pathwise.hpp"
#include "maxineq/sampler.hpp"
#include "maxineq/tree.hpp"
#include "maxineq/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace maxineq::io {

// shortest round-trip decimal form; all CSV output goes through this so runs
// are byte-comparable
std::string format_double(double x);

// --- paths: CSV (header "s", one value per line) and JSON {"values":[...]} ---

Path read_path_csv(std::istream& in);
Path read_path_json(std::istream& in);
// dispatch on extension (.csv / .json)
Path load_path(const std::string& file);
void write_path_csv(std::ostream& out, const Path& path);
void write_path_json(std::ostream& out, const Path& path);

// --- sampled functions: CSV with columns t,value -----------------------------

SampledFunction read_sampled_csv(std::istream& in);
SampledFunction load_sampled(const std::string& file);
void write_sampled_csv(std::ostream& out, const SampledFunction& f);

// --- tree models --------------------------------------------------------------

// {"levels":[[{"value":..,"children":[{"node":..,"prob":..}]}]]}
TreeModel tree_from_json(const nlohmann::json& j);
nlohmann::json tree_to_json(const TreeModel& model);
TreeModel load_tree(const std::string& file);

// --- sampler configs ----------------------------------------------------------

// {"model":"gbm","seed":1,"steps":250,"horizon":1.0,...}; unknown keys rejected
PathSampler sampler_from_json(const nlohmann::json& j);
PathSampler load_sampler(const std::string& file);

// --- reports -------------------------------------------------------------------

nlohmann::json to_json(const PathIneqReport& report);
nlohmann::json to_json(const MCReport& report);
nlohmann::json to_json(const IntegralEstimate& estimate);
nlohmann::json to_json(const DoobDecomposition& decomposition);

// --- sharpness sweep CSV --------------------------------------------------------

extern const char* kSharpnessHeader;
std::string sharpness_csv_row(const SharpnessReport& row);

} // namespace maxineq::io
