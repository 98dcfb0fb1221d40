// Request/response engine shared by the CLI, the local service and the Python
// module. A request names an operation and carries unit-tagged inputs:
//
//   {"operation": "tas",
//    "inputs": {"cas": {"value": 100, "unit": "kt"}, "oat": {"value": 5, "unit": "degc"}, ...},
//    "units": "metric"}                      // optional display system
//
// The response is either
//   {"operation", "ok": true, "result": {...}, "warnings": [...], "assumptions": [...]}
// or
//   {"operation", "ok": false, "error": {"code", "field", "message"}}.
// Responses depend only on the request and the loaded data set.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "aerocalc/bundle.hpp"
#include "aerocalc/units.hpp"

namespace aerocalc::engine {

using json = nlohmann::json;

enum class InputType { quantity, text, loads };
std::string_view to_string(InputType t);

struct InputSpec {
  std::string name;
  InputType type = InputType::quantity;
  std::optional<units::Category> category;  // quantities only; empty means any category
  std::optional<units::Unit> default_unit;  // used by the CLI for bare numbers
  std::optional<json> default_value;        // absent and no default means required
  bool required = true;
  std::vector<std::string> choices;         // text inputs
  std::string description;
  std::string cli_alias;                    // extra long flag, e.g. "base" for base_distance
};

struct OperationSpec {
  std::string name;
  std::string summary;
  std::vector<InputSpec> inputs;
  bool display_conversion = true;  // false when the caller picks the result unit

  const InputSpec* find_input(std::string_view name) const;
};

namespace error_code {
inline constexpr const char* kValidation = "validation_error";
inline constexpr const char* kMalformed = "malformed_request";
inline constexpr const char* kUnknownOperation = "unknown_operation";
inline constexpr const char* kInternal = "internal_error";
}  // namespace error_code

enum class DisplaySystem { native, metric, imperial };
DisplaySystem parse_display_system(std::string_view text);

/// Rewrites every {"value", "unit"} object in `j` into the display system's unit
/// for its category. Speeds, angles, times, ratios and long distances (nm, sm,
/// km) are left alone.
void convert_for_display(json& j, DisplaySystem system);

class Engine {
public:
  explicit Engine(bundle::DataSet data);
  /// Loads bundles from bundle::data_dir().
  static Engine from_default_data();

  /// Never throws; failures become error responses.
  json handle(const json& request) const;
  json catalogue() const;

  const std::vector<OperationSpec>& operations() const;
  const OperationSpec* find(std::string_view name) const;
  const bundle::DataSet& data() const { return data_; }

private:
  struct Registry;
  bundle::DataSet data_;
  std::shared_ptr<const Registry> registry_;
};

/// Canonical text form used by every front end: sorted keys, two-space indent,
/// trailing newline.
std::string serialise(const json& j);

/// Helper for callers building requests by hand.
json quantity_json(double value, units::Unit unit);

}  // namespace aerocalc::engine
