// Data bundles: aircraft profiles, factor tables and icing charts stored as
// JSON files. Every bundle carries a schema version, its kind, a provenance
// note, and a payload whose numbers are all {value, unit} pairs.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "aerocalc/carbicing.hpp"
#include "aerocalc/performance.hpp"
#include "aerocalc/weightbalance.hpp"

namespace aerocalc::bundle {

using json = nlohmann::json;

inline constexpr int kMinSchemaVersion = 1;
inline constexpr int kMaxSchemaVersion = 1;

enum class Kind { aircraft_profile, factor_table, icing_chart };
std::string_view to_string(Kind k);
Kind parse_kind(std::string_view text);

using Payload = std::variant<weightbalance::AircraftProfile, performance::FactorTable, carbicing::IcingChart>;

struct DataBundle {
  int schema_version = kMaxSchemaVersion;
  std::string provenance;
  bool is_default = false;  // meaningful for factor tables and icing charts
  Payload payload;

  Kind kind() const { return static_cast<Kind>(payload.index()); }
  bool operator==(const DataBundle&) const = default;
};

// Payload codecs. Decoders validate fully and report errors with a JSON path.
json encode(const weightbalance::AircraftProfile& p);
json encode(const performance::FactorTable& t);
json encode(const carbicing::IcingChart& c);
weightbalance::AircraftProfile decode_profile(const json& j);
performance::FactorTable decode_factor_table(const json& j);
carbicing::IcingChart decode_icing_chart(const json& j);

json to_json(const DataBundle& b);
DataBundle from_json(const json& j);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_text(const DataBundle& b);

DataBundle parse_bundle(std::string_view text);
DataBundle load_bundle(const std::filesystem::path& path);
/// Refuses to replace an existing file unless `overwrite` is set.
void save_bundle(const DataBundle& b, const std::filesystem::path& path, bool overwrite = false);

/// $AEROCALC_DATA_DIR if set, otherwise the directory chosen at build time.
std::filesystem::path data_dir();

struct CatalogueEntry {
  Kind kind = Kind::aircraft_profile;
  std::string id;
  std::string display_name;
  std::filesystem::path path;
  bool is_default = false;
};

/// Every bundle under profiles/, factor_tables/ and icing_charts/, sorted by
/// kind then id. Each file is loaded and validated on the way.
std::vector<CatalogueEntry> list_bundled(const std::filesystem::path& dir);
std::vector<CatalogueEntry> list_bundled();

/// Everything the engine needs, loaded once and then shared read-only.
struct DataSet {
  std::vector<weightbalance::AircraftProfile> profiles;
  performance::FactorTable factor_table;
  carbicing::IcingChart icing_chart;
  std::vector<CatalogueEntry> catalogue;

  const weightbalance::AircraftProfile* find_profile(std::string_view id) const;
};

/// Falls back to the built-in factor table and chart when the directory lacks them.
DataSet load_data_set(const std::filesystem::path& dir);

}  // namespace aerocalc::bundle
