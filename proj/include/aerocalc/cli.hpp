// Command-line front end. One subcommand per engine operation; flags are
// generated from the operation's input schema (`--pressure-altitude 4500ft`).
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aerocalc/engine.hpp"

namespace aerocalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// `args` excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const engine::Engine& engine);

/// Loads the engine from the default data directory first.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "390m", "-5degc", "1.1", "2%" into a request quantity. Bare numbers
/// take `default_unit`.
engine::json parse_quantity_arg(const std::string& text, const std::string& field,
                                std::optional<units::Unit> default_unit);

/// Builds the engine request the given command line stands for, without
/// running it. Throws ValidationError for bad flag values.
engine::json build_request(const std::vector<std::string>& args, const engine::Engine& engine);

/// Human-readable rendering of a response.
std::string format_response(const engine::json& response);

}  // namespace aerocalc::cli
