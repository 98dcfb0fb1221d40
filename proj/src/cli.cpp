#include "aerocalc/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"

#include "aerocalc/error.hpp"
#include "aerocalc/server.hpp"

namespace aerocalc::cli {

using engine::json;
using units::Unit;

namespace {

std::string kebab(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

std::string flag_for(const std::string& field) {
  if (field.empty()) return "";
  if (field.rfind("loads.", 0) == 0) return "--load " + field.substr(6);
  const auto dot = field.find_first_of(".[");
  return "--" + kebab(field.substr(0, dot)) + (dot == std::string::npos ? "" : field.substr(dot));
}

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8765;
  bool allow_remote = false;
};

struct Parsed {
  std::string command;  // operation name, "serve", "catalogue", "bundle-check" or "bundle-format"
  json request;
  bool json_output = false;
  ServeOptions serve;
  std::vector<std::string> paths;
  bool write = false;
};

// Thrown for --help; carries the text to print.
struct HelpRequested {
  std::string text;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Parsed parse(const std::vector<std::string>& args, const engine::Engine& eng) {
  CLI::App app{"Offline flight computer: atmosphere, wind, navigation, holding, performance, weight and balance, "
               "carburettor icing.",
               "aerocalc"};
  app.fallthrough();
  app.require_subcommand(1);

  Parsed parsed;
  std::string display;
  app.add_flag("--json", parsed.json_output, "print the response JSON verbatim");
  app.add_option("--units", display, "display units for results: metric or imperial");

  struct Bound {
    CLI::App* sub;
    const engine::OperationSpec* spec;
    std::map<std::string, std::pair<CLI::Option*, std::string>> values;
    std::vector<std::string> loads;
    std::string wind, runway;
    CLI::Option* wind_opt = nullptr;
    CLI::Option* runway_opt = nullptr;
    std::vector<std::string> positional;
  };
  std::vector<std::unique_ptr<Bound>> bound;

  for (const auto& spec : eng.operations()) {
    auto b = std::make_unique<Bound>();
    b->spec = &spec;
    b->sub = app.add_subcommand(spec.name, spec.summary);
    for (const auto& in : spec.inputs) {
      std::string desc = in.description;
      if (in.type == engine::InputType::quantity && in.category) {
        desc += " [" + std::string(units::id(*in.category));
        if (in.default_unit) desc += ", default unit " + std::string(units::id(*in.default_unit));
        desc += "]";
      }
      if (!in.choices.empty()) {
        std::string list;
        for (const auto& c : in.choices) {
          if (!c.empty()) list += (list.empty() ? "" : ", ") + c;
        }
        desc += " (" + list + ")";
      }
      if (in.default_value) {
        const auto& d = *in.default_value;
        if (d.is_object() && d.contains("value")) {
          desc += " default " + d["value"].dump() + std::string(d["unit"].get<std::string>());
        } else if (d.is_string() && !d.get<std::string>().empty()) {
          desc += " default " + d.get<std::string>();
        }
      }
      if (in.type == engine::InputType::loads) {
        const std::string name = in.cli_alias.empty() ? in.name : in.cli_alias;
        b->sub->add_option("--" + kebab(name), b->loads, desc + "; NAME=MASS, repeatable");
        continue;
      }
      std::string names = "--" + kebab(in.name);
      if (!in.cli_alias.empty()) names += ",--" + kebab(in.cli_alias);
      auto& slot = b->values[in.name];
      slot.first = b->sub->add_option(names, slot.second, desc);
    }
    if (spec.find_input("wind_direction") && spec.find_input("wind_speed")) {
      b->wind_opt = b->sub->add_option("--wind", b->wind, "wind as DIRECTION/SPEED, e.g. 285/12");
    }
    if (spec.find_input("runway_heading")) {
      b->runway_opt = b->sub->add_option("--runway", b->runway, "runway designator, e.g. 23 or 05L");
    }
    if (spec.name == "convert") {
      b->sub->add_option("args", b->positional, "VALUE [FROM] TO, e.g. 100 kt kmh");
    }
    bound.push_back(std::move(b));
  }

  auto* serve = app.add_subcommand("serve", "Run the local JSON service");
  serve->add_option("--host", parsed.serve.host, "bind address (default 127.0.0.1)");
  serve->add_option("--port", parsed.serve.port, "TCP port (default 8765)");
  serve->add_flag("--allow-remote", parsed.serve.allow_remote, "permit a non-loopback bind address");
  app.add_subcommand("catalogue", "Print operations, input schemas and bundled data");
  auto* bundle_cmd = app.add_subcommand("bundle", "Validate or reformat data bundle files");
  bundle_cmd->require_subcommand(1);
  auto* check = bundle_cmd->add_subcommand("check", "Load and validate bundle files");
  check->add_option("paths", parsed.paths, "bundle files")->required();
  auto* format = bundle_cmd->add_subcommand("format", "Print a bundle in canonical form");
  format->add_option("paths", parsed.paths, "bundle files")->required();
  format->add_flag("--write", parsed.write, "rewrite the files in place");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  }

  CLI::App* chosen = app.get_subcommands().front();
  parsed.command = chosen->get_name();
  if (parsed.command == "serve" || parsed.command == "catalogue") return parsed;
  if (parsed.command == "bundle") {
    parsed.command = "bundle-" + chosen->get_subcommands().front()->get_name();
    return parsed;
  }

  const Bound* b = nullptr;
  for (const auto& candidate : bound) {
    if (candidate->sub == chosen) b = candidate.get();
  }
  const auto& spec = *b->spec;
  json inputs = json::object();

  for (const auto& in : spec.inputs) {
    if (in.type == engine::InputType::loads) continue;
    const auto& [opt, value] = b->values.at(in.name);
    if (opt->count() == 0) continue;
    if (in.type == engine::InputType::text) {
      inputs[in.name] = value;
    } else {
      inputs[in.name] = parse_quantity_arg(value, in.name, in.default_unit);
    }
  }

  if (b->wind_opt && b->wind_opt->count() > 0) {
    const auto slash = b->wind.find('/');
    if (slash == std::string::npos) throw ValidationError("wind", "expected DIRECTION/SPEED, e.g. 285/12");
    if (inputs.contains("wind_direction") || inputs.contains("wind_speed")) {
      throw ValidationError("wind", "give --wind or --wind-direction/--wind-speed, not both");
    }
    inputs["wind_direction"] = parse_quantity_arg(b->wind.substr(0, slash), "wind_direction", Unit::deg);
    inputs["wind_speed"] = parse_quantity_arg(b->wind.substr(slash + 1), "wind_speed", Unit::kt);
  }

  if (b->runway_opt && b->runway_opt->count() > 0) {
    static const std::regex designator(R"(^0?([1-9]|[12][0-9]|3[0-6])[LRClrc]?$)");
    std::smatch m;
    if (!std::regex_match(b->runway, m, designator)) {
      throw ValidationError("runway", "expected a runway designator 01 to 36, optionally with L, C or R");
    }
    if (inputs.contains("runway_heading")) {
      throw ValidationError("runway", "give --runway or --runway-heading, not both");
    }
    inputs["runway_heading"] = engine::quantity_json(std::stoi(m[1].str()) * 10.0, Unit::deg);
  }

  if (!b->loads.empty()) {
    std::optional<Unit> mass_unit;
    if (inputs.contains("profile")) {
      if (const auto* p = eng.data().find_profile(inputs["profile"].get<std::string>())) mass_unit = p->mass_unit;
    }
    json loads = json::object();
    for (const auto& item : b->loads) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError("loads", "expected NAME=MASS, got '" + item + "'");
      const std::string name = item.substr(0, eq);
      loads[name] = parse_quantity_arg(item.substr(eq + 1), "loads." + name, mass_unit);
    }
    inputs["loads"] = loads;
  }

  if (!b->positional.empty()) {
    const auto& p = b->positional;
    if (p.size() == 3) {
      inputs["value"] = parse_quantity_arg(p[0] + p[1], "value", std::nullopt);
      inputs["to"] = p[2];
    } else if (p.size() == 2) {
      inputs["value"] = parse_quantity_arg(p[0], "value", std::nullopt);
      inputs["to"] = p[1];
    } else {
      throw ValidationError("value", "expected VALUE FROM TO, e.g. convert 100 kt kmh");
    }
  }

  parsed.request = json{{"operation", spec.name}, {"inputs", inputs}};
  if (!display.empty()) parsed.request["units"] = display;
  return parsed;
}

// ---------------------------------------------------------------------------
// Human-readable output

std::string number(double v, int decimals = 4) {
  char buf[64];
  if (v == 0.0) return "0";
  if (std::abs(v) >= 1e6 || std::abs(v) < 1e-3) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
  }
  return buf;
}

// Hundredths for readings off the dial; ratios, densities and inHg keep four.
int decimals_for(const std::string& unit) {
  static const std::set<std::string> fine{"ratio", "kgm3", "inhg", "lbusgal", "kgl", "mach"};
  return fine.count(unit) ? 4 : 2;
}

std::string unit_symbol(const std::string& id) {
  static const std::map<std::string, std::string> symbols{
      {"degc", "\xC2\xB0" "C"},      {"degf", "\xC2\xB0" "F"},       {"delta_degc", "\xC2\xB0" "C"},
      {"delta_degf", "\xC2\xB0" "F"}, {"deg", "\xC2\xB0"},          {"percent", "%"},
      {"ratio", ""},                 {"kmh", " km/h"},              {"mps", " m/s"},
      {"hpa", " hPa"},               {"inhg", " inHg"},             {"kgm3", " kg/m\xC2\xB3"},
      {"kgl", " kg/L"},              {"lbusgal", " lb/US gal"},     {"usgal", " US gal"},
      {"impgal", " imp gal"},        {"l", " L"},                   {"nm", " NM"},
      {"lbin", " lb.in"},            {"kgm", " kg.m"},              {"k", " K"},
      {"delta_k", " K"}};
  auto it = symbols.find(id);
  return it != symbols.end() ? it->second : " " + id;
}

bool is_q(const json& j) { return j.is_object() && j.contains("value") && j.contains("unit") && j.size() == 2; }

std::string qtext(const json& j) {
  if (j.is_null()) return "undefined";
  if (!is_q(j)) return j.is_string() ? j.get<std::string>() : j.dump();
  const auto unit = j["unit"].get<std::string>();
  return number(j["value"].get<double>(), decimals_for(unit)) + unit_symbol(unit);
}

std::string label(std::string key) {
  std::replace(key.begin(), key.end(), '_', ' ');
  return key;
}

void print_fields(std::ostream& o, const json& result, std::initializer_list<std::string_view> skip = {}) {
  std::size_t width = 0;
  for (const auto& [k, v] : result.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : result.items()) {
    if (std::find(skip.begin(), skip.end(), k) != skip.end()) continue;
    if (v.is_array() || (v.is_object() && !is_q(v))) continue;
    std::string name = label(k);
    name.resize(width, ' ');
    o << "  " << name << "  " << (v.is_boolean() ? (v.get<bool>() ? "yes" : "no") : qtext(v)) << "\n";
  }
}

std::string factor_text(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "\xC3\x97%.2f", f);
  return buf;
}

void print_chain(std::ostream& o, const json& r) {
  const json& c = r["factor_chain"];
  const bool takeoff = c["phase"] == "takeoff";
  o << (takeoff ? "Take-off" : "Landing") << " distance required (" << c["mode"].get<std::string>() << ")\n";
  o << "  base distance            " << qtext(c["base_distance"]) << "\n";
  std::vector<std::string> chain;
  for (const auto& e : c["entries"]) {
    const double f = e["factor"]["value"].get<double>();
    std::string line = "  " + factor_text(f) + "  " + e["name"].get<std::string>();
    if (!e["input"].is_null()) line += "  " + qtext(e["input"]);
    if (!e["note"].get<std::string>().empty()) line += "  (" + e["note"].get<std::string>() + ")";
    o << line << "\n";
    chain.push_back(factor_text(f) + " " + e["name"].get<std::string>());
  }
  o << "  environmental distance   " << qtext(c["environmental_distance"]) << "\n";
  const double g = c["general_factor"]["value"].get<double>();
  o << "  " << factor_text(g) << "  general safety\n";
  chain.push_back(factor_text(g) + " safety");
  o << "  " << (takeoff ? "TODR" : "LDR") << "                     " << qtext(c["final_distance"]) << "\n";
  std::string joined;
  for (const auto& s : chain) joined += (joined.empty() ? "" : " \xC2\xB7 ") + s;
  o << "  chain: " << joined << "  (overall " << factor_text(r["final_to_base_ratio"]["value"].get<double>()) << ")\n";
}

void print_wb(std::ostream& o, const json& r) {
  o << "Weight and balance: " << r["profile"].get<std::string>() << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "  %-10s %14s %14s %18s  %s\n", "phase", "weight", "cg arm", "moment", "envelope");
  o << line;
  for (const auto& p : r["phases"]) {
    const auto& env = p["envelopes"][0];
    std::string verdict = env["verdict"].get<std::string>() + " (margin " +
                          number(env["margin"]["value"].get<double>()) + ")";
    std::snprintf(line, sizeof line, "  %-10s %14s %14s %18s  %s\n", p["phase"].get<std::string>().c_str(),
                  qtext(p["weight"]).c_str(), qtext(p["cg_arm"]).c_str(), qtext(p["moment"]).c_str(),
                  verdict.c_str());
    o << line;
  }
  o << "  within limits: " << (r["within_limits"].get<bool>() ? "yes" : "NO") << "\n";
  const auto& fv = r["cg_track"]["first_violation"];
  o << "  fuel-burn track (" << r["cg_track"]["envelope"].get<std::string>() << "): "
    << (fv.is_null() ? "stays inside" : "leaves the envelope after " + number(100.0 * fv["value"].get<double>()) +
                                            "% of the fuel is burned")
    << "\n";
}

void print_grid(std::ostream& o, const json& r) {
  const int cols = static_cast<int>(r["oat_cells"]["value"].get<double>());
  const int rows = static_cast<int>(r["dew_cells"]["value"].get<double>());
  const auto& cells = r["cells"];
  auto letter = [](const json& v) {
    if (v.is_null()) return '.';
    const std::string s = v.get<std::string>();
    return s == "serious" ? 'S' : s == "moderate" ? 'M' : s == "light" ? 'L' : '-';
  };
  for (const char* ctx : {"cruise", "descent"}) {
    o << "Icing risk at " << ctx << " power (rows: dew point high to low; columns: OAT low to high)\n";
    for (int j = rows - 1; j >= 0; --j) {
      const auto& first = cells[j * cols];
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %8s |", qtext(first["dew_point"]).c_str());
      o << buf;
      for (int i = 0; i < cols; ++i) o << ' ' << letter(cells[j * cols + i][ctx]);
      o << "\n";
    }
  }
  o << "  S serious, M moderate, L light, - none, . above saturation\n";
}

}  // namespace

json parse_quantity_arg(const std::string& text, const std::string& field, std::optional<Unit> default_unit) {
  static const std::regex pattern(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z_%]*)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ValidationError(field, "expected a number with an optional unit, e.g. 390m, got '" + text + "'");
  }
  const double value = std::stod(m[1].str());
  std::string unit = lower(m[2].str());
  if (unit == "%") unit = "percent";
  if (unit.empty()) {
    if (!default_unit) throw ValidationError(field, "'" + text + "' needs a unit, e.g. 100kt");
    return engine::quantity_json(value, *default_unit);
  }
  return engine::quantity_json(value, units::parse_unit(unit, field));
}

json build_request(const std::vector<std::string>& args, const engine::Engine& eng) {
  return parse(args, eng).request;
}

std::string format_response(const json& response) {
  std::ostringstream o;
  if (!response.value("ok", false)) {
    const auto& e = response["error"];
    const std::string flag = flag_for(e.value("field", ""));
    o << "error: " << (flag.empty() ? "" : flag + ": ") << e.value("message", "") << "\n";
    return o.str();
  }
  const std::string op = response["operation"];
  const json& r = response["result"];
  if (op == "todr" || op == "ldr") {
    print_chain(o, r);
  } else if (op == "wb") {
    print_wb(o, r);
  } else if (op == "risk-grid") {
    print_grid(o, r);
  } else if (op == "list-units") {
    for (const auto& u : r["units"]) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-10s %-18s %s\n", u["id"].get<std::string>().c_str(),
                    u["category"].get<std::string>().c_str(), u["name"].get<std::string>().c_str());
      o << line;
    }
  } else if (op == "profile" || op == "factor-table") {
    o << r.dump(2) << "\n";
  } else if (op == "convert") {
    o << qtext(r["input"]) << " = " << qtext(r["value"]) << "\n";
  } else {
    print_fields(o, r, {"disclaimer"});
    if (r.contains("steps")) {
      int n = 1;
      for (const auto& s : r["steps"]) o << "  " << n++ << ". " << s.get<std::string>() << "\n";
    }
    if (r.contains("disclaimer")) o << "  " << r["disclaimer"].get<std::string>() << "\n";
  }
  for (const auto& w : response["warnings"]) o << "warning: " << w.get<std::string>() << "\n";
  const json disclaimer = r.is_object() && r.contains("disclaimer") ? r["disclaimer"] : json();
  for (const auto& a : response["assumptions"]) {
    if (a != disclaimer) o << "note: " << a.get<std::string>() << "\n";
  }
  return o.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const engine::Engine& eng) {
  Parsed parsed;
  const bool want_json = std::find(args.begin(), args.end(), "--json") != args.end();
  try {
    parsed = parse(args, eng);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    if (want_json) {
      out << engine::serialise(json{{"ok", false},
                                    {"error",
                                     {{"code", engine::error_code::kValidation},
                                      {"field", e.field()},
                                      {"message", e.message()}}}});
    } else {
      err << "error: " << flag_for(e.field()) << ": " << e.message() << "\n";
    }
    return kExitValidation;
  }

  try {
    if (parsed.command == "catalogue") {
      out << engine::serialise(eng.catalogue());
      return kExitOk;
    }
    if (parsed.command == "bundle-check" || parsed.command == "bundle-format") {
      for (const auto& path : parsed.paths) {
        const auto b = bundle::load_bundle(path);
        if (parsed.command == "bundle-check") {
          std::visit([&](const auto& p) { out << "ok  " << bundle::to_string(b.kind()) << "  " << p.id << "  " << path << "\n"; },
                     b.payload);
        } else if (parsed.write) {
          bundle::save_bundle(b, path, true);
        } else {
          out << bundle::canonical_text(b);
        }
      }
      return kExitOk;
    }
    if (parsed.command == "serve") {
      server::Server srv(eng);
      const int port = srv.bind(parsed.serve.host, parsed.serve.port, parsed.serve.allow_remote);
      err << "aerocalc service on http://" << parsed.serve.host << ":" << port << "/v1/ (offline, Ctrl-C to stop)\n";
      srv.run();
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }

  const json response = eng.handle(parsed.request);
  if (parsed.json_output) {
    out << engine::serialise(response);
  } else if (response.value("ok", false)) {
    out << format_response(response);
  } else {
    err << format_response(response);
  }
  if (response.value("ok", false)) return kExitOk;
  return response["error"].value("code", "") == std::string(engine::error_code::kInternal) ? kExitInternal
                                                                                          : kExitValidation;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto eng = engine::Engine::from_default_data();
    return run_cli(args, out, err, eng);
  } catch (const std::exception& e) {
    err << "error: cannot load data bundles: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace aerocalc::cli
