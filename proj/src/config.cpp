#include "crossfire/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "crossfire/errors.hpp"

namespace crossfire {

namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& root, const char* name) : name_(name) {
    if (!root.contains(name)) return;
    node_ = &root.at(name);
    if (!node_->is_object()) throw ValidationError(fmt::format("'{}' must be an object", name_));
  }

  bool has(const char* key) {
    seen_.insert(key);
    return node_ != nullptr && node_->contains(key);
  }

  double number(const char* key, double fallback) {
    if (!has(key)) return fallback;
    return number_at(key);
  }

  std::optional<double> optional_number(const char* key) {
    if (!has(key)) return std::nullopt;
    return number_at(key);
  }

  std::uint64_t count(const char* key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = node_->at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ValidationError(fmt::format("{}.{} must be a non-negative integer", name_, key));
    }
    return v.get<std::uint64_t>();
  }

  std::vector<double> numbers(const char* key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const json& v = node_->at(key);
    if (!v.is_array()) throw ValidationError(fmt::format("{}.{} must be an array", name_, key));
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) {
        throw ValidationError(fmt::format("{}.{} must contain only numbers", name_, key));
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  const json* object(const char* key) {
    if (!has(key)) return nullptr;
    return &node_->at(key);
  }

  std::string field(const char* key) const { return fmt::format("{}.{}", name_, key); }

  // Rejects any key that was never asked for.
  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& [key, _] : node_->items()) {
      if (!seen_.count(key)) throw ValidationError(fmt::format("unknown field '{}.{}'", name_, key));
    }
  }

 private:
  double number_at(const char* key) const {
    const json& v = node_->at(key);
    if (!v.is_number()) throw ValidationError(fmt::format("{}.{} must be a number", name_, key));
    return v.get<double>();
  }

  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string, std::less<>> seen_;
};

RoadPosition position_from_json(const json& v, const std::string& field) {
  if (!v.is_object()) throw ValidationError(fmt::format("{} must be an object", field));
  for (const auto& [key, _] : v.items()) {
    if (key != "road" && key != "offset") {
      throw ValidationError(fmt::format("unknown field '{}.{}'", field, key));
    }
  }
  if (!v.contains("road") || !v.at("road").is_string()) {
    throw ValidationError(fmt::format("{}.road must be \"horizontal\" or \"vertical\"", field));
  }
  if (!v.contains("offset") || !v.at("offset").is_number()) {
    throw ValidationError(fmt::format("{}.offset must be a number", field));
  }
  const auto road = v.at("road").get<std::string>();
  const double offset = v.at("offset").get<double>();
  if (road == "horizontal") return RoadPosition::horizontal(offset);
  if (road == "vertical") return RoadPosition::vertical(offset);
  throw ValidationError(fmt::format("{}.road must be \"horizontal\" or \"vertical\"", field));
}

void check_section(const std::string& section, const std::string& message) {
  throw ValidationError(fmt::format("{}: {}", section, message));
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> kSections{"system", "propagation", "geometry", "traffic",
                                               "sweep"};
  for (const auto& [key, _] : root.items()) {
    if (!kSections.count(key)) throw ValidationError(fmt::format("unknown section '{}'", key));
  }

  RunConfig c;
  c.source_text = json_text;
  SystemDefaults& d = c.system;

  Section system(root, "system");
  d.p0_dbm = system.number("p0_dbm", d.p0_dbm);
  d.n0_dbm = system.number("n0_dbm", d.n0_dbm);
  d.beta_db = system.number("beta_db", d.beta_db);
  d.p_target = system.number("p_target", d.p_target);
  system.finish();

  Section prop(root, "propagation");
  d.f0_ghz = prop.number("f0_ghz", d.f0_ghz);
  d.d0_m = prop.number("d0_m", d.d0_m);
  d.delta_m = prop.number("delta_m", d.delta_m);
  d.alpha = prop.number("alpha", d.alpha);
  if (!prop.has("nlos_severity_r")) {
    throw ValidationError("propagation.nlos_severity_r is required (no default)");
  }
  d.nlos_severity_r = prop.number("nlos_severity_r", 0.0);
  c.min_separation_m = prop.number("min_separation_m", c.min_separation_m);
  prop.finish();

  Section geo(root, "geometry");
  d.rx_offset_m = geo.number("rx_offset_m", d.rx_offset_m);
  d.d_max_m = geo.number("d_max_m", d.d_max_m);
  if (const json* tx = geo.object("tx")) c.tx = position_from_json(*tx, geo.field("tx"));
  geo.finish();

  Section traffic(root, "traffic");
  d.lambda_per_m = traffic.number("lambda_per_m", d.lambda_per_m);
  d.r_max_m = traffic.number("r_max_m", d.r_max_m);
  c.p_i = traffic.optional_number("p_i");
  c.radius_m = traffic.optional_number("radius_m");
  traffic.finish();

  Section sweep(root, "sweep");
  SweepSettings& s = c.sweep;
  s.design_distances_m = sweep.numbers("design_distances_m", s.design_distances_m);
  s.r_grid_points = sweep.count("r_grid_points", s.r_grid_points);
  s.r_grid_min_m = sweep.optional_number("r_grid_min_m");
  s.r_grid_max_m = sweep.optional_number("r_grid_max_m");
  s.r_set_m = sweep.numbers("r_set_m", s.r_set_m);
  s.eval_step_m = sweep.number("eval_step_m", s.eval_step_m);
  s.trials = sweep.count("trials", s.trials);
  s.seed = sweep.count("seed", s.seed);
  sweep.finish();

  // Field-level checks; each names the field it rejects.
  try {
    validate(d);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("invalid configuration: {}", e.what()));
  }
  if (!(d.rx_offset_m < 0.0)) check_section("geometry.rx_offset_m", "must be negative");
  if (!(c.min_separation_m >= 0.0)) check_section("propagation.min_separation_m", "must be >= 0");
  if (c.p_i && !(*c.p_i >= 0.0 && *c.p_i <= 1.0)) check_section("traffic.p_i", "must lie in [0, 1]");
  if (c.radius_m && !(*c.radius_m >= d.delta_m)) {
    check_section("traffic.radius_m", "must be >= propagation.delta_m");
  }
  for (double v : s.design_distances_m) {
    if (!(v > 0.0 && v <= d.d_max_m)) {
      check_section("sweep.design_distances_m", "entries must lie in (0, d_max_m]");
    }
  }
  for (double v : s.r_set_m) {
    if (!(v >= d.delta_m && v <= d.r_max_m)) {
      check_section("sweep.r_set_m", "entries must lie in [delta_m, r_max_m]");
    }
  }
  if (!(s.eval_step_m > 0.0)) check_section("sweep.eval_step_m", "must be > 0");

  try {
    build_channel_params(d);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("propagation.nlos_severity_r: {}", e.what()));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot read config '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

RoadPosition parse_position(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError(fmt::format("position '{}' must look like road:offset", text));
  }
  const std::string road = text.substr(0, colon);
  double offset = 0.0;
  try {
    std::size_t used = 0;
    offset = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("position '{}' has a malformed offset", text));
  }
  if (road == "horizontal" || road == "h") return RoadPosition::horizontal(offset);
  if (road == "vertical" || road == "v") return RoadPosition::vertical(offset);
  throw ValidationError(fmt::format("position '{}' names an unknown road", text));
}

ChannelParams channel_params(const RunConfig& c) { return build_channel_params(c.system); }

RoadPosition receiver(const RunConfig& c) { return RoadPosition::horizontal(c.system.rx_offset_m); }

double eval_radius(const RunConfig& c) { return c.radius_m.value_or(c.system.r_max_m); }

Scenario environment(const RunConfig& c) {
  Scenario s;
  s.params = channel_params(c);
  s.rx = receiver(c);
  s.tx = RoadPosition::horizontal(0.0);
  s.lambda_x = c.system.lambda_per_m;
  s.lambda_y = c.system.lambda_per_m;
  s.r_x = eval_radius(c);
  s.r_y = s.r_x;
  s.p_i = c.p_i.value_or(0.0);
  s.min_separation = c.min_separation_m;
  return s;
}

}  // namespace crossfire
