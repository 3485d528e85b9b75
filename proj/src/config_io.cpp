#include "aplab/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"

namespace aplab {

using nlohmann::json;

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scheme", "epsilon", "phi",     "tau",      "h",        "N",   "Nx",
      "Nt",     "x_left",  "x_right", "bc_left",  "bc_right", "init"};
  return keys;
}

namespace {

std::string key_list() {
  std::string out;
  for (const auto& k : config_keys()) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

bool is_known(const std::string& key) {
  for (const auto& k : config_keys()) {
    if (k == key) return true;
  }
  return false;
}

double number(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("config key '") + key + "' must be an integer");
  }
  return v.get<int>();
}

}  // namespace

GridConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!is_known(key)) {
      throw std::invalid_argument("unknown config key '" + key + "'; valid keys: " + key_list());
    }
  }

  GridConfig cfg;
  if (doc.contains("scheme")) cfg.scheme = parse_scheme(doc.at("scheme").get<std::string>());
  if (doc.contains("epsilon")) cfg.epsilon = number(doc, "epsilon");
  if (doc.contains("phi")) cfg.phi = number(doc, "phi");
  if (doc.contains("N")) cfg.N = integer(doc, "N");
  if (doc.contains("Nx")) cfg.Nx = integer(doc, "Nx");
  if (doc.contains("Nt")) cfg.Nt = integer(doc, "Nt");
  if (doc.contains("x_left")) cfg.x_left = number(doc, "x_left");
  if (doc.contains("bc_left")) cfg.bc_left = number(doc, "bc_left");
  if (doc.contains("bc_right")) cfg.bc_right = number(doc, "bc_right");
  if (doc.contains("init")) cfg.init = parse_initial_profile(doc.at("init").get<std::string>());

  const bool has_h = doc.contains("h");
  const bool has_right = doc.contains("x_right");
  if (has_h) cfg.h = number(doc, "h");
  if (has_right) {
    cfg.x_right = number(doc, "x_right");
    const double derived = (cfg.x_right - cfg.x_left) / (cfg.Nx + 1);
    if (!has_h) {
      cfg.h = derived;
    } else if (std::abs(derived - cfg.h) > 1e-9 * std::max(1.0, std::abs(cfg.h))) {
      std::ostringstream msg;
      msg << "inconsistent grid: x_right - x_left = " << cfg.x_right - cfg.x_left
          << " but (Nx+1) h = " << (cfg.Nx + 1) * cfg.h;
      throw std::invalid_argument(msg.str());
    }
  } else {
    cfg.x_right = cfg.x_left + (cfg.Nx + 1) * cfg.h;
  }

  if (doc.contains("tau")) {
    const auto& t = doc.at("tau");
    if (t.is_string()) {
      if (t.get<std::string>() != "auto") {
        throw std::invalid_argument("tau must be a number or \"auto\"");
      }
      cfg.tau = 0.9 * max_stable_tau(cfg);
    } else {
      cfg.tau = number(doc, "tau");
    }
  } else {
    cfg.tau = 0.9 * max_stable_tau(cfg);
  }
  return cfg;
}

GridConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("cannot parse config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

json config_to_json(const GridConfig& cfg) {
  json doc = json::object();
  doc["scheme"] = to_string(cfg.scheme);
  doc["epsilon"] = cfg.epsilon;
  doc["phi"] = cfg.phi;
  doc["tau"] = cfg.tau;
  doc["h"] = cfg.h;
  doc["N"] = cfg.N;
  doc["Nx"] = cfg.Nx;
  doc["Nt"] = cfg.Nt;
  doc["x_left"] = cfg.x_left;
  doc["x_right"] = cfg.x_right;
  doc["bc_left"] = cfg.bc_left;
  doc["bc_right"] = cfg.bc_right;
  doc["init"] = to_string(cfg.init);
  return doc;
}

void apply_override(json& doc, const std::string& key, const std::string& value) {
  if (!is_known(key)) {
    throw std::invalid_argument("unknown override key '" + key + "'; valid keys: " + key_list());
  }
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;
  doc[key] = parsed;
}

}  // namespace aplab
