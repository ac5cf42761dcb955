#include "cgolab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cgolab/errors.hpp"
#include "default_config.hpp"

namespace cgolab {

namespace {

using nlohmann::json;

json parse_jsonc(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
}

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return true;
  return a.type() == b.type();
}

// Every key of `user` must exist in `defaults` with a compatible type.
void merge_checked(json& into, const json& user, const std::string& path) {
  if (!user.is_object()) throw ConfigError("top level of the config must be an object");
  for (const auto& [key, value] : user.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!into.contains(key)) throw ConfigError("unknown key '" + where + "'");
    json& slot = into[key];
    if (!same_kind(slot, value)) {
      throw ConfigError("'" + where + "' should be " + std::string(slot.type_name()) + ", got " +
                        value.type_name());
    }
    if (slot.is_object()) {
      merge_checked(slot, value, where);
    } else {
      slot = value;
    }
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

const json& default_config_tree() {
  static const json tree = parse_jsonc(detail::kDefaultConfig);
  return tree;
}

Config::Config() : tree_(default_config_tree()) {}

Config::Config(json tree) : tree_(std::move(tree)) { validate(); }

Config Config::parse(std::string_view text) {
  json merged = default_config_tree();
  merge_checked(merged, parse_jsonc(text), "");
  return Config(std::move(merged));
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << f.rdbuf();
  return parse(text.str());
}

void Config::set_seed(std::uint64_t seed) { tree_["seed"] = seed; }

void Config::set_jobs(int jobs) {
  require(jobs >= 1 && jobs <= 64, "jobs must be in [1, 64]");
  tree_["jobs"] = jobs;
}

double Config::number(const std::string& section, const std::string& key) const {
  const json& v = tree_.at(section).at(key);
  require(v.is_number(), section + "." + key + " is not a number");
  return v.get<double>();
}

int Config::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  require(v == std::floor(v), section + "." + key + " must be an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key) const {
  const json& v = tree_.at(section).at(key);
  std::vector<double> out;
  for (const json& x : v) {
    require(x.is_number(), section + "." + key + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> Config::integers(const std::string& section, const std::string& key) const {
  std::vector<int> out;
  for (double x : numbers(section, key)) {
    require(x == std::floor(x), section + "." + key + " must hold integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<std::pair<int, int>> Config::resolutions(const std::string& section,
                                                     const std::string& key) const {
  std::vector<std::pair<int, int>> out;
  for (const json& x : tree_.at(section).at(key)) {
    if (x.is_number_integer()) {
      out.emplace_back(x.get<int>(), x.get<int>());
    } else {
      require(x.is_array() && x.size() == 2 && x[0].is_number_integer() &&
                  x[1].is_number_integer(),
              section + "." + key + " entries must be N or [n_r, n_theta]");
      out.emplace_back(x[0].get<int>(), x[1].get<int>());
    }
  }
  return out;
}

void Config::validate() const {
  require(tree_.at("schema_version").get<int>() == kConfigSchemaVersion,
          "config schema_version must be " + std::to_string(kConfigSchemaVersion));
  require(tree_.at("seed").is_number_unsigned(), "seed must be a non-negative integer");
  const int j = tree_.at("jobs").get<int>();
  require(j >= 1 && j <= 64, "jobs must be in [1, 64]");

  for (const auto& [section, body] : tree_.items()) {
    if (!body.is_object()) continue;
    for (const auto& [key, value] : body.items()) {
      const std::string where = section + "." + key;
      if (key == "resolutions") {
        const auto res = resolutions(section, key);
        require(!res.empty(), where + " must not be empty");
        for (auto [nr, nt] : res) require(nr >= 4 && nt >= 8, where + " entries are too small");
      } else if (key == "taus") {
        const auto taus = numbers(section, key);
        require(!taus.empty(), where + " must not be empty");
        for (std::size_t i = 0; i < taus.size(); ++i) {
          require(taus[i] > 0.0, where + " must be positive");
          if (i > 0) require(taus[i] > taus[i - 1], where + " must be increasing");
        }
      } else if (key == "n_r" || key == "n_theta" || key == "resolution" || key == "cases" ||
                 key == "choices" || key == "n") {
        require(value.is_number_integer() && value.get<int>() >= 1,
                where + " must be a positive integer");
      } else if (value.is_number()) {
        require(std::isfinite(value.get<double>()), where + " must be finite");
      }
    }
  }
}

}  // namespace cgolab
