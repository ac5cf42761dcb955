#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cgolab {

inline constexpr int kConfigSchemaVersion = 1;

/// Validated configuration tree: user values merged over the defaults in
/// configs/default.jsonc. Text may contain // and /* */ comments.
class Config {
 public:
  /// The built-in defaults.
  Config();

  /// Throws ConfigError on a parse error, an unknown key, a type mismatch or
  /// an out-of-range value.
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  const nlohmann::json& tree() const { return tree_; }
  std::uint64_t seed() const { return tree_.at("seed").get<std::uint64_t>(); }
  int jobs() const { return tree_.at("jobs").get<int>(); }

  void set_seed(std::uint64_t seed);
  void set_jobs(int jobs);

  double number(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  std::vector<int> integers(const std::string& section, const std::string& key) const;
  /// [[n_r, n_theta], ...]; a plain number N stands for [N, N].
  std::vector<std::pair<int, int>> resolutions(const std::string& section,
                                               const std::string& key) const;

 private:
  explicit Config(nlohmann::json tree);
  void validate() const;

  nlohmann::json tree_;
};

/// Defaults as a JSON tree (comments stripped).
const nlohmann::json& default_config_tree();

}  // namespace cgolab
