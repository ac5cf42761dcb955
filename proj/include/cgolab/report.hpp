#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cgolab {

inline constexpr int kReportSchemaVersion = 1;

/// One acceptance check. `value` is compared with `threshold` through
/// `relation` ("<=" or ">="); `metrics` holds the supporting numbers.
struct Record {
  std::string id;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  bool pass = false;
  std::string note;
  std::string error;  // set when the check raised instead of finishing
  std::map<std::string, double> metrics;

  bool operator==(const Record& o) const;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const Table& o) const;
};

struct Environment {
  std::string timestamp;
  std::string compiler;
  std::string build_type;
  int threads = 1;

  bool operator==(const Environment& o) const = default;
};

struct Report {
  int schema_version = kReportSchemaVersion;
  std::string scenario;
  nlohmann::json config;
  Environment environment;
  std::vector<Record> records;
  std::vector<Table> tables;

  bool all_passed() const;
  bool any_error() const;
  bool operator==(const Report& o) const;
};

Environment current_environment(int threads);

nlohmann::json to_json(const Report& r);
/// Inverse of to_json. Throws ConfigError on a schema mismatch.
Report report_from_json(const nlohmann::json& j);

/// Records as CSV: id,name,value,threshold,relation,pass,error.
std::string records_csv(const Report& r);
/// Header from the column names, values printed with 17 significant digits.
std::string table_csv(const Table& t);

enum class ReportFormat { Json, Csv };
ReportFormat report_format_from_string(const std::string& s);

/// Json writes report.json; Csv writes records.csv and one <table>.csv per
/// table. Throws std::runtime_error on IO failure.
void emit(const Report& r, const std::filesystem::path& dir, ReportFormat format);

/// 0 when every record passes, 3 if any check raised, 1 otherwise.
int exit_code(const Report& r);

}  // namespace cgolab
