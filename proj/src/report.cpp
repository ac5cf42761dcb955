#include "cgolab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

using nlohmann::json;

// NaN marks a value that was never computed; JSON has no NaN, so use null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Quote a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

bool Record::operator==(const Record& o) const {
  if (metrics.size() != o.metrics.size()) return false;
  for (auto a = metrics.begin(), b = o.metrics.begin(); a != metrics.end(); ++a, ++b) {
    if (a->first != b->first || !same(a->second, b->second)) return false;
  }
  return id == o.id && name == o.name && same(value, o.value) && same(threshold, o.threshold) &&
         relation == o.relation && pass == o.pass && note == o.note && error == o.error;
}

bool Table::operator==(const Table& o) const {
  if (name != o.name || columns != o.columns || rows.size() != o.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != o.rows[i].size()) return false;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      if (!same(rows[i][k], o.rows[i][k])) return false;
    }
  }
  return true;
}

bool Report::all_passed() const {
  for (const auto& r : records) {
    if (!r.pass) return false;
  }
  return true;
}

bool Report::any_error() const {
  for (const auto& r : records) {
    if (!r.error.empty()) return true;
  }
  return false;
}

bool Report::operator==(const Report& o) const {
  return schema_version == o.schema_version && scenario == o.scenario && config == o.config &&
         environment == o.environment && records == o.records && tables == o.tables;
}

Environment current_environment(int threads) {
  Environment e;
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  e.timestamp = buf;
#if defined(__clang__)
  e.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  e.compiler = "gcc " __VERSION__;
#else
  e.compiler = "unknown";
#endif
#ifdef NDEBUG
  e.build_type = "release";
#else
  e.build_type = "debug";
#endif
  e.threads = threads;
  return e;
}

json to_json(const Report& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    json m = json::object();
    for (const auto& [k, v] : rec.metrics) m[k] = number(v);
    records.push_back({{"id", rec.id},
                       {"name", rec.name},
                       {"value", number(rec.value)},
                       {"threshold", number(rec.threshold)},
                       {"relation", rec.relation},
                       {"pass", rec.pass},
                       {"note", rec.note},
                       {"error", rec.error},
                       {"metrics", m}});
  }
  json tables = json::array();
  for (const auto& t : r.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json jr = json::array();
      for (double v : row) jr.push_back(number(v));
      rows.push_back(jr);
    }
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
  }
  return {{"schema_version", r.schema_version},
          {"scenario", r.scenario},
          {"environment",
           {{"timestamp", r.environment.timestamp},
            {"compiler", r.environment.compiler},
            {"build_type", r.environment.build_type},
            {"threads", r.environment.threads}}},
          {"config", r.config},
          {"passed", r.all_passed()},
          {"records", records},
          {"tables", tables}};
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw ConfigError("report schema version " + std::to_string(r.schema_version) +
                        " is not supported");
    }
    r.scenario = j.at("scenario").get<std::string>();
    const json& e = j.at("environment");
    r.environment.timestamp = e.at("timestamp").get<std::string>();
    r.environment.compiler = e.at("compiler").get<std::string>();
    r.environment.build_type = e.at("build_type").get<std::string>();
    r.environment.threads = e.at("threads").get<int>();
    r.config = j.at("config");
    for (const json& jr : j.at("records")) {
      Record rec;
      rec.id = jr.at("id").get<std::string>();
      rec.name = jr.at("name").get<std::string>();
      rec.value = number_from(jr.at("value"));
      rec.threshold = number_from(jr.at("threshold"));
      rec.relation = jr.at("relation").get<std::string>();
      rec.pass = jr.at("pass").get<bool>();
      rec.note = jr.at("note").get<std::string>();
      rec.error = jr.at("error").get<std::string>();
      for (const auto& [k, v] : jr.at("metrics").items()) rec.metrics[k] = number_from(v);
      r.records.push_back(std::move(rec));
    }
    for (const json& jt : j.at("tables")) {
      Table t;
      t.name = jt.at("name").get<std::string>();
      t.columns = jt.at("columns").get<std::vector<std::string>>();
      for (const json& row : jt.at("rows")) {
        std::vector<double> vals;
        for (const json& v : row) vals.push_back(number_from(v));
        t.rows.push_back(std::move(vals));
      }
      r.tables.push_back(std::move(t));
    }
    return r;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed report: ") + ex.what());
  }
}

std::string records_csv(const Report& r) {
  std::ostringstream out;
  out << "id,name,value,threshold,relation,pass,error\n";
  for (const auto& rec : r.records) {
    out << csv_field(rec.id) << ',' << csv_field(rec.name) << ',' << fmt(rec.value) << ','
        << fmt(rec.threshold) << ',' << rec.relation << ',' << (rec.pass ? "true" : "false")
        << ',' << csv_field(rec.error) << '\n';
  }
  return out.str();
}

std::string table_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    out << (k ? "," : "") << csv_field(t.columns[k]);
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt(row[k]);
    out << '\n';
  }
  return out.str();
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw ConfigError("unknown report format '" + s + "' (expected json or csv)");
}

void emit(const Report& r, const std::filesystem::path& dir, ReportFormat format) {
  std::filesystem::create_directories(dir);
  if (format == ReportFormat::Json) {
    write_file(dir / "report.json", to_json(r).dump(2) + "\n");
    return;
  }
  write_file(dir / "records.csv", records_csv(r));
  for (const auto& t : r.tables) write_file(dir / (t.name + ".csv"), table_csv(t));
}

int exit_code(const Report& r) {
  if (r.any_error()) return 3;
  return r.all_passed() ? 0 : 1;
}

}  // namespace cgolab
