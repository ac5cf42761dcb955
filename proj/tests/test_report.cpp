#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cgolab/errors.hpp"
#include "cgolab/report.hpp"

using namespace cgolab;

namespace {

Report sample_report() {
  Report r;
  r.scenario = "cgo-sweep";
  r.config = {{"seed", 7}};
  r.environment = current_environment(2);
  Record a;
  a.id = "C12";
  a.name = "cgo_transport_cancellation";
  a.value = 0.0625;
  a.threshold = 0.5;
  a.pass = true;
  a.note = "max relative variation";
  a.metrics = {{"growth", 12.5}, {"rho_10", 1.0 / 3.0}};
  Record b;
  b.id = "C5";
  b.name = "stationary_phase";
  b.value = std::numeric_limits<double>::quiet_NaN();
  b.threshold = std::numeric_limits<double>::quiet_NaN();
  b.relation = ">=";
  b.error = "DomainError: bad";
  r.records = {a, b};
  r.tables.push_back({"stationary_phase", {"tau", "value", "model", "residual"},
                      {{20.0, 0.1, 0.09, 0.01}, {40.0, 0.05, 0.047, 0.003}}});
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("report json round trip keeps every field, NaN included") {
  const Report r = sample_report();
  const std::string text = to_json(r).dump();
  const Report back = report_from_json(nlohmann::json::parse(text));
  CHECK(back == r);
  CHECK(std::isnan(back.records[1].value));
  CHECK(back.records[0].metrics.at("rho_10") == 1.0 / 3.0);
}

TEST_CASE("empty report is valid json with zero records") {
  Report r;
  r.scenario = "verify-gauge";
  const auto j = nlohmann::json::parse(to_json(r).dump());
  CHECK(j.at("records").is_array());
  CHECK(j.at("records").empty());
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(r.all_passed());
  CHECK(exit_code(r) == 0);
}

TEST_CASE("schema mismatch is rejected") {
  auto j = to_json(sample_report());
  j["schema_version"] = kReportSchemaVersion + 1;
  CHECK_THROWS_AS(report_from_json(j), ConfigError);
}

TEST_CASE("csv layout") {
  const Report r = sample_report();
  const std::string t = table_csv(r.tables[0]);
  CHECK(t.rfind("tau,value,model,residual\n", 0) == 0);
  CHECK(t.find("20,0.10000000000000001,") != std::string::npos);
  const std::string rec = records_csv(r);
  CHECK(rec.rfind("id,name,value,threshold,relation,pass,error\n", 0) == 0);
}

TEST_CASE("exit codes") {
  Report r = sample_report();
  CHECK(exit_code(r) == 3);
  r.records.pop_back();
  CHECK(exit_code(r) == 0);
  r.records[0].pass = false;
  CHECK(exit_code(r) == 1);
}

TEST_CASE("emit writes the requested files") {
  const auto dir = std::filesystem::temp_directory_path() / "cgolab_emit_test";
  std::filesystem::remove_all(dir);
  const Report r = sample_report();
  emit(r, dir, ReportFormat::Json);
  CHECK(report_from_json(nlohmann::json::parse(slurp(dir / "report.json"))) == r);
  emit(r, dir, ReportFormat::Csv);
  CHECK(slurp(dir / "records.csv") == records_csv(r));
  CHECK(slurp(dir / "stationary_phase.csv") == table_csv(r.tables[0]));
  CHECK(report_format_from_string("csv") == ReportFormat::Csv);
  CHECK_THROWS_AS(report_format_from_string("xml"), ConfigError);
  std::filesystem::remove_all(dir);
}
