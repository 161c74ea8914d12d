#include "cct/report.hpp"

namespace cct {

using nlohmann::json;

bool SuiteReport::all_pass() const {
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

json to_json(const CaseResult& c) {
  return json{{"name", c.name},
              {"lhs", complex_to_json(c.lhs)},
              {"rhs", complex_to_json(c.rhs)},
              {"stderr", c.stderr_},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"pass", c.pass},
              {"skipped_fraction", c.skipped_fraction}};
}

CaseResult case_from_json(const json& j) {
  CaseResult c;
  c.name = j.at("name").get<std::string>();
  c.lhs = complex_from_json(j.at("lhs"));
  c.rhs = complex_from_json(j.at("rhs"));
  c.stderr_ = j.at("stderr").get<double>();
  c.residual = j.at("residual").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.pass = j.at("pass").get<bool>();
  c.skipped_fraction = j.at("skipped_fraction").get<double>();
  return c;
}

json to_json(const SuiteReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  return json{{"suite", r.suite},
              {"cases", std::move(cases)},
              {"meta",
               {{"seed", r.meta.seed},
                {"samples", r.meta.samples},
                {"partitions", r.meta.partitions},
                {"runtime_ms", r.meta.runtime_ms},
                {"version", r.meta.version}}}};
}

SuiteReport report_from_json(const json& j) {
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  for (const auto& cj : j.at("cases")) r.cases.push_back(case_from_json(cj));
  const json& meta = j.at("meta");
  r.meta.seed = meta.at("seed").get<std::uint64_t>();
  r.meta.samples = meta.at("samples").get<long long>();
  r.meta.partitions = meta.at("partitions").get<int>();
  r.meta.runtime_ms = meta.at("runtime_ms").get<long long>();
  r.meta.version = meta.at("version").get<std::string>();
  return r;
}

bool reports_numerically_equal(const SuiteReport& a, const SuiteReport& b) {
  if (a.suite != b.suite || a.cases.size() != b.cases.size()) return false;
  if (a.meta.seed != b.meta.seed || a.meta.samples != b.meta.samples ||
      a.meta.partitions != b.meta.partitions ||
      a.meta.version != b.meta.version)
    return false;
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    const auto& x = a.cases[i];
    const auto& y = b.cases[i];
    if (x.name != y.name || x.lhs != y.lhs || x.rhs != y.rhs ||
        x.stderr_ != y.stderr_ || x.residual != y.residual ||
        x.tolerance != y.tolerance || x.pass != y.pass ||
        x.skipped_fraction != y.skipped_fraction)
      return false;
  }
  return true;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

}  // namespace cct
