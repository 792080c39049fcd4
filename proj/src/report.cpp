#include "ringstab/report.hpp"

#include <sstream>

#include "json.hpp"

namespace ringstab {

using nlohmann::json;  // std::map-backed: object keys serialize sorted

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unverified: return "unverified";
  }
  throw RingstabError("status_name: bad status");
}

Status status_from_name(const std::string& name) {
  if (name == "pass") return Status::pass;
  if (name == "fail") return Status::fail;
  if (name == "unverified") return Status::unverified;
  throw RingstabError("unknown status '" + name + "'");
}

std::string encode_matrix(const Mat& m) {
  std::string out;
  const std::vector<elem>& e = m.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  return out;
}

namespace {

Status combine(Status acc, Status s) {
  if (acc == Status::fail || s == Status::fail) return Status::fail;
  if (acc == Status::unverified || s == Status::unverified)
    return Status::unverified;
  return Status::pass;
}

}  // namespace

Status SuiteResult::status() const {
  Status acc = Status::pass;
  for (const CheckResult& c : checks) acc = combine(acc, c.status);
  return acc;
}

Status Report::status() const {
  Status acc = Status::pass;
  for (const SuiteResult& s : suites) acc = combine(acc, s.status());
  return acc;
}

int report_exit_code(const Report& r) {
  switch (r.status()) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::unverified: return 2;
  }
  return 1;
}

std::string report_to_json(const Report& r) {
  json root;
  root["tool"] = r.tool;
  root["version"] = r.version;
  root["schema_version"] = r.schema_version;
  root["status"] = status_name(r.status());
  std::size_t passed = 0, failed = 0, unver = 0;
  json suites = json::array();
  for (const SuiteResult& s : r.suites) {
    json js;
    js["suite"] = s.suite;
    js["ring"] = s.ring_name;
    js["ring_descriptor"] = s.ring_descriptor;
    js["n"] = s.n;
    js["status"] = status_name(s.status());
    json checks = json::array();
    for (const CheckResult& c : s.checks) {
      switch (c.status) {
        case Status::pass: ++passed; break;
        case Status::fail: ++failed; break;
        case Status::unverified: ++unver; break;
      }
      json jc;
      jc["name"] = c.name;
      jc["status"] = status_name(c.status);
      jc["detail"] = c.detail;
      jc["witnesses"] = c.witnesses;
      json data = json::object();
      for (const auto& [k, v] : c.data) data[k] = v;
      jc["data"] = data;
      checks.push_back(std::move(jc));
    }
    js["checks"] = std::move(checks);
    suites.push_back(std::move(js));
  }
  root["suites"] = std::move(suites);
  root["checks_passed"] = passed;
  root["checks_failed"] = failed;
  root["checks_unverified"] = unver;
  return root.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  json root = json::parse(text);
  Report r;
  r.tool = root.at("tool").get<std::string>();
  r.version = root.at("version").get<std::string>();
  r.schema_version = root.at("schema_version").get<unsigned>();
  for (const json& js : root.at("suites")) {
    SuiteResult s;
    s.suite = js.at("suite").get<std::string>();
    s.ring_name = js.at("ring").get<std::string>();
    s.ring_descriptor = js.at("ring_descriptor").get<std::string>();
    s.n = js.at("n").get<unsigned>();
    for (const json& jc : js.at("checks")) {
      CheckResult c;
      c.name = jc.at("name").get<std::string>();
      c.status = status_from_name(jc.at("status").get<std::string>());
      c.detail = jc.at("detail").get<std::string>();
      for (const json& w : jc.at("witnesses"))
        c.witnesses.push_back(w.get<std::string>());
      for (auto it = jc.at("data").begin(); it != jc.at("data").end(); ++it)
        c.data[it.key()] = it.value().get<std::string>();
      s.checks.push_back(std::move(c));
    }
    r.suites.push_back(std::move(s));
  }
  return r;
}

std::string report_to_text(const Report& r, const Timings* timings) {
  std::ostringstream out;
  out << r.tool << " " << r.version << " — status: "
      << status_name(r.status()) << "\n";
  for (const SuiteResult& s : r.suites) {
    out << "\n[" << s.suite << "] ring " << s.ring_name << " = "
        << s.ring_descriptor << ", n=" << s.n << " — "
        << status_name(s.status()) << "\n";
    for (const CheckResult& c : s.checks) {
      out << "  " << (c.status == Status::pass
                          ? "PASS"
                          : c.status == Status::fail ? "FAIL" : "UNVERIFIED")
          << "  " << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << "\n";
      for (const auto& [k, v] : c.data)
        out << "          " << k << " = " << v << "\n";
      for (const std::string& w : c.witnesses)
        out << "          witness " << w << "\n";
    }
  }
  if (timings && !timings->empty()) {
    out << "\ntimings (wall clock, not part of the JSON report):\n";
    char buf[64];
    for (const auto& [label, secs] : *timings) {
      std::snprintf(buf, sizeof buf, "%8.3fs", secs);
      out << "  " << buf << "  " << label << "\n";
    }
  }
  return out.str();
}

}  // namespace ringstab
