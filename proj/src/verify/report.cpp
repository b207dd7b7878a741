#include "quatvisc/verify/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace quatvisc::verify {

namespace {

// A NaN, once seen, stays the worst value.
void track(Check& check, double value, const Witness& where, bool larger_is_worse) {
  const bool first = check.samples++ == 0;
  if (!first && std::isnan(check.worst)) return;
  if (first || std::isnan(value) || (larger_is_worse ? value > check.worst : value < check.worst)) {
    check.worst = value;
    check.witness = where;
  }
}

}  // namespace

void track_max(Check& check, double value, const Witness& where) { track(check, value, where, true); }
void track_min(Check& check, double value, const Witness& where) { track(check, value, where, false); }

void settle(Check& check) {
  const double w = check.worst;
  const double t = check.threshold;
  if (std::isnan(w)) {
    check.pass = false;
  } else if (check.relation == "<=") {
    check.pass = w <= t;
  } else if (check.relation == "<") {
    check.pass = w < t;
  } else if (check.relation == ">=") {
    check.pass = w >= t;
  } else if (check.relation == ">") {
    check.pass = w > t;
  } else if (check.relation == "==") {
    check.pass = w == t;
  } else {
    throw std::logic_error("unknown relation " + check.relation);
  }
}

bool Report::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {

// JSON has no NaN or infinity; encode them as strings.
Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

Json Report::to_json() const {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["suite"] = suite;
  out["seed"] = seed;
  out["pass"] = pass();
  out["config"] = config;
  out["constants"] = constants;
  Json list = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["samples"] = c.samples;
    j["worst"] = number(c.worst);
    j["relation"] = c.relation;
    j["threshold"] = number(c.threshold);
    if (c.witness) j["witness"] = {{"seed", c.witness->seed.value_or(seed)}, {"stream", c.witness->stream}, {"index", c.witness->index}};
    if (!c.details.empty()) j["details"] = c.details;
    list.push_back(std::move(j));
  }
  out["checks"] = std::move(list);
  out["tables"] = tables;
  return out;
}

void write_json(const Json& json, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << json.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace quatvisc::verify
