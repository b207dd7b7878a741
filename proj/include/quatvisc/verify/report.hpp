#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace quatvisc::verify {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A sample reproducible from (master seed, stream, index).
struct Witness {
  std::string stream;
  std::uint64_t index = 0;
  std::optional<std::uint64_t> seed;  // when it differs from the report seed
};

struct Check {
  std::string name;
  bool pass = false;
  std::size_t samples = 0;
  double worst = 0.0;      // worst observed value of the checked quantity
  double threshold = 0.0;  // worst must satisfy `worst <relation> threshold`
  std::string relation = "<=";
  std::optional<Witness> witness;  // first failing sample, or the worst one
  Json details = Json::object();
};

/// Updates a max-tracking check: records value and the witness when it is the new worst.
void track_max(Check& check, double value, const Witness& where);
void track_min(Check& check, double value, const Witness& where);
/// Sets pass from worst, relation and threshold.
void settle(Check& check);

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  Json constants = Json::object();  // empirical constants
  Json config = Json::object();
  Json tables = Json::object();     // plot-ready rows, emitted as CSV by the report command

  bool pass() const;
  Json to_json() const;
};

/// Writes JSON with a trailing newline through a temporary file.
void write_json(const Json& json, const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

}  // namespace quatvisc::verify
