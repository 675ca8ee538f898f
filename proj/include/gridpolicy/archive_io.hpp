#pragma once

// Archive files: a CSV with one row per member (objectives, violation,
// operator tag, genome) and a JSON sidecar next to it.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridpolicy/moea.hpp"

namespace gridpolicy {

inline const std::vector<std::string>& policy_objective_names() {
  static const std::vector<std::string> names{"cost_usd", "emission_t", "heat_waste"};
  return names;
}

/// Header: <objective names>,violation,operator,w0..w{L-1}. Values use the
/// shortest round-trip decimal form.
void write_archive_csv(std::ostream& out, const moea::Archive& archive, const std::vector<std::string>& objective_names);

/// Reads rows written by write_archive_csv. Rows are re-inserted in order, so
/// a file produced from an archive reproduces it exactly.
moea::Archive read_archive_csv(std::istream& in, const std::vector<double>& epsilons, const std::string& source = "archive");

/// Raw rows without archive re-insertion; useful for files from foreign tools.
std::vector<moea::Solution> read_archive_rows(std::istream& in, std::size_t* objective_count = nullptr,
                                              const std::string& source = "archive");

/// "runs/a.csv" -> "runs/a.json"
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

void save_archive(const std::filesystem::path& csv, const moea::Archive& archive,
                  const std::vector<std::string>& objective_names, const nlohmann::json& sidecar);

struct LoadedArchive {
  moea::Archive archive;
  nlohmann::json sidecar;
};

/// Reads the CSV and its sidecar; epsilons come from sidecar["epsilons"].
LoadedArchive load_archive(const std::filesystem::path& csv);

}  // namespace gridpolicy
