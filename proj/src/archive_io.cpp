#include "gridpolicy/archive_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gridpolicy/csv.hpp"
#include "gridpolicy/numeric_text.hpp"

namespace gridpolicy {

void write_archive_csv(std::ostream& out, const moea::Archive& archive, const std::vector<std::string>& objective_names) {
  if (objective_names.size() != archive.epsilons().size()) {
    throw std::invalid_argument("write_archive_csv: objective name count does not match the archive");
  }
  const std::size_t genome = archive.empty() ? 0 : archive.members().front().genome.size();
  for (const std::string& name : objective_names) out << name << ',';
  out << "violation,operator";
  for (std::size_t i = 0; i < genome; ++i) out << ",w" << i;
  out << '\n';
  for (const moea::Solution& s : archive.members()) {
    for (double o : s.objectives) out << format_double(o) << ',';
    out << format_double(s.violation) << ',' << moea::to_string(s.origin);
    for (double w : s.genome) out << ',' << format_double(w);
    out << '\n';
  }
}

std::vector<moea::Solution> read_archive_rows(std::istream& in, std::size_t* objective_count, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(source + ": empty archive file");
  const std::vector<std::string> header = split_csv_line(line);
  std::size_t n_obj = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "violation") {
      n_obj = i;
      break;
    }
  }
  if (n_obj == 0 || n_obj + 1 >= header.size() || header[n_obj + 1] != "operator") {
    throw std::runtime_error(source + ": header must be <objectives>,violation,operator,<genome>");
  }
  if (objective_count) *objective_count = n_obj;
  const std::size_t genome = header.size() - n_obj - 2;

  std::vector<moea::Solution> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error(source + " line " + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " fields, got " + std::to_string(cells.size()));
    }
    auto number = [&](std::size_t col) {
      const auto v = parse_double(cells[col]);
      if (!v) {
        throw std::runtime_error(source + " line " + std::to_string(line_no) + ": bad number '" + cells[col] +
                                 "' in column " + header[col]);
      }
      return *v;
    };
    moea::Solution s;
    for (std::size_t i = 0; i < n_obj; ++i) s.objectives.push_back(number(i));
    s.violation = number(n_obj);
    try {
      s.origin = moea::operator_from_string(cells[n_obj + 1]);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(source + " line " + std::to_string(line_no) + ": " + e.what());
    }
    for (std::size_t i = 0; i < genome; ++i) s.genome.push_back(number(n_obj + 2 + i));
    rows.push_back(std::move(s));
  }
  return rows;
}

moea::Archive read_archive_csv(std::istream& in, const std::vector<double>& epsilons, const std::string& source) {
  std::size_t n_obj = 0;
  const auto rows = read_archive_rows(in, &n_obj, source);
  if (n_obj != epsilons.size()) {
    throw std::runtime_error(source + ": file has " + std::to_string(n_obj) + " objectives but " +
                             std::to_string(epsilons.size()) + " epsilons were given");
  }
  moea::Archive archive(epsilons);
  for (const moea::Solution& s : rows) archive.insert(s);
  return archive;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".json");
  return p;
}

void save_archive(const std::filesystem::path& csv, const moea::Archive& archive,
                  const std::vector<std::string>& objective_names, const nlohmann::json& sidecar) {
  {
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv.string());
    write_archive_csv(out, archive, objective_names);
  }
  std::ofstream meta(sidecar_path(csv), std::ios::binary);
  if (!meta) throw std::runtime_error("cannot write " + sidecar_path(csv).string());
  meta << sidecar.dump(2) << '\n';
}

LoadedArchive load_archive(const std::filesystem::path& csv) {
  const auto meta_path = sidecar_path(csv);
  std::ifstream meta(meta_path);
  if (!meta) throw std::runtime_error("missing archive sidecar " + meta_path.string());
  nlohmann::json sidecar;
  try {
    sidecar = nlohmann::json::parse(meta);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(meta_path.string() + ": " + e.what());
  }
  if (!sidecar.contains("epsilons")) throw std::runtime_error(meta_path.string() + ": no \"epsilons\" entry");
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  moea::Archive archive = read_archive_csv(in, sidecar.at("epsilons").get<std::vector<double>>(), csv.string());
  return {std::move(archive), std::move(sidecar)};
}

}  // namespace gridpolicy
