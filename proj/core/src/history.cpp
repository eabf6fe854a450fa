#include "hho/history.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hho {

namespace {

constexpr const char* kHeader =
    "level,cells,dofs,error_energy,eta_total,eta1,eta2,eta3,eta_pos,eta_contact,"
    "efficiency,pdas_iters,seconds";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string history_to_csv(const ConvergenceHistory& history) {
  std::string out = kHeader;
  out += '\n';
  for (const LevelRecord& r : history.levels) {
    out += std::to_string(r.level) + ',' + std::to_string(r.cells) + ',' +
           std::to_string(r.dofs) + ',' + fmt(r.error_energy) + ',' + fmt(r.eta_total) +
           ',' + fmt(r.eta1) + ',' + fmt(r.eta2) + ',' + fmt(r.eta3) + ',' +
           fmt(r.eta_pos) + ',' + fmt(r.eta_contact) + ',' + fmt(r.efficiency) + ',' +
           std::to_string(r.pdas_iters) + ',' + fmt(r.seconds) + '\n';
  }
  return out;
}

ConvergenceHistory history_from_csv(const std::string& csv) {
  ConvergenceHistory history;
  std::stringstream ss(csv);
  std::string line;
  if (!std::getline(ss, line) || line != kHeader)
    throw std::invalid_argument("history_from_csv: bad header");
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 13)
      throw std::invalid_argument("history_from_csv: expected 13 fields, got " +
                                  std::to_string(fields.size()));
    LevelRecord r;
    r.level = std::stoi(fields[0]);
    r.cells = std::stoi(fields[1]);
    r.dofs = std::stoi(fields[2]);
    if (!fields[3].empty()) r.error_energy = std::stod(fields[3]);
    r.eta_total = std::stod(fields[4]);
    r.eta1 = std::stod(fields[5]);
    r.eta2 = std::stod(fields[6]);
    r.eta3 = std::stod(fields[7]);
    r.eta_pos = std::stod(fields[8]);
    r.eta_contact = std::stod(fields[9]);
    if (!fields[10].empty()) r.efficiency = std::stod(fields[10]);
    r.pdas_iters = std::stoi(fields[11]);
    r.seconds = std::stod(fields[12]);
    history.levels.push_back(r);
  }
  return history;
}

void write_history(const ConvergenceHistory& history, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_history: cannot open " + path);
  out << history_to_csv(history);
}

ConvergenceHistory read_history(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_history: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return history_from_csv(ss.str());
}

}  // namespace hho
