#include "lcp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lcp {

Json instance_to_json(const LinearInstance& inst) {
  Json j;
  j["n"] = inst.n();
  j["m"] = inst.m();
  Json entries = Json::array();
  for (const MatrixEntry& e : inst.entries()) entries.push_back({e.row, e.col, e.coeff});
  j["entries"] = std::move(entries);
  Json features = Json::array();
  for (const auto& f : inst.features()) {
    Json atoms = Json::array();
    for (const auto& a : f.atoms()) atoms.push_back({a.value, a.prob});
    features.push_back(std::move(atoms));
  }
  j["features"] = std::move(features);
  return j;
}

LinearInstance instance_from_json(const Json& j) {
  std::size_t n = j.at("n").get<std::size_t>();
  std::size_t m = j.at("m").get<std::size_t>();
  std::vector<MatrixEntry> entries;
  for (const auto& e : j.at("entries"))
    entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                       e.at(2).get<double>()});
  std::vector<DiscreteDistribution> features;
  for (const auto& f : j.at("features")) {
    std::vector<DiscreteDistribution::Atom> atoms;
    for (const auto& a : f) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    features.emplace_back(std::move(atoms));
  }
  return LinearInstance(n, m, std::move(entries), std::move(features));
}

Json estimate_to_json(const Estimate& e) {
  return Json{{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}, {"exact", e.exact}};
}

Estimate estimate_from_json(const Json& j) {
  return Estimate{j.at("mean").get<double>(), j.at("std_error").get<double>(),
                  j.at("n").get<std::uint64_t>(), j.at("exact").get<bool>()};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) body_ += ',';
    body_ += header[k];
  }
  body_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) body_ += ',';
    body_ += cells[k];
  }
  body_ += '\n';
}

std::string CsvWriter::format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace lcp
