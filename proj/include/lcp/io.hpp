#pragma once

#include <string>

#include "json.hpp"

#include "lcp/common.hpp"
#include "lcp/instance.hpp"

namespace lcp {

using Json = nlohmann::ordered_json;

// Instance wire format:
// {"n":int, "m":int, "entries":[[i,j,a],...], "features":[[[value,prob],...],...]}
// Doubles round-trip value-identically (shortest-repr serialization).
Json instance_to_json(const LinearInstance& inst);
LinearInstance instance_from_json(const Json& j);

Json estimate_to_json(const Estimate& e);
Estimate estimate_from_json(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);

// CSV with a header row, 17-significant-digit doubles, LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  const std::string& body() const { return body_; }
  static std::string format(double v);

 private:
  std::size_t width_;
  std::string body_;
};

}  // namespace lcp
