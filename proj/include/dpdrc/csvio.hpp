#pragma once

#include <string>
#include <vector>

namespace dpdrc {

// Comma-separated, LF line endings, header row, floats in shortest
// round-trip form — regenerated files are byte-identical.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  std::string str() const;
  void write(const std::string& path) const;

  static std::string format(double value);  // shortest round-trip decimal
  static std::string format(int value);
  static std::string format(std::uint64_t value);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Six significant digits, the precision used for console output.
std::string sig6(double value);

}  // namespace dpdrc
