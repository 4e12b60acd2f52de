#pragma once

#include <string>
#include <vector>

#include "llab/excursions.hpp"

namespace llab {

// Write via temp file + rename so readers never see partial output.
void atomic_write(const std::string& path, const std::string& content);

// Deterministic decimal formatting (round-trippable, locale-independent).
std::string format_double(double v);

class CsvWriter {
 public:
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

// [0,T]^2 with one labeled polygon per clipped triangle; byte-identical
// for identical input.
std::string emit_svg(const std::vector<Excursion>& tris, double T);

}  // namespace llab
