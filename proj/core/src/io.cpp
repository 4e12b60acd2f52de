#include "llab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace llab {

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("atomic_write: cannot open " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("atomic_write: write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("atomic_write: rename failed: " + path);
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out_ += '"';
      for (char ch : c) {
        if (ch == '"') out_ += '"';
        out_ += ch;
      }
      out_ += '"';
    } else {
      out_ += c;
    }
  }
  out_ += '\n';
}

namespace {

// canvas coordinates rounded to 1e-4 canvas units
std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string emit_svg(const std::vector<Excursion>& tris, double T) {
  const double W = 1000.0;
  auto px = [&](double s) { return s / T * W; };
  auto py = [&](double t) { return W - t / T * W; };  // y grows downward
  std::string svg;
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" "
      "height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\" "
         "stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& e : tris) {
    auto poly =
        clip_triangle(e.S1.mid(), e.S2.mid(), e.L.mid(), T);
    if (poly.empty()) continue;
    std::string pts;
    double cx = 0, cy = 0;
    for (const auto& [s, t] : poly) {
      if (!pts.empty()) pts += ' ';
      pts += coord(px(s)) + "," + coord(py(t));
      cx += px(s);
      cy += py(t);
    }
    cx /= poly.size();
    cy /= poly.size();
    svg += "<polygon points=\"" + pts +
           "\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"#3182bd\" "
           "stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + coord(cx) + "\" y=\"" + coord(cy) +
           "\" font-size=\"14\" text-anchor=\"middle\">" +
           std::to_string(e.n) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace llab
