#include "tonguetrace/chart_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tt {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<unsigned char> render_chart(const StabilityChart& chart,
                                        const std::vector<TransitionCurve>& overlay) {
  const auto& s = chart.spec;
  std::vector<unsigned char> px(chart.cells.size());
  for (size_t i = 0; i < chart.cells.size(); ++i)
    px[i] = chart.cells[i] ? kPgmUnstable : kPgmStable;
  const double dd = (s.nx > 1) ? (s.delta_max - s.delta_min) / (s.nx - 1) : 1.0;
  const double de = (s.ny > 1) ? (s.eps_max - s.eps_min) / (s.ny - 1) : 1.0;
  for (const auto& curve : overlay) {
    for (const auto& p : curve.points) {
      const int i = static_cast<int>(std::lround((p.delta - s.delta_min) / dd));
      const int j = static_cast<int>(std::lround((p.epsilon - s.eps_min) / de));
      if (i >= 0 && i < s.nx && j >= 0 && j < s.ny)
        px[static_cast<size_t>(j) * s.nx + i] = kPgmOverlay;
    }
  }
  return px;
}

void write_pgm(const std::string& path, int nx, int ny,
               const std::vector<unsigned char>& pixels) {
  if (static_cast<size_t>(nx) * ny != pixels.size())
    throw IoError("pgm: pixel count does not match dimensions");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "P5\n" << nx << " " << ny << "\n255\n";
  f.write(reinterpret_cast<const char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (!f) throw IoError("write failed: " + path);
}

std::string curve_csv_header(int order) {
  std::string h = "epsilon,delta";
  for (int k = 1; k <= order + 1; ++k) h += ",h" + std::to_string(k);
  h += ",zeta0,newton_iters,residual_norm,floquet_check";
  return h;
}

void write_curve_csv(const std::string& path, const TransitionCurve& curve,
                     int order) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << curve_csv_header(order) << "\n";
  for (const auto& p : curve.points) {
    f << format_double(p.epsilon) << "," << format_double(p.delta);
    for (double h : p.h) f << "," << format_double(h);
    f << "," << (p.zeta0 ? format_double(*p.zeta0) : std::string());
    f << "," << p.newton_iters << "," << format_double(p.residual_norm) << ","
      << format_double(p.floquet_check) << "\n";
  }
  if (!f) throw IoError("write failed: " + path);
}

TransitionCurve read_curve_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty curve file: " + path);
  // header: epsilon,delta,h1..hM,zeta0,newton_iters,residual_norm,floquet_check
  int ncols = 1;
  for (char c : line) ncols += (c == ',');
  const int nh = ncols - 6;
  if (nh < 1) throw IoError("malformed curve header: " + line);
  TransitionCurve curve;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (static_cast<int>(cells.size()) < ncols) cells.emplace_back();
    if (static_cast<int>(cells.size()) != ncols)
      throw IoError("malformed curve row: " + line);
    CurvePoint p;
    p.epsilon = std::stod(cells[0]);
    p.delta = std::stod(cells[1]);
    for (int k = 0; k < nh; ++k) p.h.push_back(std::stod(cells[2 + k]));
    if (!cells[2 + nh].empty()) p.zeta0 = std::stod(cells[2 + nh]);
    p.newton_iters = std::stoi(cells[3 + nh]);
    p.residual_norm = std::stod(cells[4 + nh]);
    p.floquet_check = std::stod(cells[5 + nh]);
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace tt
