#pragma once

// Serialization: binary PGM stability charts (with optional curve overlay),
// lossless CurvePoint CSV, and JSON for solve-point output.

#include <string>
#include <vector>

#include "tonguetrace/floquet.hpp"
#include "tonguetrace/solver.hpp"

namespace tt {

inline constexpr unsigned char kPgmStable = 170;
inline constexpr unsigned char kPgmUnstable = 0;
inline constexpr unsigned char kPgmOverlay = 255;

// P5, maxval 255, row-major with delta along the row.  Curves paint the
// nearest cell of each point white.
std::vector<unsigned char> render_chart(const StabilityChart& chart,
                                        const std::vector<TransitionCurve>& overlay = {});

void write_pgm(const std::string& path, int nx, int ny,
               const std::vector<unsigned char>& pixels);

std::string curve_csv_header(int order);
void write_curve_csv(const std::string& path, const TransitionCurve& curve, int order);
TransitionCurve read_curve_csv(const std::string& path);

// %.17g: shortest decimal that round-trips binary64
std::string format_double(double v);

}  // namespace tt
