#pragma once

/// CSV with a header row, '.' decimals and 17 significant digits, so that
/// written values read back bit-identically.

#include <filesystem>
#include <string>
#include <vector>

#include "g2flow/flow.hpp"
#include "g2flow/frame.hpp"
#include "g2flow/nlss.hpp"
#include "g2flow/surface.hpp"

namespace g2flow {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Throws io on unreadable files, invalid-input on malformed content.
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string format_double(double x);

/// Columns s, c1..c7.
CsvTable curve_table(const CurveState& curve, double s0 = 0.0);
/// Columns s, u1..u7.
CsvTable sphere_table(const SphereMapState& u, double s0 = 0.0);
/// Columns s, re1, im1, re2, im2, re3, im3.
CsvTable fields_table(const HasimotoFields& fields, double s0 = 0.0);
/// Columns s, h3_11, h3_12, h3_22, h4_22, h5_12, h5_22, h6_22, h7_22, theta,
/// then the rotated h4_22, h7_22 (NaN when not rotated).
CsvTable surface_table(const SecondFundamentalForm& h, const SecondFundamentalForm& rotated, double ds,
                       double s0 = 0.0);

/// ds is taken from the s column, which must be uniform to 1e-9 relative.
CurveState curve_from_table(const CsvTable& table, Boundary boundary, const ImOctonion& period_shift = {});
NlssState nlss_from_table(const CsvTable& table, const std::array<double, 3>& twist = {});
/// Seven rows of seven values; a header row is optional.
Mat7 matrix_from_csv(const std::filesystem::path& path);

}  // namespace g2flow
