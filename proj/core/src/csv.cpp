#include "g2flow/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "g2flow/error.hpp"

namespace g2flow {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string{} : cell.substr(a, b - a + 1));
  }
  return out;
}

bool parse_number(const std::string& s, double& x) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec == std::errc{} && ptr == end) return true;
  if (s == "nan" || s == "NaN") {
    x = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  return false;
}

bool numeric_row(const std::vector<std::string>& cells, std::vector<double>& values) {
  values.clear();
  for (const auto& c : cells) {
    double x = 0.0;
    if (!parse_number(c, x)) return false;
    values.push_back(x);
  }
  return true;
}

void require_columns(const CsvTable& t, std::size_t n, const char* what) {
  if (t.rows.empty()) throw Error(ErrorCode::invalid_input, std::string(what) + ": no data rows");
  for (const auto& r : t.rows) {
    if (r.size() < n) throw Error(ErrorCode::invalid_input, std::string(what) + ": expected " + std::to_string(n) + " columns");
  }
}

double uniform_step(const CsvTable& t) {
  if (t.rows.size() < 2) throw Error(ErrorCode::invalid_input, "need at least two rows to infer ds");
  const double ds = t.rows[1][0] - t.rows[0][0];
  if (!(ds > 0.0)) throw Error(ErrorCode::invalid_input, "s column must increase");
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    const double step = t.rows[k][0] - t.rows[k - 1][0];
    if (std::abs(step - ds) > 1e-9 * std::max(1.0, std::abs(t.rows[k][0]))) {
      throw Error(ErrorCode::invalid_input, "s column is not uniformly spaced at row " + std::to_string(k));
    }
  }
  return ds;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  CsvTable t;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (numeric_row(cells, values)) {
      t.rows.push_back(values);
    } else if (first) {
      t.header = cells;
    } else {
      throw Error(ErrorCode::invalid_input, path.string() + ":" + std::to_string(line_no) + ": non-numeric value");
    }
    first = false;
  }
  return t;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

CsvTable curve_table(const CurveState& curve, double s0) {
  CsvTable t{{"s", "c1", "c2", "c3", "c4", "c5", "c6", "c7"}, {}};
  for (std::size_t n = 0; n < curve.size(); ++n) {
    std::vector<double> row{s0 + static_cast<double>(n) * curve.ds};
    row.insert(row.end(), curve.samples[n].c.begin(), curve.samples[n].c.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable sphere_table(const SphereMapState& u, double s0) {
  CsvTable t{{"s", "u1", "u2", "u3", "u4", "u5", "u6", "u7"}, {}};
  for (std::size_t n = 0; n < u.size(); ++n) {
    std::vector<double> row{s0 + static_cast<double>(n) * u.ds};
    row.insert(row.end(), u.samples[n].c.begin(), u.samples[n].c.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable fields_table(const HasimotoFields& f, double s0) {
  CsvTable t{{"s", "re1", "im1", "re2", "im2", "re3", "im3"}, {}};
  for (std::size_t n = 0; n < f.size(); ++n) {
    t.rows.push_back({s0 + static_cast<double>(n) * f.ds, f.phi1[n].real(), f.phi1[n].imag(), f.phi2[n].real(),
                      f.phi2[n].imag(), f.phi3[n].real(), f.phi3[n].imag()});
  }
  return t;
}

CsvTable surface_table(const SecondFundamentalForm& h, const SecondFundamentalForm& rotated, double ds, double s0) {
  CsvTable t{{"s", "h3_11", "h3_12", "h3_22", "h4_22", "h5_12", "h5_22", "h6_22", "h7_22", "theta", "rot_h4_22",
              "rot_h7_22"},
             {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = 0; n < h.size(); ++n) {
    const auto& a = h.h[n];
    const bool rot = rotated.rotated && n < rotated.size();
    t.rows.push_back({s0 + static_cast<double>(n) * ds, a[0][kH11], a[0][kH12], a[0][kH22], a[1][kH22], a[2][kH12],
                      a[2][kH22], a[3][kH22], a[4][kH22], rot ? rotated.theta[n] : nan,
                      rot ? rotated.h[n][1][kH22] : nan, rot ? rotated.h[n][4][kH22] : nan});
  }
  return t;
}

CurveState curve_from_table(const CsvTable& table, Boundary boundary, const ImOctonion& period_shift) {
  require_columns(table, 8, "curve CSV");
  CurveState c;
  c.boundary = boundary;
  c.period_shift = period_shift;
  c.ds = uniform_step(table);
  for (const auto& r : table.rows) {
    ImOctonion x;
    for (std::size_t a = 0; a < 7; ++a) x.c[a] = r[a + 1];
    c.samples.push_back(x);
  }
  return c;
}

NlssState nlss_from_table(const CsvTable& table, const std::array<double, 3>& twist) {
  require_columns(table, 7, "NLSS CSV");
  NlssState st;
  st.fields.ds = uniform_step(table);
  st.fields.twist = twist;
  for (const auto& r : table.rows) {
    st.fields.phi1.emplace_back(r[1], r[2]);
    st.fields.phi2.emplace_back(r[3], r[4]);
    st.fields.phi3.emplace_back(r[5], r[6]);
  }
  return st;
}

Mat7 matrix_from_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  if (t.rows.size() != 7) throw Error(ErrorCode::invalid_input, "matrix CSV must have 7 rows");
  Mat7 m;
  for (std::size_t i = 0; i < 7; ++i) {
    if (t.rows[i].size() != 7) throw Error(ErrorCode::invalid_input, "matrix CSV rows must have 7 values");
    for (std::size_t j = 0; j < 7; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.rows[i][j];
  }
  return m;
}

}  // namespace g2flow
