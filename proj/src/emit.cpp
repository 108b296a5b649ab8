#include "polygen/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string fmt2(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string format_stamp(Complex stamp, bool q_time) {
  if (!q_time) return fmt17(stamp.real());
  const double im = stamp.imag();
  return fmt17(stamp.real()) + (im < 0.0 ? "-" : "+") + fmt17(std::abs(im)) + "i";
}

std::size_t emission_rows(const Trajectory& traj, long max_ell) {
  const std::size_t length = traj.length();
  if (max_ell < 0) return length;
  return std::min(length, static_cast<std::size_t>(max_ell) + 1);
}

const std::vector<OrderedVector>& ordered_or_throw(const Trajectory& traj) {
  if (traj.ordered.size() != traj.states.size())
    throw std::invalid_argument("trajectory carries no ordered states to emit");
  return traj.ordered;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

struct AxisScale {
  double lo = 0.0, hi = 1.0;  // data range
  double a = 0.0, b = 1.0;    // pixel range
  [[nodiscard]] double map(double v) const {
    return a + (v - lo) / (hi - lo) * (b - a);
  }
};

AxisScale make_scale(double lo, double hi, double a, double b) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo));
    lo -= 0.5 * pad;
    hi += 0.5 * pad;
  } else {
    const double pad = 0.06 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return AxisScale{lo, hi, a, b};
}

void draw_marker(std::ostringstream& svg, std::size_t component, double cx,
                 double cy, const char* color) {
  switch (component % 4) {
    case 0:
      svg << "<circle cx=\"" << fmt2(cx) << "\" cy=\"" << fmt2(cy)
          << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
      return;
    case 1: {
      // Ten-point star: outer and inner radii alternate around the center.
      svg << "<path fill=\"" << color << "\" d=\"M";
      for (int k = 0; k < 10; ++k) {
        const double radius = k % 2 == 0 ? 6.0 : 2.4;
        const double angle = -1.5707963267948966 + k * 0.6283185307179586;
        svg << (k == 0 ? "" : " L") << fmt2(cx + radius * std::cos(angle)) << ' '
            << fmt2(cy + radius * std::sin(angle));
      }
      svg << " Z\"/>\n";
      return;
    }
    case 2:
      svg << "<rect x=\"" << fmt2(cx - 3.2) << "\" y=\"" << fmt2(cy - 3.2)
          << "\" width=\"6.4\" height=\"6.4\" fill=\"" << color << "\"/>\n";
      return;
    default:
      svg << "<path fill=\"" << color << "\" d=\"M" << fmt2(cx) << ' '
          << fmt2(cy - 4.4) << " L" << fmt2(cx - 4.0) << ' ' << fmt2(cy + 3.2)
          << " L" << fmt2(cx + 4.0) << ' ' << fmt2(cy + 3.2) << " Z\"/>\n";
      return;
  }
}

void draw_frame(std::ostringstream& svg, double x0, double y0, double x1,
                double y1) {
  svg << "<rect x=\"" << fmt2(x0) << "\" y=\"" << fmt2(y0) << "\" width=\""
      << fmt2(x1 - x0) << "\" height=\"" << fmt2(y1 - y0)
      << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
}

void draw_text(std::ostringstream& svg, double x, double y, int size,
               const std::string& anchor, const std::string& text) {
  svg << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" font-size=\""
      << size << "\" font-family=\"sans-serif\" fill=\"#202020\" text-anchor=\""
      << anchor << "\">" << escape_xml(text) << "</text>\n";
}

std::string axis_label(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.3g", value);
  return buffer;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_number(const std::string& cell, const std::string& context) {
  try {
    std::size_t used = 0;
    const double value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return value;
  } catch (const std::exception&) {
    throw config_error("trajectory CSV: bad number '" + cell + "' in " + context);
  }
}

Complex parse_stamp(const std::string& cell, const std::string& context,
                    bool* q_time) {
  if (cell.empty()) throw config_error("trajectory CSV: empty stamp in " + context);
  if (cell.back() != 'i') return Complex(parse_number(cell, context), 0.0);
  const std::string body = cell.substr(0, cell.size() - 1);
  // Split at the sign of the imaginary part: the last +/- that is neither
  // the leading sign nor part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t pos = body.size(); pos-- > 1;) {
    const char c = body[pos];
    if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
      split = pos;
      break;
    }
  }
  if (split == std::string::npos)
    throw config_error("trajectory CSV: bad stamp '" + cell + "' in " + context);
  *q_time = true;
  return Complex(parse_number(body.substr(0, split), context),
                 parse_number(body.substr(split), context));
}

bool parse_flag(const std::string& cell, const std::string& context) {
  if (cell == "0") return false;
  if (cell == "1") return true;
  throw config_error("trajectory CSV: bad flag '" + cell + "' in " + context);
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec)
      throw config_error("cannot create output directory: " +
                         target.parent_path().string());
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot write file: " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw config_error("write failed: " + temp.string());
  }
  fs::rename(temp, target, ec);
  if (ec) throw config_error("cannot move file into place: " + path);
}

std::string trajectory_csv(const Trajectory& traj,
                           const std::string& ordering_note, long max_ell) {
  const std::vector<OrderedVector>& ordered = ordered_or_throw(traj);
  const std::size_t rows = emission_rows(traj, max_ell);
  std::ostringstream out;
  out << "# states are unordered sets; rows ordered " << ordering_note
      << " for display\n";
  out << "ell,t,flag_nongeneric,flag_ambiguous";
  for (int n = 1; n <= traj.arity; ++n)
    out << ",re_x" << n << ",im_x" << n;
  out << '\n';
  for (std::size_t ell = 0; ell < rows; ++ell) {
    out << ell << ',' << format_stamp(traj.stamps[ell], traj.q_time) << ','
        << (traj.non_generic[ell] ? '1' : '0') << ','
        << (traj.ambiguous[ell] ? '1' : '0');
    for (const Complex& value : ordered[ell])
      out << ',' << fmt17(value.real()) << ',' << fmt17(value.imag());
    out << '\n';
  }
  return out.str();
}

std::string component_series_csv(const Trajectory& traj, bool imaginary,
                                 long max_ell) {
  const std::vector<OrderedVector>& ordered = ordered_or_throw(traj);
  const std::size_t rows = emission_rows(traj, max_ell);
  const char* part = imaginary ? "im" : "re";
  std::ostringstream out;
  out << "ell";
  for (int n = 1; n <= traj.arity; ++n) out << ',' << part << "_x" << n;
  out << '\n';
  for (std::size_t ell = 0; ell < rows; ++ell) {
    out << ell;
    for (const Complex& value : ordered[ell])
      out << ',' << fmt17(imaginary ? value.imag() : value.real());
    out << '\n';
  }
  return out.str();
}

std::string plane_svg(const Trajectory& traj, const std::string& title,
                      long max_ell) {
  const std::vector<OrderedVector>& ordered = ordered_or_throw(traj);
  const std::size_t rows = emission_rows(traj, max_ell);

  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
  bool first = true;
  for (std::size_t ell = 0; ell < rows; ++ell) {
    for (const Complex& value : ordered[ell]) {
      if (first) {
        re_lo = re_hi = value.real();
        im_lo = im_hi = value.imag();
        first = false;
      } else {
        re_lo = std::min(re_lo, value.real());
        re_hi = std::max(re_hi, value.real());
        im_lo = std::min(im_lo, value.imag());
        im_hi = std::max(im_hi, value.imag());
      }
    }
  }

  const double width = 720.0, height = 720.0;
  const double left = 80.0, right = width - 30.0;
  const double top = 56.0, bottom = height - 64.0;
  const AxisScale sx = make_scale(re_lo, re_hi, left, right);
  const AxisScale sy = make_scale(im_lo, im_hi, bottom, top);  // y grows upward

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  draw_text(svg, width / 2.0, 30.0, 16, "middle", title);
  draw_frame(svg, left, top, right, bottom);
  draw_text(svg, left, bottom + 18.0, 11, "middle", axis_label(sx.lo));
  draw_text(svg, right, bottom + 18.0, 11, "middle", axis_label(sx.hi));
  draw_text(svg, left - 8.0, bottom, 11, "end", axis_label(sy.lo));
  draw_text(svg, left - 8.0, top + 10.0, 11, "end", axis_label(sy.hi));
  draw_text(svg, width / 2.0, height - 22.0, 12, "middle", "Re x");
  draw_text(svg, 24.0, height / 2.0, 12, "middle", "Im x");

  for (int n = 0; n < traj.arity; ++n) {
    const char* color = kPalette[static_cast<std::size_t>(n) % kPaletteSize];
    const std::string legend =
        "x" + std::to_string(n + 1) +
        (n % 4 == 0 ? " (dots)" : n % 4 == 1 ? " (stars)" : "");
    draw_text(svg, right - 8.0, top + 18.0 + 16.0 * n, 11, "end", legend);
    draw_marker(svg, static_cast<std::size_t>(n), right - 86.0,
                top + 14.0 + 16.0 * n, color);
    for (std::size_t ell = 0; ell < rows; ++ell) {
      const Complex value = ordered[ell][static_cast<std::size_t>(n)];
      const double cx = sx.map(value.real());
      const double cy = sy.map(value.imag());
      draw_marker(svg, static_cast<std::size_t>(n), cx, cy, color);
      draw_text(svg, cx + 6.0, cy - 6.0, 9, "start", std::to_string(ell));
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string series_svg(const Trajectory& traj, const std::string& title,
                       long max_ell) {
  const std::vector<OrderedVector>& ordered = ordered_or_throw(traj);
  const std::size_t rows = emission_rows(traj, max_ell);

  const double width = 820.0, panel_height = 280.0;
  const double left = 80.0, right = width - 30.0;
  const double gap = 64.0, top0 = 56.0;
  const double height = top0 + 2.0 * panel_height + gap + 48.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  draw_text(svg, width / 2.0, 30.0, 16, "middle", title);

  for (int panel = 0; panel < 2; ++panel) {
    const bool imaginary = panel == 1;
    const double top = top0 + panel * (panel_height + gap);
    const double bottom = top + panel_height;

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (std::size_t ell = 0; ell < rows; ++ell) {
      for (const Complex& value : ordered[ell]) {
        const double v = imaginary ? value.imag() : value.real();
        if (first) {
          lo = hi = v;
          first = false;
        } else {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    const AxisScale sx =
        make_scale(0.0, static_cast<double>(rows > 1 ? rows - 1 : 1), left, right);
    const AxisScale sy = make_scale(lo, hi, bottom, top);

    draw_frame(svg, left, top, right, bottom);
    draw_text(svg, left - 8.0, bottom, 11, "end", axis_label(sy.lo));
    draw_text(svg, left - 8.0, top + 10.0, 11, "end", axis_label(sy.hi));
    draw_text(svg, left, bottom + 18.0, 11, "middle", "0");
    draw_text(svg, right, bottom + 18.0, 11, "middle",
              std::to_string(rows > 0 ? rows - 1 : 0));
    draw_text(svg, 26.0, (top + bottom) / 2.0, 12, "middle",
              imaginary ? "Im x" : "Re x");
    draw_text(svg, width / 2.0, bottom + 34.0, 12, "middle", "time step");

    for (int n = 0; n < traj.arity; ++n) {
      const char* color = kPalette[static_cast<std::size_t>(n) % kPaletteSize];
      // Connecting segments are visual aids; the data are the markers.
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1\" stroke-opacity=\"0.45\" points=\"";
      for (std::size_t ell = 0; ell < rows; ++ell) {
        const Complex value = ordered[ell][static_cast<std::size_t>(n)];
        const double v = imaginary ? value.imag() : value.real();
        svg << fmt2(sx.map(static_cast<double>(ell))) << ',' << fmt2(sy.map(v))
            << ' ';
      }
      svg << "\"/>\n";
      for (std::size_t ell = 0; ell < rows; ++ell) {
        const Complex value = ordered[ell][static_cast<std::size_t>(n)];
        const double v = imaginary ? value.imag() : value.real();
        draw_marker(svg, static_cast<std::size_t>(n),
                    sx.map(static_cast<double>(ell)), sy.map(v), color);
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

Trajectory parse_trajectory_csv(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw config_error("trajectory CSV: no header row");

  const std::vector<std::string> header = split_csv_line(lines[0]);
  if (header.size() < 6 || header[0] != "ell" || header[1] != "t" ||
      header[2] != "flag_nongeneric" || header[3] != "flag_ambiguous" ||
      (header.size() - 4) % 2 != 0)
    throw config_error("trajectory CSV: unrecognized header");
  const std::size_t arity = (header.size() - 4) / 2;
  for (std::size_t n = 0; n < arity; ++n) {
    const std::string tag = std::to_string(n + 1);
    if (header[4 + 2 * n] != "re_x" + tag || header[5 + 2 * n] != "im_x" + tag)
      throw config_error("trajectory CSV: unrecognized column names");
  }

  Trajectory traj;
  traj.arity = static_cast<int>(arity);
  bool q_time = false;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const std::string context = "row " + std::to_string(row);
    const std::vector<std::string> cells = split_csv_line(lines[row]);
    if (cells.size() != header.size())
      throw config_error("trajectory CSV: wrong cell count in " + context);
    traj.stamps.push_back(parse_stamp(cells[1], context, &q_time));
    traj.non_generic.push_back(parse_flag(cells[2], context));
    traj.ambiguous.push_back(parse_flag(cells[3], context));
    OrderedVector values(arity);
    for (std::size_t n = 0; n < arity; ++n)
      values[n] = Complex(parse_number(cells[4 + 2 * n], context),
                          parse_number(cells[5 + 2 * n], context));
    traj.states.push_back(RootSet{values});
    traj.ordered.push_back(std::move(values));
  }
  if (traj.states.empty()) throw config_error("trajectory CSV: no data rows");
  traj.q_time = q_time;
  return traj;
}

}  // namespace polygen
