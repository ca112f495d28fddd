#include "dcp/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>

#include "dcp/errors.hpp"

namespace dcp::io {

namespace {

double parse_real(std::string_view text, std::string_view whole) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("cannot parse complex literal '" + std::string(whole) + "'");
  }
  if (used != s.size()) {
    throw InvalidParameter("cannot parse complex literal '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string format_complex(std::complex<double> z) {
  std::string im = format_number(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_number(z.real()) + im + "i";
}

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InvalidParameter("empty complex literal");

  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // last sign that is not an exponent sign and not the leading character
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_text = split == std::string::npos ? "" : body.substr(0, split);
  const std::string im_text = split == std::string::npos ? body : body.substr(split);

  double im = 0.0;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_text, text);
  }
  const double re = re_text.empty() ? 0.0 : parse_real(re_text, text);
  return {re, im};
}

action::PolygonPath<double> read_path_csv(std::istream& in) {
  std::vector<action::PhasePoint<double>> vertices;
  std::vector<double> durations;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) {
      throw InvalidParameter("path csv line " + std::to_string(lineno) +
                             ": expected 3 columns x,p,duration");
    }
    if (vertices.empty() && durations.empty() && cells[0].find('x') != std::string::npos) {
      continue;  // header
    }
    try {
      vertices.push_back({std::stod(cells[0]), std::stod(cells[1])});
      durations.push_back(std::stod(cells[2]));
    } catch (const std::exception&) {
      throw InvalidParameter("path csv line " + std::to_string(lineno) + ": not a number");
    }
  }
  return action::PolygonPath<double>::closed(std::move(vertices), std::move(durations));
}

void write_path_csv(std::ostream& out, const action::PolygonPath<double>& path) {
  out << "x,p,duration\n";
  for (std::size_t i = 0; i < path.vertices().size(); ++i) {
    out << format_number(path.vertices()[i].x) << ',' << format_number(path.vertices()[i].p)
        << ',' << format_number(path.durations()[i]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const interferometer::SweepResult& result) {
  out << "delta_rf_hz,delta_k_per_m,fitted_phase_rad,predicted_phase_rad\n";
  for (const auto& r : result.rows) {
    out << format_number(r.delta_rf / kTwoPi<double>) << ',' << format_number(r.delta_k) << ','
        << format_number(r.fitted_phase) << ',' << format_number(r.predicted_phase) << '\n';
  }
}

void write_fringes_csv(std::ostream& out, const interferometer::FringeImage& image) {
  out << "pixel,intensity\n";
  for (std::size_t y = 0; y < image.pixels.size(); ++y) {
    out << y << ',' << format_number(image.pixels[y]) << '\n';
  }
}

void write_sweep_svg(std::ostream& out, const std::vector<SweepSeries>& series) {
  constexpr double width = 640, height = 480;
  constexpr double left = 70, right = 20, top = 20, bottom = 60;
  static const char* colors[] = {"#d62728", "#ff7f0e", "#1f77b4", "#2ca02c", "#9467bd"};

  double fmin = std::numeric_limits<double>::infinity(), fmax = -fmin;
  double pmin = fmin, pmax = -fmin;
  for (const auto& s : series) {
    for (const auto& r : s.result.rows) {
      const double f = r.delta_rf / kTwoPi<double> / 1e6;
      fmin = std::min(fmin, f);
      fmax = std::max(fmax, f);
      for (double p : {r.fitted_phase, r.predicted_phase}) {
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
      }
    }
  }
  if (!(fmax > fmin)) {
    fmin -= 1;
    fmax += 1;
  }
  if (!(pmax > pmin)) {
    pmin -= 1;
    pmax += 1;
  }
  const auto sx = [&](double f) { return left + (f - fmin) / (fmax - fmin) * (width - left - right); };
  const auto sy = [&](double p) { return top + (pmax - p) / (pmax - pmin) * (height - top - bottom); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right
      << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-size=\"14\">rf offset (MHz)</text>\n";
  out << "<text x=\"18\" y=\"" << (top + height - bottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << (top + height - bottom) / 2 << ")\">phase shift (rad)</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double f = fmin + (fmax - fmin) * t / 4.0;
    const double p = pmin + (pmax - pmin) * t / 4.0;
    char fb[32], pb[32];
    std::snprintf(fb, sizeof fb, "%.3g", f);
    std::snprintf(pb, sizeof pb, "%.3g", p);
    out << "<text x=\"" << sx(f) << "\" y=\"" << height - bottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fb << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << sy(p) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << pb << "</text>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = colors[i % std::size(colors)];
    const auto theory = [&](double f_mhz) {
      return f_mhz * 1e6 * kTwoPi<double> / interferometer::kSpeedOfLight * s.optical_delay;
    };
    out << "<line x1=\"" << sx(fmin) << "\" y1=\"" << sy(theory(fmin)) << "\" x2=\"" << sx(fmax)
        << "\" y2=\"" << sy(theory(fmax)) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    for (const auto& r : s.result.rows) {
      out << "<circle cx=\"" << sx(r.delta_rf / kTwoPi<double> / 1e6) << "\" cy=\""
          << sy(r.fitted_phase) << "\" r=\"3\" fill=\"none\" stroke=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 * (i + 1) << "\" fill=\"" << color
        << "\" font-size=\"12\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace dcp::io
