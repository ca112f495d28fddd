#ifndef DCP_IO_HPP
#define DCP_IO_HPP

// CSV/SVG serialization. Every number is written with 17 significant digits
// so files round-trip doubles exactly.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dcp/action.hpp"
#include "dcp/common.hpp"
#include "dcp/fock.hpp"
#include "dcp/interferometer.hpp"
#include "dcp/wave.hpp"

namespace dcp::io {

std::string format_number(double v);

/// Parses `a+bi` style literals: "1", "-2.5", "i", "-i", "0.5i", "1+2i",
/// "1e-3-4.5e2i". Throws InvalidParameter otherwise.
std::complex<double> parse_complex(std::string_view text);

std::string format_complex(std::complex<double> z);

template <typename Real>
void write_operator_csv(std::ostream& out, const OperatorMatrix<Real>& m) {
  out << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << r << ',' << c << ',' << format_number(static_cast<double>(m(r, c).real())) << ','
          << format_number(static_cast<double>(m(r, c).imag())) << '\n';
    }
  }
}

template <typename Real>
void write_state_csv(std::ostream& out, const fock::StateVector<Real>& s) {
  out << "n,re,im\n";
  for (std::size_t n = 0; n < s.dim(); ++n) {
    out << n << ',' << format_number(static_cast<double>(s[n].real())) << ','
        << format_number(static_cast<double>(s[n].imag())) << '\n';
  }
}

template <typename Real>
void write_wave_csv(std::ostream& out, const wave::SampledWave<Real>& w) {
  out << "x,re,im\n";
  for (std::size_t j = 0; j < w.n_samples(); ++j) {
    const auto v = w.values()(static_cast<Eigen::Index>(j));
    out << format_number(static_cast<double>(w.x(j))) << ','
        << format_number(static_cast<double>(v.real())) << ','
        << format_number(static_cast<double>(v.imag())) << '\n';
  }
}

/// Closed path from rows `x,p,duration`; a header line is optional.
action::PolygonPath<double> read_path_csv(std::istream& in);
void write_path_csv(std::ostream& out, const action::PolygonPath<double>& path);

void write_sweep_csv(std::ostream& out, const interferometer::SweepResult& result);
void write_fringes_csv(std::ostream& out, const interferometer::FringeImage& image);

struct SweepSeries {
  std::string label;
  double optical_delay = 0.0;  // m, slope of the theory line
  interferometer::SweepResult result;
};

/// Phase vs rf offset (MHz) with the theory line Delta phi = Delta K X per
/// series.
void write_sweep_svg(std::ostream& out, const std::vector<SweepSeries>& series);

}  // namespace dcp::io

#endif  // DCP_IO_HPP
