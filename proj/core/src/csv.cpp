#include "reldecay/csv.hpp"

#include <cstdio>

namespace reldecay::csv {

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_series(std::ostream& os, const AmplitudeSeries& series) {
  os << "t,t_over_tau,re_A,im_A,P,err_bound,label\n";
  const std::string label = field(series.label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double t = series.grid.points[i];
    os << number(t) << ',' << number(t / series.grid.tau) << ',' << number(series.amplitudes[i].real())
       << ',' << number(series.amplitudes[i].imag()) << ',' << number(series.probabilities[i]) << ','
       << number(series.error_bounds[i]) << ',' << label << '\n';
  }
}

void write_compare(std::ostream& os, const std::vector<DeviationReport>& reports) {
  os << "label,gamma,horizon,t_min,t_max,points,dev_dilated,dev_contracted,verdict\n";
  for (const auto& r : reports) {
    os << field(r.label) << ',' << number(r.gamma) << ',' << number(r.horizon) << ','
       << number(r.window.t_min) << ',' << number(r.window.t_max) << ',' << r.points << ','
       << number(r.dev_dilated) << ',' << number(r.dev_contracted) << ',' << to_string(r.verdict) << '\n';
  }
}

void write_transition(std::ostream& os, const std::vector<TransitionReport>& reports) {
  os << "label,threshold,horizon,t_star,ratio_at_horizon,log10_ratio_at_horizon\n";
  for (const auto& r : reports) {
    os << field(r.label) << ',' << number(r.threshold) << ',' << number(r.horizon) << ','
       << (r.t_star ? number(*r.t_star) : std::string()) << ',' << number(r.ratio_at_horizon) << ',' << number(r.log10_ratio_at_horizon) << '\n';
  }
}

void write_consistency(std::ostream& os, const std::vector<ConsistencyRecord>& records) {
  os << "m,p_par,v,r_identity,r_carlo,r_corrected\n";
  for (const auto& r : records) {
    os << number(r.m) << ',' << number(r.p_par) << ',' << number(r.v) << ',' << number(r.r_identity)
       << ',' << number(r.r_carlo) << ',' << number(r.r_corrected) << '\n';
  }
}

}  // namespace reldecay::csv
