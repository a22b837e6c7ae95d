#pragma once

/// CSV export of series and reports. Numbers are written with %.17g so files
/// round-trip exactly and are byte-stable across runs.

#include <ostream>
#include <string>
#include <vector>

#include "reldecay/amplitudes.hpp"
#include "reldecay/analysis.hpp"

namespace reldecay::csv {

std::string number(double x);
/// Quotes a field when it contains a comma, quote or newline.
std::string field(const std::string& text);

/// t, t_over_tau, re_A, im_A, P, err_bound, label
void write_series(std::ostream& os, const AmplitudeSeries& series);

/// label, gamma, horizon, t_min, t_max, points, dev_dilated, dev_contracted, verdict
void write_compare(std::ostream& os, const std::vector<DeviationReport>& reports);

/// label, threshold, horizon, t_star, ratio_at_horizon, log10_ratio_at_horizon
/// (t_star empty when absent)
void write_transition(std::ostream& os, const std::vector<TransitionReport>& reports);

/// m, p_par, v, r_identity, r_carlo, r_corrected
void write_consistency(std::ostream& os, const std::vector<ConsistencyRecord>& records);

}  // namespace reldecay::csv
