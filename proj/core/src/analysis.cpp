#include "reldecay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "reldecay/error.hpp"
#include "reldecay/parallel.hpp"

namespace reldecay {

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::DilatedLaw: return "DilatedLaw";
    case Verdict::ContractedLaw: return "ContractedLaw";
    case Verdict::Neither: break;
  }
  return "Neither";
}

Verdict decide_verdict(double dev_dilated, double dev_contracted) {
  if (!std::isfinite(dev_dilated) || !std::isfinite(dev_contracted)) return Verdict::Neither;
  if (std::max(dev_dilated, dev_contracted) < kVerdictFloor) return Verdict::Neither;
  if (dev_contracted > kVerdictSeparation * dev_dilated) return Verdict::DilatedLaw;
  if (dev_dilated > kVerdictSeparation * dev_contracted) return Verdict::ContractedLaw;
  return Verdict::Neither;
}

DeviationReport dilation_compare(const AmplitudeSeries& series, const RestProvider& rest_probability,
                                 double gamma, Window window, unsigned threads) {
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw ParameterError("dilation_compare: gamma must be >= 1");
  if (series.size() == 0) throw ParameterError("dilation_compare: empty series");
  const double tau = series.grid.tau;
  const double first = series.grid.points.front() / tau;
  const double last = series.grid.points.back() / tau;
  const double slack = 1e-12 * std::max(1.0, last);
  if (!(window.t_min <= window.t_max) || window.t_min < first - slack || window.t_max > last + slack) {
    throw ParameterError("dilation_compare: window outside the series grid");
  }

  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double s = series.grid.points[i] / tau;
    if (s >= window.t_min - slack && s <= window.t_max + slack &&
        std::isfinite(series.probabilities[i])) {
      inside.push_back(i);
    }
  }
  if (inside.empty()) throw ParameterError("dilation_compare: no grid points inside the window");

  std::vector<double> dil(inside.size()), con(inside.size());
  parallel_for(inside.size(), threads, [&](std::size_t k) {
    const std::size_t i = inside[k];
    const double t = series.grid.points[i];
    const double P = series.probabilities[i];
    dil[k] = std::abs(P - rest_probability(t / gamma));
    con[k] = std::abs(P - rest_probability(gamma * t));
  });

  DeviationReport report;
  report.gamma = gamma;
  report.horizon = last;
  report.window = window;
  report.points = inside.size();
  report.label = series.label;
  report.dev_dilated = *std::max_element(dil.begin(), dil.end());
  report.dev_contracted = *std::max_element(con.begin(), con.end());
  report.verdict = decide_verdict(report.dev_dilated, report.dev_contracted);
  return report;
}

RateResult effective_rate(const AmplitudeSeries& series) {
  RateResult out;
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double P = series.probabilities[i];
    const double t = series.grid.points[i];
    if (!(P > 0.0) || !std::isfinite(P)) {
      out.notes.push_back("skipped t=" + std::to_string(t) + ": P not positive");
      continue;
    }
    ts.push_back(t);
    ys.push_back(-std::log(P));
  }
  const std::size_t n = ts.size();
  if (n < 2) return out;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == n ? n - 1 : i + 1;
    out.points.push_back({ts[i], (ys[b] - ys[a]) / (ts[b] - ts[a])});
  }
  return out;
}

TransitionReport transition_time(const AmplitudeSeries& series, double threshold) {
  const double tau = series.grid.tau;
  if (series.size() < 2 || series.grid.points.back() < 100.0 * tau * (1.0 - 1e-12)) {
    throw PreconditionError("transition_time: series must reach at least 100 tau");
  }
  const auto& t = series.grid.points;
  const auto& P = series.probabilities;
  auto log_p = [&](std::size_t i) {
    return P[i] > 0.0 && std::isfinite(P[i]) ? std::log(P[i]) : std::numeric_limits<double>::quiet_NaN();
  };

  // Anchor ln P(tau).
  const std::size_t hi = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), tau) - t.begin());
  if (hi == t.size()) throw PreconditionError("transition_time: grid does not reach tau");
  double anchor;
  if (t[hi] == tau || hi == 0) {
    anchor = log_p(hi);
  } else {
    const double w = (tau - t[hi - 1]) / (t[hi] - t[hi - 1]);
    anchor = (1.0 - w) * log_p(hi - 1) + w * log_p(hi);
  }
  if (!std::isfinite(anchor)) throw PreconditionError("transition_time: P(tau) is not positive");

  TransitionReport report;
  report.threshold = threshold;
  report.horizon = t.back() / tau;
  report.label = series.label;
  const double log_threshold = std::log(threshold);
  auto log_ratio = [&](std::size_t i) { return log_p(i) - anchor + (t[i] - tau) / tau; };
  for (std::size_t i = hi; i < t.size(); ++i) {
    const double r = log_ratio(i);
    if (std::isfinite(r) && r >= log_threshold) {
      report.t_star = t[i] / tau;
      break;
    }
  }
  const double last = log_ratio(t.size() - 1);
  if (std::isfinite(last)) {
    report.ratio_at_horizon = std::exp(last);
    report.log10_ratio_at_horizon = last / std::numbers::ln10;
  } else {
    const bool vanished = P.back() == 0.0;
    report.ratio_at_horizon = vanished ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    report.log10_ratio_at_horizon = vanished ? -std::numeric_limits<double>::infinity()
                                             : std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

std::vector<ConsistencyRecord> consistency_scan(const std::vector<double>& m_values,
                                                const std::vector<double>& p_par_values,
                                                const std::vector<double>& v_values,
                                                unsigned threads) {
  if (m_values.empty() || p_par_values.empty() || v_values.empty()) {
    throw ParameterError("consistency_scan: empty grid");
  }
  const std::size_t np = p_par_values.size(), nv = v_values.size();
  std::vector<ConsistencyRecord> records(m_values.size() * np * nv);
  parallel_for(records.size(), threads, [&](std::size_t k) {
    const std::size_t i = k / (np * nv);
    const std::size_t j = (k / nv) % np;
    const std::size_t l = k % nv;
    records[k] = consistency_residual(m_values[i], p_par_values[j], v_values[l]);
  });
  std::stable_sort(records.begin(), records.end(), [](const ConsistencyRecord& a, const ConsistencyRecord& b) {
    if (a.r_identity != b.r_identity) return a.r_identity > b.r_identity;
    return std::tie(a.m, a.p_par, a.v) < std::tie(b.m, b.p_par, b.v);
  });
  return records;
}

}  // namespace reldecay
