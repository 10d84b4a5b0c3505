#include "rdd/series_io.hpp"

#include <charconv>
#include <json.hpp>
#include <sstream>

namespace rdd {

namespace {

using nlohmann::ordered_json;

const char* regime_name(RateRegime r) {
  switch (r) {
    case RateRegime::DonorBroad:
      return "i";
    case RateRegime::Equal:
      return "ii";
    case RateRegime::AcceptorBroad:
      return "iii";
  }
  return "?";
}

ordered_json meta_json(const Metadata& meta) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

void write_meta(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << " = " << v << "\n";
}

}  // namespace

std::string format_double(double v) {
  // Shortest round-trip representation keeps outputs byte-stable.
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

void write_time_series_csv(std::ostream& os, const TimeSeries& ts, const Metadata& meta) {
  write_meta(os, meta);
  os << "t, Re(C_A), Im(C_A), Re(C_B), Im(C_B), P_A, P_B\n";
  for (Eigen::Index k = 0; k < ts.t.size(); ++k) {
    os << format_double(ts.t[k]) << ", " << format_double(ts.c_a[k].real()) << ", "
       << format_double(ts.c_a[k].imag()) << ", " << format_double(ts.c_b[k].real()) << ", "
       << format_double(ts.c_b[k].imag()) << ", " << format_double(ts.p_a[k]) << ", "
       << format_double(ts.p_b[k]) << "\n";
  }
}

std::string time_series_json(const TimeSeries& ts, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta_json(meta);
  j["columns"] = {"t", "Re(C_A)", "Im(C_A)", "Re(C_B)", "Im(C_B)", "P_A", "P_B"};
  ordered_json rows = ordered_json::array();
  for (Eigen::Index k = 0; k < ts.t.size(); ++k) {
    rows.push_back({ts.t[k], ts.c_a[k].real(), ts.c_a[k].imag(), ts.c_b[k].real(),
                    ts.c_b[k].imag(), ts.p_a[k], ts.p_b[k]});
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void write_spectrum_csv(std::ostream& os, const SpectrumSeries& sp, const Metadata& meta) {
  Metadata all = meta;
  if (!sp.regime.empty()) all["regime"] = sp.regime;
  if (!sp.branch.empty()) all["branch"] = sp.branch;
  write_meta(os, all);
  os << "omega_S, S\n";
  for (Eigen::Index k = 0; k < sp.omega_s.size(); ++k)
    os << format_double(sp.omega_s[k]) << ", " << format_double(sp.s[k]) << "\n";
}

std::string spectrum_json(const SpectrumSeries& sp, const Metadata& meta) {
  ordered_json j;
  Metadata all = meta;
  if (!sp.regime.empty()) all["regime"] = sp.regime;
  if (!sp.branch.empty()) all["branch"] = sp.branch;
  j["meta"] = meta_json(all);
  j["columns"] = {"omega_S", "S"};
  ordered_json rows = ordered_json::array();
  for (Eigen::Index k = 0; k < sp.omega_s.size(); ++k)
    rows.push_back({sp.omega_s[k], sp.s[k]});
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void write_rate_report_text(std::ostream& os, const RateReport& r, const Metadata& meta) {
  write_meta(os, meta);
  os << "regime = " << regime_name(r.regime) << "\n";
  os << "w1 = " << format_double(r.w1) << "\n";
  os << "t0 = " << format_double(r.t0) << "\n";
  os << "w2 = " << format_double(r.w2) << "\n";
  os << "w_golden = " << format_double(r.w_golden) << "\n";
  os << "ratio_w1_over_w = " << format_double(r.ratio) << "\n";
  os << "ratio_corrected = " << format_double(r.ratio_corrected) << "\n";
  os << "p_a_t0 = " << format_double(r.p_a_t0) << "\n";
}

std::string rate_report_json(const RateReport& r, const Metadata& meta) {
  ordered_json j;
  j["meta"] = meta_json(meta);
  j["regime"] = regime_name(r.regime);
  j["w1"] = r.w1;
  j["t0"] = r.t0;
  j["w2"] = r.w2;
  j["w_golden"] = r.w_golden;
  j["ratio_w1_over_w"] = r.ratio;
  j["ratio_corrected"] = r.ratio_corrected;
  j["p_a_t0"] = r.p_a_t0;
  return j.dump(2) + "\n";
}

}  // namespace rdd
