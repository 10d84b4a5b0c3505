#pragma once

#include <map>
#include <ostream>
#include <string>

#include "rdd/dynamics.hpp"
#include "rdd/rates.hpp"
#include "rdd/spectrum.hpp"

namespace rdd {

using Metadata = std::map<std::string, std::string>;

/// CSV with '#'-prefixed metadata header:
/// t, Re(C_A), Im(C_A), Re(C_B), Im(C_B), P_A, P_B
void write_time_series_csv(std::ostream& os, const TimeSeries& ts, const Metadata& meta);
std::string time_series_json(const TimeSeries& ts, const Metadata& meta);

/// CSV: omega_S, S with metadata header.
void write_spectrum_csv(std::ostream& os, const SpectrumSeries& sp, const Metadata& meta);
std::string spectrum_json(const SpectrumSeries& sp, const Metadata& meta);

/// Flat key-value text block.
void write_rate_report_text(std::ostream& os, const RateReport& r, const Metadata& meta);
std::string rate_report_json(const RateReport& r, const Metadata& meta);

std::string format_double(double v);

}  // namespace rdd
