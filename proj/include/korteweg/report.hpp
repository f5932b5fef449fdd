#ifndef KORTEWEG_REPORT_HPP
#define KORTEWEG_REPORT_HPP

#include <string>
#include <vector>

#include "korteweg/functionals.hpp"
#include "korteweg/spectrum.hpp"

namespace korteweg {

// Text renderings used by the CLI and the C API. CSV numbers carry 17
// significant digits; JSON numbers round-trip exactly. Nothing here depends
// on time or locale, so equal inputs give byte-identical output.

std::string format_number(double x);

std::string profile_csv(const WaveProfile& profile);
std::string profile_json(const WaveProfile& profile);

std::string moment_sweep_csv(const std::vector<MomentReport>& rows);
std::string moment_sweep_json(const std::vector<MomentReport>& rows);

std::string evans_scan_csv(const std::vector<EvansSample>& rows);
std::string evans_scan_json(const std::vector<EvansSample>& rows);

std::string dispersion_csv(const std::vector<DispersionSample>& rows);
std::string dispersion_json(const std::vector<DispersionSample>& rows);

std::string verify_json(const StabilityReport& report);
/// Flat key,value table of the scalar fields of verify_json plus one
/// root_<k> row per real root.
std::string verify_csv(const StabilityReport& report);

}  // namespace korteweg

#endif  // KORTEWEG_REPORT_HPP
