#pragma once

#include <string>
#include <vector>

#include "qclone/bounds.hpp"
#include "qclone/machine.hpp"
#include "qclone/verify.hpp"

namespace qclone::io {

inline constexpr int kSchemaVersion = 1;

// 12 significant digits, trailing zeros kept ("0.236067977500"); exact zero is "0".
std::string format_real(double v);

// v rounded to 12 significant digits, for JSON emission.
double round12(double v);

// Sorted by z, then n.
void sort_samples(std::vector<BoundSample>& rows);

// Header "z,n,kind,value".
std::string bounds_csv(const std::vector<BoundSample>& rows);
std::string bounds_json(const std::vector<BoundSample>& rows);

// Header "z,n,x_min".
std::string figure_csv(const std::vector<BoundSample>& rows);
std::string figure_json(const std::vector<BoundSample>& rows);

struct MaximaRecord {
  BoundKind kind;
  int n;
  double z_star;
  double value;
  std::string method;  // "closed-form" or "grid+golden"
};
std::string maxima_csv(const std::vector<MaximaRecord>& rows);
std::string maxima_json(const std::vector<MaximaRecord>& rows);

std::string machine_csv(const MachineResult& result, const Objective& objective);
std::string machine_json(const MachineResult& result, const Objective& objective);

std::string suite_csv(const verify::SuiteReport& report);
std::string suite_json(const verify::SuiteReport& report, const std::string& profile,
                       std::uint64_t seed);

// Parses a table produced by bounds_csv.
std::vector<BoundSample> parse_bounds_csv(const std::string& text);

}  // namespace qclone::io
