#pragma once
// Serialization of trace tables and verification reports: RFC-4180 CSV
// (floating display values, 12 significant digits, with an exactness flag),
// JSON with exact cyclotomic coefficients and stable key order, and aligned
// plain-text tables. All output is byte-deterministic for a fixed input.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glnq/cyclotomic.hpp"
#include "glnq/field.hpp"
#include "glnq/verify.hpp"

namespace glnq {

struct TraceRecord {
  std::int64_t u_dlog = 0;
  felem u = 0;
  Cyclo value;
  std::optional<std::int64_t> kernel_exponent;
};

struct TraceTableMeta {
  std::int64_t n = 0, q = 0;
  std::int64_t ext_degree = 0;   // [K : F_q], or [K : F_p] for the kernel engine
  std::int64_t chi_index = 0;
  std::string engine;
  const Field* K = nullptr;
};

// "%.12g" rendering shared by every float that reaches an output file.
std::string format_g12(double v);

std::string render_trace_csv(const TraceTableMeta& meta,
                             const std::vector<TraceRecord>& rows);
std::string render_trace_json(const TraceTableMeta& meta,
                              const std::vector<TraceRecord>& rows);
std::string render_trace_pretty(const TraceTableMeta& meta,
                                const std::vector<TraceRecord>& rows);

std::string render_suites_text(const std::vector<SuiteResult>& suites);
std::string render_suites_json(const std::vector<SuiteResult>& suites);

}  // namespace glnq
