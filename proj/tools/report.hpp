#pragma once

#include <cstddef>
#include <ostream>

#include "config.hpp"

namespace realiz::cli {

struct ReportTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t vacuous = 0;
  std::size_t skipped = 0;
  bool green() const { return failed == 0; }
};

/// Runs the selected sections in canonical order and writes one JSON record
/// per line to `out`; progress and timings go to `log`.
ReportTally write_report(const RunConfig& config, Session& session, std::ostream& out,
                         std::ostream& log);

}  // namespace realiz::cli
