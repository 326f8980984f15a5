#pragma once

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "rindler/cli/config.hpp"
#include "rindler/errors.hpp"
#include "rindler/parallel.hpp"
#include "rindler/shift_engine.hpp"

namespace rindler::cli {

inline constexpr const char* kSweepHeader =
    "varied_param,value,a,z,omega0,channel,state,method,delta_e,error_estimate";

struct SweepRow {
  SweepVariable vary = SweepVariable::z;
  double value = 0.0;
  AtomPairConfig cfg;
  Channel channel = Channel::scalar;
  Method method = Method::closed_form;
  EnergyShiftResult result;
};

/// 17 significant digits, %g style, independent of the C locale.
inline std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.vary) << ',' << format_number(r.value) << ',' << format_number(r.cfg.a) << ','
        << format_number(r.cfg.z) << ',' << format_number(r.cfg.omega0) << ',' << to_string(r.channel) << ','
        << to_string(r.cfg.symmetry) << ',' << to_string(r.method) << ',' << format_number(r.result.value) << ','
        << format_number(r.result.error_estimate) << '\n';
  }
}

/// Evaluates every (grid point, method) pair, concurrently, in grid order.
inline std::vector<SweepRow> compute_sweep(const SweepConfig& sweep, const QuadratureSpec& spec,
                                           unsigned threads = default_thread_count()) {
  sweep.validate();
  std::vector<SweepRow> jobs;
  for (double v : sweep.grid()) {
    for (Method m : sweep.methods) {
      SweepRow row;
      row.vary = sweep.vary;
      row.value = v;
      row.cfg = sweep.fixed;
      switch (sweep.vary) {
        case SweepVariable::z: row.cfg.z = v; break;
        case SweepVariable::a: row.cfg.a = v; break;
        case SweepVariable::omega0: row.cfg.omega0 = v; break;
      }
      row.cfg.validate();
      row.channel = sweep.channel;
      row.method = m;
      jobs.push_back(row);
    }
  }
  return parallel_map(
      jobs,
      [&](const SweepRow& job) {
        SweepRow row = job;
        row.result = delta_e(row.cfg, row.channel, row.method, spec);
        return row;
      },
      threads);
}

/// Writes the sweep CSV to sweep.output_path. The file is opened before any point is
/// computed, so an unwritable path fails fast with IoError.
inline std::vector<SweepRow> run_sweep(const SweepConfig& sweep, const QuadratureSpec& spec,
                                       unsigned threads = default_thread_count()) {
  sweep.validate();
  std::ofstream out(sweep.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + sweep.output_path + "' for writing");
  auto rows = compute_sweep(sweep, spec, threads);
  write_sweep_csv(out, rows);
  out.flush();
  if (!out) throw IoError("failed while writing '" + sweep.output_path + "'");
  return rows;
}

}  // namespace rindler::cli
