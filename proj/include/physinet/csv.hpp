#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "physinet/datagen.hpp"
#include "physinet/errors.hpp"
#include "physinet/trainer.hpp"

namespace physinet {

// 17 significant digits: parse_number(format_number(x)) == x bitwise.
inline std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_number(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline constexpr std::string_view kStepsHeader = "step,mse_physinet,mse_nn_only,mse_physics_only,w_physi,w_nn,weight_ratio";
inline constexpr std::string_view kSnapshotsHeader = "step,variant,x,y_hat";
inline constexpr std::string_view kSummaryHeader =
    "seed,step,mse_physinet,mse_nn_only,mse_physics_only,w_physi,w_nn,weight_ratio";

namespace detail {

inline void write_record_fields(std::ostream& out, const StepRecord& r) {
  out << r.step << ',' << format_number(r.mse_physinet) << ',' << format_number(r.mse_nn_only) << ','
      << format_number(r.mse_physics_only) << ',' << format_number(r.w_physi) << ',' << format_number(r.w_nn)
      << ',' << format_number(r.weight_ratio.value_or(std::numeric_limits<double>::quiet_NaN()));
}

}  // namespace detail

inline void write_steps_csv(std::ostream& out, const std::vector<StepRecord>& records) {
  out << kStepsHeader << '\n';
  for (const auto& r : records) {
    detail::write_record_fields(out, r);
    out << '\n';
  }
}

inline std::vector<StepRecord> read_steps_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kStepsHeader) {
    throw FormatError("line 1: expected header '" + std::string(kStepsHeader) + "'");
  }
  std::vector<StepRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fail = [&](const std::string& why) {
      return FormatError("line " + std::to_string(line_no) + ": " + why + ": '" + line + "'");
    };
    const auto fields = split_fields(line);
    if (fields.size() != 7) throw fail("expected 7 fields");
    StepRecord r;
    std::uint64_t step = 0;
    const auto res = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), step);
    if (res.ec != std::errc{} || res.ptr != fields[0].data() + fields[0].size()) throw fail("bad step");
    r.step = static_cast<std::size_t>(step);
    double values[6];
    for (std::size_t i = 0; i < 6; ++i) {
      const auto v = parse_number(fields[i + 1]);
      if (!v) throw fail("bad number in column " + std::to_string(i + 2));
      values[i] = *v;
    }
    r.mse_physinet = values[0];
    r.mse_nn_only = values[1];
    r.mse_physics_only = values[2];
    r.w_physi = values[3];
    r.w_nn = values[4];
    if (!std::isnan(values[5])) r.weight_ratio = values[5];
    records.push_back(r);
  }
  return records;
}

inline void write_snapshots_csv(std::ostream& out, const std::vector<PredictionSnapshot>& snapshots) {
  out << kSnapshotsHeader << '\n';
  for (const auto& snap : snapshots) {
    for (const auto& [x, y] : snap.points) {
      out << snap.step << ',' << snap.variant << ',' << format_number(x) << ',' << format_number(y) << '\n';
    }
  }
}

/// Table rows: steps 0, 9, 19, ..., 99 (those present in `records`).
inline bool is_summary_step(std::size_t step) { return step == 0 || (step + 1) % 10 == 0; }

inline void write_summary_csv(std::ostream& out,
                              const std::vector<std::pair<std::uint64_t, std::vector<StepRecord>>>& runs) {
  out << kSummaryHeader << '\n';
  for (const auto& [seed, records] : runs) {
    for (const auto& r : records) {
      if (!is_summary_step(r.step)) continue;
      out << seed << ',';
      detail::write_record_fields(out, r);
      out << '\n';
    }
  }
}

/// Header `x,y` for Case 1 data, `omega,magnitude` for Case 2.
inline void write_dataset_csv(std::ostream& out, const DataBatch& batch, std::string_view header) {
  if (batch.feature_count != 1) throw ShapeError("dataset export supports one feature");
  out << header << '\n';
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out << format_number(batch.inputs[i]) << ',' << format_number(batch.targets[i]) << '\n';
  }
}

}  // namespace physinet
