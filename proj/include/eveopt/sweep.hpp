#pragma once

#include "eveopt/optimality.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eveopt {

enum class Family { General, FuchsUnequal, FuchsEqual, OneParam, Rotated };

Family family_from_string(const std::string& name);
std::string family_name(Family f);

/// Builds the named family at d. `a` applies to OneParam only, `seed` to
/// Rotated only. FuchsEqual requires d_xy = d_uv.
InteractionVectors make_interaction(Family f, const DisturbancePair& d,
                                    double a = 0.5, std::uint64_t seed = 1);

struct SweepRow {
  double d_xy = 0.0;
  double d_uv = 0.0;
  double g_bound = 0.0;
  double g_achieved = 0.0;
  double i_bound = 0.0;
  double i_achieved = 0.0;
  double max_condition_residual = 0.0;
  bool canonical_ok = false;
};

struct SweepConfig {
  double dmin = 0.05;
  double dmax = 0.45;
  int steps = 9;
  Family family = Family::General;
  double a = 0.5;
  std::uint64_t seed = 1;
  bool parallel = true;
};

/// steps² rows, d_xy outer and d_uv inner. Grid points are evaluated
/// concurrently and merged by index, so the row order (and content) is
/// identical to the serial path.
std::vector<SweepRow> sweep_grid(const SweepConfig& cfg);

/// Fixed schema: header d_xy,d_uv,g_bound,g_achieved,i_bound,i_achieved,
/// max_prop3_residual,canonical_ok; numbers at 10 significant digits, LF
/// line ends. `bits` converts the mutual-information columns from nats.
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool bits = false);

/// "%.10g" rendering used for all CSV numbers.
std::string format_number(double v);

}  // namespace eveopt
