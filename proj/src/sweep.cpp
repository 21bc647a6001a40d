#include "eveopt/sweep.hpp"

#include "eveopt/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace eveopt {

Family family_from_string(const std::string& name) {
  if (name == "general") return Family::General;
  if (name == "fuchs1") return Family::FuchsUnequal;
  if (name == "fuchs2") return Family::FuchsEqual;
  if (name == "one-param") return Family::OneParam;
  if (name == "rotated") return Family::Rotated;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected general|fuchs1|fuchs2|one-param|rotated)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::General: return "general";
    case Family::FuchsUnequal: return "fuchs1";
    case Family::FuchsEqual: return "fuchs2";
    case Family::OneParam: return "one-param";
    case Family::Rotated: return "rotated";
  }
  throw std::logic_error("family_name: bad enum");
}

InteractionVectors make_interaction(Family f, const DisturbancePair& d, double a,
                                    std::uint64_t seed) {
  switch (f) {
    case Family::General:
      return build_optimal_general(d, canonical_probe_basis());
    case Family::FuchsUnequal:
      return build_fuchs_unequal(d);
    case Family::FuchsEqual:
      if (!equal_error(d, 1e-9)) {
        throw std::invalid_argument("fuchs2 family requires d_xy = d_uv");
      }
      return build_fuchs_equal(d.d_xy);
    case Family::OneParam:
      return build_one_param(d, a);
    case Family::Rotated:
      return build_rotated(d, random_orthogonal({seed, 1}));
  }
  throw std::logic_error("make_interaction: bad enum");
}

std::vector<SweepRow> sweep_grid(const SweepConfig& cfg) {
  if (!(cfg.dmin >= 0.0 && cfg.dmin <= cfg.dmax && cfg.dmax <= 0.5)) {
    throw std::invalid_argument("sweep_grid: need 0 <= dmin <= dmax <= 1/2");
  }
  if (cfg.steps < 1) throw std::invalid_argument("sweep_grid: steps must be >= 1");
  if (cfg.family == Family::FuchsEqual && cfg.steps > 1) {
    throw std::invalid_argument(
        "sweep_grid: fuchs2 needs d_xy = d_uv; a multi-step square grid leaves the diagonal");
  }

  std::vector<double> grid(static_cast<std::size_t>(cfg.steps));
  for (int i = 0; i < cfg.steps; ++i) {
    grid[static_cast<std::size_t>(i)] =
        cfg.steps == 1 ? cfg.dmin
                       : cfg.dmin + (cfg.dmax - cfg.dmin) * i / (cfg.steps - 1);
  }

  const std::int64_t total = static_cast<std::int64_t>(cfg.steps) * cfg.steps;
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
  std::string error;  // exceptions must not escape the parallel region
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (cfg.parallel)
#endif
  for (std::int64_t idx = 0; idx < total; ++idx) {
    try {
      const DisturbancePair d{grid[static_cast<std::size_t>(idx / cfg.steps)],
                              grid[static_cast<std::size_t>(idx % cfg.steps)]};
      const InteractionVectors iv = make_interaction(cfg.family, d, cfg.a, cfg.seed);
      const EavesdropReport rep = full_report(iv, d);
      SweepRow& row = rows[static_cast<std::size_t>(idx)];
      row.d_xy = d.d_xy;
      row.d_uv = d.d_uv;
      row.g_bound = rep.bounds.g_bound;
      row.g_achieved = rep.bounds.g_achieved;
      row.i_bound = rep.bounds.i_bound;
      row.i_achieved = rep.bounds.i_achieved;
      row.max_condition_residual = rep.conditions.max_residual();
      row.canonical_ok = rep.canonical.matches_pattern;
    } catch (const std::exception& e) {
#if defined(_OPENMP)
#pragma omp critical
#endif
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw std::runtime_error("sweep_grid: " + error);
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool bits) {
  const double unit = bits ? 1.0 / std::log(2.0) : 1.0;
  os << "d_xy,d_uv,g_bound,g_achieved,i_bound,i_achieved,max_prop3_residual,canonical_ok\n";
  for (const SweepRow& r : rows) {
    os << format_number(r.d_xy) << ',' << format_number(r.d_uv) << ','
       << format_number(r.g_bound) << ',' << format_number(r.g_achieved) << ','
       << format_number(r.i_bound * unit) << ',' << format_number(r.i_achieved * unit) << ','
       << format_number(r.max_condition_residual) << ',' << (r.canonical_ok ? 1 : 0)
       << '\n';
  }
}

}  // namespace eveopt
