#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dicke/observables.hpp"
#include "dicke/table.hpp"

namespace dicke {

enum class AxisSpacing { Linear, Log };

struct Axis {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  AxisSpacing spacing = AxisSpacing::Linear;

  std::vector<double> values() const;
};

enum class OutputFormat { Csv, Json };

/// Batch-run description shared by the sweep engines. The axis means
/// lambda/lambda_c for energy sweeps and sqrt(delta*kappa) for phase-diagram
/// sweeps (kappa = axis^2/delta realizes the latter).
struct SweepSpec {
  double omega = 1.0;
  double delta = 1.0;
  double omega_aa = -0.2;
  double kappa = 0.5;  // energy sweep only; phase sweeps scan kappa

  Axis axis;
  std::vector<int> n_atoms = {16, 32, 64, 128};

  BasisKind basis = BasisKind::DisplacedFock;
  double e_tol = 1e-8;
  double h_rel = 1e-3;  // derivative step in units of lambda_c

  // dip-search bracket for finite-size sweeps, in units of lambda_c(inf)
  double grid_lo = 1.0;
  double grid_hi = 1.35;
  int grid_count = 11;

  int threads = 0;  // 0: DICKE_THREADS env, else hardware concurrency
  bool timing = false;  // adds a wall_ms column (volatile; off by default)

  std::string out = "-";
  OutputFormat format = OutputFormat::Csv;
};

/// Worker count resolution: DICKE_THREADS overrides everything, then the
/// spec value, then hardware concurrency.
int resolve_threads(int requested);

/// Runs fn(0..count-1) on a work queue; results land in index order, so the
/// output is independent of scheduling.
void parallel_for_ordered(int count, int threads,
                          const std::function<void(int)>& fn);

/// Thermodynamic-limit phase diagram along the sqrt(delta*kappa) axis: both
/// critical lines and the window flag per point.
Table phase_diagram_meanfield(const SweepSpec& spec);

/// Finite-size phase diagram: lambda_c(N) from the second-derivative dip per
/// (axis point, N). Bracket failures are recorded per row, not thrown.
Table phase_diagram_finite(const SweepSpec& spec);

/// Ground-state energy and its second derivative along lambda/lambda_c per
/// atom count.
Table energy_sweep(const SweepSpec& spec);

/// Canonical "key=value key=value ..." echo of a spec, alphabetical, for the
/// CSV metadata block.
std::string config_echo(const SweepSpec& spec, const std::string& subcommand);

/// Serializes a finished table per the spec's format choice and writes it
/// atomically (or to stdout for out == "-"). wall_seconds lands in the
/// timestamp metadata line.
void emit_table(const Table& t, const SweepSpec& spec,
                const std::string& subcommand, double wall_seconds);

}  // namespace dicke
