// Command-line front end: mean-field analysis, single exact
// diagonalizations, parameter sweeps, matrix dumps.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "dicke/meanfield.hpp"
#include "dicke/observables.hpp"
#include "dicke/sweep.hpp"
#include "dicke/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;

struct ModelFlags {
  double omega = 1.0;
  double delta = 1.0;
  double lambda = 0.0;
  double omega_aa = 0.0;
  double kappa = 0.0;
  int n_atoms = 2;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool with_atoms) {
  cmd->add_option("--omega", m.omega, "cavity frequency");
  cmd->add_option("--delta", m.delta, "atomic transition frequency");
  cmd->add_option("--lambda", m.lambda, "atom-cavity coupling");
  cmd->add_option("--Omega", m.omega_aa,
                  "interatomic coupling (negative = attractive)");
  cmd->add_option("--kappa", m.kappa, "A^2 oscillator strength");
  if (with_atoms) cmd->add_option("--natoms", m.n_atoms, "atom count N");
}

void add_config_option(CLI::App* cmd) {
  cmd->set_config("--config", "",
                  "key=value config file; flags override file values");
}

dicke::BasisKind parse_basis(const std::string& name) {
  if (name == "plain") return dicke::BasisKind::PlainFock;
  if (name == "displaced") return dicke::BasisKind::DisplacedFock;
  throw CLI::ValidationError("--basis", "must be 'plain' or 'displaced'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_window(const dicke::TransitionWindow& w, bool no_go) {
  if (w.nonempty) {
    std::cout << "window: nonempty [" << fmt(w.lambda_c) << ", "
              << fmt(w.lambda_star) << "]\n";
  } else if (no_go) {
    std::cout << "window: empty (no-go)\n";
  } else {
    std::cout << "window: empty\n";
  }
  std::cout << "lambda_c: " << fmt(w.lambda_c) << "\n";
  std::cout << "lambda_star: " << fmt(w.lambda_star) << "\n";
  std::cout << "kappa_c: " << fmt(w.kappa_c) << "\n";
}

int run_meanfield(const ModelFlags& m) {
  const dicke::ModelParams p(m.omega, m.delta, m.lambda, m.omega_aa, m.kappa,
                             m.n_atoms);
  const auto sol = dicke::minimize(p);
  const auto w = dicke::transition_window(p);
  std::cout << "phase: "
            << (sol.phase == dicke::Phase::Superradiant ? "superradiant"
                                                        : "normal")
            << "\n";
  std::cout << "e0_per_atom: " << fmt(sol.energy_per_atom) << "\n";
  std::cout << "alpha: " << fmt(sol.alpha) << "\n";
  std::cout << "beta: " << fmt(sol.beta) << "\n";
  std::cout << "x: " << fmt(sol.x) << "\n";
  print_window(w, m.omega_aa >= 0.0);
  return kExitOk;
}

int run_window(const ModelFlags& m) {
  const dicke::ModelParams p(m.omega, m.delta, 0.0, m.omega_aa, m.kappa, 2);
  print_window(dicke::transition_window(p), m.omega_aa >= 0.0);
  return kExitOk;
}

int run_ed(const ModelFlags& m, const std::string& basis_name, int n_max,
           double e_tol, int count) {
  const dicke::ModelParams p(m.omega, m.delta, m.lambda, m.omega_aa, m.kappa,
                             m.n_atoms);
  const dicke::BasisKind kind = parse_basis(basis_name);
  const auto t0 = std::chrono::steady_clock::now();

  dicke::ConvergedResult r;
  if (n_max > 0) {
    const auto op = kind == dicke::BasisKind::PlainFock
                        ? dicke::build_plain_fock(p, n_max)
                        : dicke::build_displaced(p, n_max);
    const auto pairs =
        dicke::lowest_eigenpairs(op, std::max(count, 1), 1e-10);
    r.e0 = pairs[0].value;
    r.e1 = pairs.size() > 1 ? pairs[1].value
                            : std::numeric_limits<double>::quiet_NaN();
    r.residual = pairs[0].residual;
    r.ground_vector = pairs[0].vector;
    r.basis = op.basis;
    r.n_max_used = n_max;
    r.history = {{n_max, r.e0}};
  } else {
    dicke::ConvergeOptions co;
    co.e_tol = e_tol;
    co.count = std::max(count, 1);
    r = dicke::converge_truncation(p, kind, co);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const auto rep = dicke::report(p, r);
  std::cout << "e0: " << fmt(r.e0) << "\n";
  std::cout << "e0_per_atom: " << fmt(rep.e0_per_atom) << "\n";
  std::cout << "e0_shifted_per_atom: " << fmt(rep.e0_shifted_per_atom) << "\n";
  std::cout << "e1: " << fmt(r.e1) << "\n";
  std::cout << "gap: " << fmt(rep.gap) << "\n";
  std::cout << "photon_density: " << fmt(rep.photon_density) << "\n";
  std::cout << "jz_order: " << fmt(rep.jz_order) << "\n";
  std::cout << "parity: " << fmt(rep.parity) << "\n";
  std::cout << "n_max_used: " << r.n_max_used << "\n";
  std::cout << "n_max_final: " << r.history.back().n_max << "\n";
  std::cout << "residual: " << fmt(r.residual) << "\n";
  std::cout << "dim: " << r.basis.dim() << "\n";
  std::cout << "wall_s: " << fmt(wall) << "\n";
  return kExitOk;
}

int run_dump(const ModelFlags& m, const std::string& basis_name, int n_max,
             const std::string& out) {
  const dicke::ModelParams p(m.omega, m.delta, m.lambda, m.omega_aa, m.kappa,
                             m.n_atoms);
  const dicke::BasisKind kind = parse_basis(basis_name);
  const auto op = kind == dicke::BasisKind::PlainFock
                      ? dicke::build_plain_fock(p, n_max)
                      : dicke::build_displaced(p, n_max);
  std::ostringstream os;
  dicke::dump_matrix(op, os);
  if (out == "-") {
    std::cout << os.str();
  } else {
    dicke::write_file_atomic(out, os.str());
  }
  return kExitOk;
}

struct SweepFlags {
  dicke::SweepSpec spec;
  std::string basis = "displaced";
  std::string spacing = "linear";
  std::string format = "csv";
  std::string natoms;  // comma list; empty keeps the default
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f, bool with_kappa,
                     bool with_natoms, bool with_grid) {
  cmd->add_option("--omega", f.spec.omega, "cavity frequency");
  cmd->add_option("--delta", f.spec.delta, "atomic transition frequency");
  cmd->add_option("--Omega", f.spec.omega_aa, "interatomic coupling");
  if (with_kappa) {
    cmd->add_option("--kappa", f.spec.kappa, "A^2 oscillator strength");
  }
  cmd->add_option("--axis-start", f.spec.axis.start, "axis start");
  cmd->add_option("--axis-stop", f.spec.axis.stop, "axis stop");
  cmd->add_option("--axis-count", f.spec.axis.count, "axis point count");
  cmd->add_option("--axis-spacing", f.spacing, "linear or log");
  if (with_natoms) {
    cmd->add_option("--natoms", f.natoms,
                    "comma-separated atom counts, e.g. 16,32,64,128");
    cmd->add_option("--basis", f.basis, "plain or displaced");
    cmd->add_option("--etol", f.spec.e_tol, "truncation energy tolerance");
    cmd->add_option("--h-rel", f.spec.h_rel,
                    "derivative step in units of lambda_c");
  }
  if (with_grid) {
    cmd->add_option("--grid-lo", f.spec.grid_lo,
                    "dip bracket low edge (units of lambda_c)");
    cmd->add_option("--grid-hi", f.spec.grid_hi,
                    "dip bracket high edge (units of lambda_c)");
    cmd->add_option("--grid-count", f.spec.grid_count, "dip bracket points");
  }
  cmd->add_option("--threads", f.spec.threads,
                  "worker count (DICKE_THREADS overrides)");
  cmd->add_flag("--timing", f.spec.timing, "add a wall_ms column (volatile)");
  cmd->add_option("--out", f.spec.out, "output path ('-' = stdout)");
  cmd->add_option("--format", f.format, "csv or json");
}

void finalize_sweep_flags(SweepFlags& f) {
  f.spec.basis = parse_basis(f.basis);
  if (f.spacing == "linear") {
    f.spec.axis.spacing = dicke::AxisSpacing::Linear;
  } else if (f.spacing == "log") {
    f.spec.axis.spacing = dicke::AxisSpacing::Log;
  } else {
    throw CLI::ValidationError("--axis-spacing", "must be 'linear' or 'log'");
  }
  if (f.format == "csv") {
    f.spec.format = dicke::OutputFormat::Csv;
  } else if (f.format == "json") {
    f.spec.format = dicke::OutputFormat::Json;
  } else {
    throw CLI::ValidationError("--format", "must be 'csv' or 'json'");
  }
  if (!f.natoms.empty()) {
    f.spec.n_atoms.clear();
    std::stringstream ss(f.natoms);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        f.spec.n_atoms.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--natoms", "malformed atom count list");
      }
    }
  }
}

int run_sweep(SweepFlags& f, const std::string& name,
              dicke::Table (*engine)(const dicke::SweepSpec&)) {
  finalize_sweep_flags(f);
  const auto t0 = std::chrono::steady_clock::now();
  const dicke::Table t = engine(f.spec);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  dicke::emit_table(t, f.spec, name, wall);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(dicke::kToolName) + " " + dicke::kVersion +
               " - extended Dicke model solver"};
  app.require_subcommand(1);

  ModelFlags mf_flags, win_flags, ed_flags, dump_flags;

  auto* cmd_meanfield = app.add_subcommand(
      "meanfield", "thermodynamic-limit minimizer and transition window");
  add_model_flags(cmd_meanfield, mf_flags, false);
  add_config_option(cmd_meanfield);

  auto* cmd_window =
      app.add_subcommand("window", "sum-rule-constrained transition window");
  add_model_flags(cmd_window, win_flags, false);
  add_config_option(cmd_window);

  auto* cmd_ed = app.add_subcommand(
      "ed", "single exact diagonalization with truncation convergence");
  add_model_flags(cmd_ed, ed_flags, true);
  std::string ed_basis = "displaced";
  int ed_nmax = 0;
  double ed_etol = 1e-8;
  int ed_count = 2;
  cmd_ed->add_option("--basis", ed_basis, "plain or displaced");
  cmd_ed->add_option("--nmax", ed_nmax,
                     "fixed photon truncation (0 = auto-converge)");
  cmd_ed->add_option("--etol", ed_etol, "truncation energy tolerance");
  cmd_ed->add_option("--count", ed_count, "number of eigenpairs");
  add_config_option(cmd_ed);

  auto* cmd_dump = app.add_subcommand("dump-matrix",
                                      "write the Hamiltonian in coordinate "
                                      "text form: 'dim nnz' then 'row col "
                                      "value' lines");
  add_model_flags(cmd_dump, dump_flags, true);
  std::string dump_basis = "displaced";
  int dump_nmax = 16;
  std::string dump_out = "-";
  cmd_dump->add_option("--basis", dump_basis, "plain or displaced");
  cmd_dump->add_option("--nmax", dump_nmax, "photon truncation");
  cmd_dump->add_option("--out", dump_out, "output path ('-' = stdout)");
  add_config_option(cmd_dump);

  SweepFlags sweep_energy_flags, sweep_phase_flags, sweep_finite_flags;

  auto* cmd_sweep_energy = app.add_subcommand(
      "sweep-energy",
      "E0/N and its second derivative along lambda/lambda_c");
  sweep_energy_flags.spec.axis = {0.5, 1.5, 21, dicke::AxisSpacing::Linear};
  add_sweep_flags(cmd_sweep_energy, sweep_energy_flags, true, true, false);
  add_config_option(cmd_sweep_energy);

  auto* cmd_sweep_phase = app.add_subcommand(
      "sweep-phase",
      "thermodynamic-limit phase diagram on the sqrt(delta*kappa) axis");
  sweep_phase_flags.spec.axis = {0.3, 1.2, 19, dicke::AxisSpacing::Linear};
  add_sweep_flags(cmd_sweep_phase, sweep_phase_flags, false, false, false);
  add_config_option(cmd_sweep_phase);

  auto* cmd_sweep_finite = app.add_subcommand(
      "sweep-phase-finite",
      "finite-size critical couplings on the sqrt(delta*kappa) axis");
  sweep_finite_flags.spec.axis = {0.55, 1.05, 6, dicke::AxisSpacing::Linear};
  add_sweep_flags(cmd_sweep_finite, sweep_finite_flags, false, true, true);
  add_config_option(cmd_sweep_finite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (cmd_meanfield->parsed()) return run_meanfield(mf_flags);
    if (cmd_window->parsed()) return run_window(win_flags);
    if (cmd_ed->parsed()) {
      return run_ed(ed_flags, ed_basis, ed_nmax, ed_etol, ed_count);
    }
    if (cmd_dump->parsed()) {
      return run_dump(dump_flags, dump_basis, dump_nmax, dump_out);
    }
    if (cmd_sweep_energy->parsed()) {
      return run_sweep(sweep_energy_flags, "sweep-energy",
                       dicke::energy_sweep);
    }
    if (cmd_sweep_phase->parsed()) {
      return run_sweep(sweep_phase_flags, "sweep-phase",
                       dicke::phase_diagram_meanfield);
    }
    if (cmd_sweep_finite->parsed()) {
      return run_sweep(sweep_finite_flags, "sweep-phase-finite",
                       dicke::phase_diagram_finite);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const dicke::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitValidation;
}
