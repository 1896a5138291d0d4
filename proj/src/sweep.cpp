#include "dicke/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dicke/meanfield.hpp"
#include "dicke/version.hpp"

namespace dicke {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_axis(const Axis& a, bool nonnegative) {
  if (a.count < 2) throw std::invalid_argument("axis count must be >= 2");
  if (!(a.start < a.stop)) {
    throw std::invalid_argument("axis start must be < stop");
  }
  if (nonnegative && a.start < 0.0) {
    throw std::invalid_argument("axis start must be >= 0");
  }
  if (a.spacing == AxisSpacing::Log && a.start <= 0.0) {
    throw std::invalid_argument("log axis requires start > 0");
  }
}

void validate_atom_counts(const std::vector<int>& ns) {
  if (ns.empty()) throw std::invalid_argument("atom count list is empty");
  for (int n : ns) {
    if (n < 2 || n % 2 != 0) {
      throw std::invalid_argument(
          "atom counts must be positive even integers (got " +
          std::to_string(n) + ")");
    }
  }
}

const char* basis_name(BasisKind k) {
  return k == BasisKind::PlainFock ? "plain" : "displaced";
}

}  // namespace

std::vector<double> Axis::values() const {
  std::vector<double> v(count);
  if (spacing == AxisSpacing::Linear) {
    for (int i = 0; i < count; ++i) {
      v[i] = start + (stop - start) * i / (count - 1);
    }
  } else {
    const double ls = std::log(start);
    const double le = std::log(stop);
    for (int i = 0; i < count; ++i) {
      v[i] = std::exp(ls + (le - ls) * i / (count - 1));
    }
  }
  return v;
}

int resolve_threads(int requested) {
  if (const char* env = std::getenv("DICKE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for_ordered(int count, int threads,
                          const std::function<void(int)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Table phase_diagram_meanfield(const SweepSpec& spec) {
  validate_axis(spec.axis, /*nonnegative=*/true);

  Table t;
  t.columns = {"axis",     "kappa",       "omega",   "delta",
               "Omega",    "lambda_c",    "lambda_star",
               "kappa_c",  "window_nonempty"};
  for (double a : spec.axis.values()) {
    const double kappa = a * a / spec.delta;
    const ModelParams p(spec.omega, spec.delta, 0.0, spec.omega_aa, kappa, 2);
    const TransitionWindow w = transition_window(p);
    t.add_row({a, kappa, spec.omega, spec.delta, spec.omega_aa, w.lambda_c,
               w.lambda_star, w.kappa_c,
               static_cast<std::int64_t>(w.nonempty ? 1 : 0)});
  }
  return t;
}

Table phase_diagram_finite(const SweepSpec& spec) {
  validate_axis(spec.axis, /*nonnegative=*/true);
  validate_atom_counts(spec.n_atoms);
  if (!(spec.delta + 2.0 * spec.omega_aa > 0.0)) {
    throw std::invalid_argument(
        "finite-size sweep requires delta + 2*Omega > 0");
  }
  if (!(spec.grid_lo > 0.0) || !(spec.grid_lo < spec.grid_hi) ||
      spec.grid_count < 3) {
    throw std::invalid_argument("dip grid requires 0 < grid_lo < grid_hi "
                                "and at least 3 points");
  }

  const auto axis_values = spec.axis.values();
  const int n_rows =
      static_cast<int>(axis_values.size() * spec.n_atoms.size());

  Table t;
  t.columns = {"axis",       "kappa",      "omega",      "delta",
               "Omega",      "n_atoms",    "basis",      "e_tol",
               "h",          "grid_lo",    "grid_hi",    "grid_count",
               "lambda_c_n", "lambda_c_inf", "lambda_star", "below_star",
               "status"};
  if (spec.timing) t.columns.push_back("wall_ms");
  t.rows.resize(n_rows);

  parallel_for_ordered(n_rows, resolve_threads(spec.threads), [&](int row) {
    const auto t0 = std::chrono::steady_clock::now();
    const double a = axis_values[row / spec.n_atoms.size()];
    const int n = spec.n_atoms[row % spec.n_atoms.size()];
    const double kappa = a * a / spec.delta;
    const ModelParams p(spec.omega, spec.delta, 0.0, spec.omega_aa, kappa, n);
    const double lc_inf = critical_coupling(p);
    const double lambda_star = trk_bound(p);
    const double h = spec.h_rel * lc_inf;

    std::vector<double> grid(spec.grid_count);
    for (int i = 0; i < spec.grid_count; ++i) {
      grid[i] = lc_inf * (spec.grid_lo +
                          (spec.grid_hi - spec.grid_lo) * i /
                              (spec.grid_count - 1));
    }

    DerivativeOptions o;
    o.e_tol = std::min(spec.e_tol, 1e-10);
    double lambda_c_n = kNaN;
    std::string status = "ok";
    try {
      lambda_c_n =
          finite_size_critical(p, grid, h, spec.basis, o).lambda_c_n;
    } catch (const BracketError&) {
      status = "bracket_failure";
    }

    std::vector<Cell> cells = {
        a, kappa, spec.omega, spec.delta, spec.omega_aa,
        static_cast<std::int64_t>(n), std::string(basis_name(spec.basis)),
        spec.e_tol, h, spec.grid_lo, spec.grid_hi,
        static_cast<std::int64_t>(spec.grid_count), lambda_c_n, lc_inf,
        lambda_star,
        static_cast<std::int64_t>(lambda_c_n < lambda_star ? 1 : 0), status};
    if (spec.timing) {
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      cells.push_back(ms);
    }
    t.rows[row] = std::move(cells);
  });
  return t;
}

Table energy_sweep(const SweepSpec& spec) {
  validate_axis(spec.axis, /*nonnegative=*/true);
  validate_atom_counts(spec.n_atoms);
  if (!(spec.delta + 2.0 * spec.omega_aa > 0.0)) {
    throw std::invalid_argument("energy sweep requires delta + 2*Omega > 0");
  }

  const auto axis_values = spec.axis.values();
  const int per_n = static_cast<int>(axis_values.size());
  const int n_rows = per_n * static_cast<int>(spec.n_atoms.size());

  Table t;
  t.columns = {"omega",          "delta",       "Omega",
               "kappa",          "n_atoms",     "basis",
               "e_tol",          "h",           "lambda_rel",
               "lambda",         "lambda_c_inf", "e0_per_atom",
               "e0_shifted_per_atom", "d2e0",   "photon_density",
               "jz_order",       "gap",         "parity",
               "n_max_used",     "residual",    "status"};
  if (spec.timing) t.columns.push_back("wall_ms");
  t.rows.resize(n_rows);

  parallel_for_ordered(n_rows, resolve_threads(spec.threads), [&](int row) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = spec.n_atoms[row / per_n];
    const double lambda_rel = axis_values[row % per_n];
    const ModelParams base(spec.omega, spec.delta, 0.0, spec.omega_aa,
                           spec.kappa, n);
    const double lc_inf = critical_coupling(base);
    const double lambda = lambda_rel * lc_inf;
    const double h = spec.h_rel * lc_inf;
    const ModelParams p = base.with_lambda(lambda);

    double e0_pa = kNaN, e0s_pa = kNaN, d2 = kNaN, photon = kNaN, jz = kNaN;
    double gap = kNaN, parity = kNaN, residual = kNaN;
    std::int64_t n_max_used = -1;
    std::string status = "ok";
    try {
      ConvergeOptions co;
      co.e_tol = spec.e_tol;
      co.count = 2;
      const ConvergedResult r = converge_truncation(p, spec.basis, co);
      const GroundStateReport rep = report(p, r);
      e0_pa = rep.e0_per_atom;
      e0s_pa = rep.e0_shifted_per_atom;
      photon = rep.photon_density;
      jz = rep.jz_order;
      gap = rep.gap;
      parity = rep.parity;
      residual = r.residual;
      n_max_used = r.n_max_used;

      DerivativeOptions o;
      o.e_tol = std::min(spec.e_tol, 1e-10);
      o.seed = &r.ground_vector;
      o.seed_basis = &r.basis;
      d2 = lambda - h >= 0.0 ? second_derivative_e0(p, h, spec.basis, o)
                             : kNaN;
    } catch (const SolverError&) {
      status = "solver_failure";
    }

    std::vector<Cell> cells = {
        spec.omega, spec.delta, spec.omega_aa, spec.kappa,
        static_cast<std::int64_t>(n), std::string(basis_name(spec.basis)),
        spec.e_tol, h, lambda_rel, lambda, lc_inf, e0_pa, e0s_pa, d2, photon,
        jz, gap, parity, n_max_used, residual, status};
    if (spec.timing) {
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      cells.push_back(ms);
    }
    t.rows[row] = std::move(cells);
  });
  return t;
}

std::string config_echo(const SweepSpec& spec, const std::string& subcommand) {
  std::ostringstream os;
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  os << "command=" << subcommand;
  os << " Omega=" << num(spec.omega_aa);
  os << " axis_count=" << spec.axis.count;
  os << " axis_spacing="
     << (spec.axis.spacing == AxisSpacing::Linear ? "linear" : "log");
  os << " axis_start=" << num(spec.axis.start);
  os << " axis_stop=" << num(spec.axis.stop);
  os << " basis=" << basis_name(spec.basis);
  os << " delta=" << num(spec.delta);
  os << " e_tol=" << num(spec.e_tol);
  os << " format=" << (spec.format == OutputFormat::Csv ? "csv" : "json");
  os << " grid_count=" << spec.grid_count;
  os << " grid_hi=" << num(spec.grid_hi);
  os << " grid_lo=" << num(spec.grid_lo);
  os << " h_rel=" << num(spec.h_rel);
  os << " kappa=" << num(spec.kappa);
  os << " natoms=";
  for (std::size_t i = 0; i < spec.n_atoms.size(); ++i) {
    os << (i ? "," : "") << spec.n_atoms[i];
  }
  os << " omega=" << num(spec.omega);
  os << " threads=" << spec.threads;
  os << " timing=" << (spec.timing ? 1 : 0);
  return os.str();
}

void emit_table(const Table& t, const SweepSpec& spec,
                const std::string& subcommand, double wall_seconds) {
  std::ostringstream content;
  if (spec.format == OutputFormat::Csv) {
    CsvMeta meta;
    meta.tool = std::string(kToolName) + " " + kVersion;
    meta.command = subcommand;
    meta.config = config_echo(spec, subcommand);

    char stamp[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm);
    char line[128];
    std::snprintf(line, sizeof(line), "generated: %s (wall %.3f s)", stamp,
                  wall_seconds);
    meta.timestamp_line = line;

    write_csv(content, t, meta);
  } else {
    write_ndjson(content, t);
  }

  if (spec.out == "-") {
    std::cout << content.str();
    std::cout.flush();
  } else {
    write_file_atomic(spec.out, content.str());
  }
}

}  // namespace dicke
