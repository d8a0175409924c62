#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>

#include "io.hpp"
#include "phaseflow/ho_states.hpp"
#include "phaseflow/quantization.hpp"
#include "phaseflow/reference.hpp"
#include "phaseflow/se_dynamics.hpp"
#include "phaseflow/transform.hpp"
#include "validate.hpp"

namespace phaseflow::cli {

namespace {

struct ModelOptions {
  std::string kind = "harmonic";
  double mass = 1.0;
  double omega = 1.0;
  double omega2 = std::numbers::sqrt2;
  double lambda = 1.0;

  HamiltonianModel build() const {
    if (kind == "harmonic") return HamiltonianModel::harmonic(mass, omega);
    if (kind == "free") return HamiltonianModel::free_particle(mass);
    if (kind == "quartic") return HamiltonianModel::quartic(mass, lambda);
    if (kind == "anisotropic2d") return HamiltonianModel::anisotropic2d(mass, omega, omega2);
    fail(ErrorCode::UsageError, "unknown model kind: " + kind);
  }
};

struct FamilyOptions {
  std::optional<double> sigma;
  double hbar = 1.0;
  std::string gauge = "none";

  WavepacketFamily build(const ModelOptions& m) const {
    WavepacketFamily fam;
    fam.hbar = hbar;
    // default width: the coherent-state value zeta/sqrt(2) at the model's
    // reference frequency
    fam.sigma = sigma.value_or(std::sqrt(hbar / (2.0 * m.mass * m.omega)));
    fam.validate();
    return fam;
  }

  GaugeKind gauge_kind() const {
    if (gauge == "none") return GaugeKind::None;
    if (gauge == "energy") return GaugeKind::Energy;
    if (gauge == "kvn") return GaugeKind::Kvn;
    fail(ErrorCode::UsageError, "unknown gauge: " + gauge);
  }
};

struct GridOptions {
  double qmin = -8.0, qmax = 8.0;
  double pmin = -8.0, pmax = 8.0;
  int nq = 256, np = 256;
  double xmin = -14.0, xmax = 14.0;
  int nx = 1024;

  PhaseGrid phase() const { return PhaseGrid::make1d(qmin, qmax, nq, pmin, pmax, np); }
  PositionGrid position() const { return PositionGrid::make1d(xmin, xmax, nx); }
};

struct StateOptions {
  std::optional<int> eigen_n;
  std::string input;

  PositionWavefunction build_psi(const ModelOptions& m, const FamilyOptions& f,
                                 const PositionGrid& xg) const {
    if (!input.empty()) {
      const io::LoadedField loaded = io::read_field(input);
      require(!loaded.is_phase, ErrorCode::UsageError, input + " holds a phase field, not psi(x)");
      return loaded.position;
    }
    const int n = eigen_n.value_or(0);
    return ho_eigenstate(n, m.mass, m.omega, f.hbar, xg);
  }
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.kind, "model kind")
      ->check(CLI::IsMember({"harmonic", "free", "quartic", "anisotropic2d"}))
      ->capture_default_str();
  cmd->add_option("--mass", m.mass, "particle mass")->capture_default_str();
  cmd->add_option("--omega", m.omega, "oscillator frequency")->capture_default_str();
  cmd->add_option("--omega2", m.omega2, "second frequency (anisotropic2d)")->capture_default_str();
  cmd->add_option("--lambda", m.lambda, "quartic coefficient")->capture_default_str();
}

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
  cmd->add_option("--sigma", f.sigma, "wavepacket width (default: coherent zeta/sqrt(2))");
  cmd->add_option("--hbar", f.hbar, "hbar")->capture_default_str();
}

void add_phase_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--qmin", g.qmin)->capture_default_str();
  cmd->add_option("--qmax", g.qmax)->capture_default_str();
  cmd->add_option("--pmin", g.pmin)->capture_default_str();
  cmd->add_option("--pmax", g.pmax)->capture_default_str();
  cmd->add_option("--nq", g.nq, "phase grid q points")->capture_default_str();
  cmd->add_option("--np", g.np, "phase grid p points")->capture_default_str();
}

void add_x_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--xmin", g.xmin)->capture_default_str();
  cmd->add_option("--xmax", g.xmax)->capture_default_str();
  cmd->add_option("--nx", g.nx, "position grid points")->capture_default_str();
}

void add_state_options(CLI::App* cmd, StateOptions& s) {
  cmd->add_option_function<std::string>(
      "--state",
      [&s](const std::string& v) {
        if (v.rfind("n=", 0) != 0) {
          throw CLI::ValidationError("--state expects n=<integer>");
        }
        s.eigen_n = std::stoi(v.substr(2));
      },
      "harmonic eigenstate selector, e.g. n=0");
  cmd->add_option("--input", s.input, "PHFLD dump to load instead of --state");
}

void write_phase_csv(const std::filesystem::path& path, const PhaseField& eta, bool timestamp) {
  io::CsvWriter csv(path, timestamp);
  csv.header({"q", "p", "re", "im"});
  const PhaseGrid& g = eta.grid();
  for (std::size_t f = 0; f < g.size(); ++f) {
    const PhasePoint z = g.point(f);
    csv.row({z.q[0], z.p[0], eta[f].real(), eta[f].imag()});
  }
  csv.close();
}

void write_position_csv(const std::filesystem::path& path, const PositionWavefunction& psi,
                        bool timestamp) {
  io::CsvWriter csv(path, timestamp);
  csv.header({"x", "re", "im"});
  for (std::size_t k = 0; k < psi.size(); ++k) {
    csv.row({psi.grid().point(k)[0], psi[k].real(), psi[k].imag()});
  }
  csv.close();
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"phase-space semiclassical toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file (key = value, sections per subcommand)");

  std::string out_dir = ".";
  bool no_timestamp = false;
  bool with_csv = false;
  unsigned seed = 42;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_flag("--no-timestamp", no_timestamp, "omit the generated-at header line in CSV output");
  app.add_flag("--csv", with_csv, "also write CSV next to binary dumps");
  app.add_option("--seed", seed, "seed for randomized validation checks")->capture_default_str();

  ModelOptions model_opt;
  FamilyOptions family_opt;
  GridOptions grid_opt;
  StateOptions state_opt;

  CLI::App* lift_cmd = app.add_subcommand("lift", "map psi(x) to eta(q, p)");
  add_model_options(lift_cmd, model_opt);
  add_family_options(lift_cmd, family_opt);
  add_phase_grid_options(lift_cmd, grid_opt);
  add_x_grid_options(lift_cmd, grid_opt);
  add_state_options(lift_cmd, state_opt);

  CLI::App* project_cmd = app.add_subcommand("project", "map eta(q, p) back to psi(x)");
  add_model_options(project_cmd, model_opt);
  add_family_options(project_cmd, family_opt);
  add_x_grid_options(project_cmd, grid_opt);
  std::string project_input;
  project_cmd->add_option("--input", project_input, "PHFLD phase-field dump")->required();

  CLI::App* evolve_cmd = app.add_subcommand("evolve", "first-order propagation of a lifted state");
  add_model_options(evolve_cmd, model_opt);
  add_family_options(evolve_cmd, family_opt);
  add_phase_grid_options(evolve_cmd, grid_opt);
  add_x_grid_options(evolve_cmd, grid_opt);
  add_state_options(evolve_cmd, state_opt);
  double evolve_t = 1.0, evolve_dt = 1e-3;
  evolve_cmd->add_option("--t", evolve_t, "total time")->capture_default_str();
  evolve_cmd->add_option("--dt", evolve_dt, "time step")->capture_default_str();
  evolve_cmd->add_option("--gauge", family_opt.gauge, "gauge: none | energy | kvn")
      ->check(CLI::IsMember({"none", "energy", "kvn"}))
      ->capture_default_str();

  CLI::App* quantize_cmd = app.add_subcommand("quantize", "Bohr-Sommerfeld levels J = n h");
  add_model_options(quantize_cmd, model_opt);
  add_family_options(quantize_cmd, family_opt);
  int nmax = 10;
  bool compare_exact = false;
  quantize_cmd->add_option("--nmax", nmax, "highest quantum number")->capture_default_str();
  quantize_cmd->add_flag("--compare-exact", compare_exact,
                         "attach reference eigensolver energies and relative errors");
  add_x_grid_options(quantize_cmd, grid_opt);

  CLI::App* kernel_cmd = app.add_subcommand("kernel", "overlap kernel K(z, z')");
  add_family_options(kernel_cmd, family_opt);
  std::vector<double> z_flat{0.0, 0.0}, zp_flat{0.0, 0.0};
  kernel_cmd->add_option("--z", z_flat, "base point q,p")->expected(2)->delimiter(',');
  kernel_cmd->add_option("--zp", zp_flat, "displaced point q,p")->expected(2)->delimiter(',');

  CLI::App* suppression_cmd =
      app.add_subcommand("suppression", "off-shell suppression profile (trajectory ribbon)");
  add_model_options(suppression_cmd, model_opt);
  add_family_options(suppression_cmd, family_opt);
  add_phase_grid_options(suppression_cmd, grid_opt);
  std::vector<double> probe_flat{1.0, 0.0};
  int n_offsets = 17;
  suppression_cmd->add_option("--probe", probe_flat, "probe point q,p")->expected(2)->delimiter(',');
  suppression_cmd->add_option("--noffsets", n_offsets, "offset samples across +-2 hbar / T")
      ->capture_default_str();

  CLI::App* validate_cmd = app.add_subcommand("validate", "run the invariant suites");
  std::string suite = "all";
  validate_cmd
      ->add_option("--suite", suite,
                   "all | phase-core | transform | classical | se | quantization | reference")
      ->capture_default_str();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    const bool stamp = !no_timestamp;

    if (*lift_cmd) {
      const WavepacketFamily fam = family_opt.build(model_opt);
      const PositionWavefunction psi = state_opt.build_psi(model_opt, family_opt, grid_opt.position());
      const PhaseField eta = lift(psi, fam, grid_opt.phase());
      io::write_field(out / "eta.phfld", eta);
      if (with_csv) write_phase_csv(out / "eta.csv", eta, stamp);
      std::cout << "wrote " << (out / "eta.phfld").string() << "\n";
      return 0;
    }

    if (*project_cmd) {
      const WavepacketFamily fam = family_opt.build(model_opt);
      const io::LoadedField loaded = io::read_field(project_input);
      require(loaded.is_phase, ErrorCode::UsageError, project_input + " does not hold a phase field");
      const PositionWavefunction psi = project(loaded.phase, fam, grid_opt.position());
      io::write_field(out / "psi.phfld", psi);
      if (with_csv) write_position_csv(out / "psi.csv", psi, stamp);
      std::cout << "wrote " << (out / "psi.phfld").string() << "\n";
      return 0;
    }

    if (*evolve_cmd) {
      const HamiltonianModel model = model_opt.build();
      const WavepacketFamily fam = family_opt.build(model_opt);
      PhaseField eta0 = [&] {
        if (!state_opt.input.empty()) {
          const io::LoadedField loaded = io::read_field(state_opt.input);
          require(loaded.is_phase, ErrorCode::UsageError,
                  state_opt.input + " does not hold a phase field");
          return loaded.phase;
        }
        const PositionWavefunction psi =
            state_opt.build_psi(model_opt, family_opt, grid_opt.position());
        return lift(psi, fam, grid_opt.phase());
      }();
      FlowConfig cfg;
      cfg.dt = evolve_dt;
      GaugeSpec gauge;
      gauge.kind = family_opt.gauge_kind();
      const PhaseField eta = se_evolve(eta0, model, evolve_t, cfg, gauge, fam.hbar);
      io::write_field(out / "eta_final.phfld", eta);
      if (with_csv) write_phase_csv(out / "eta_final.csv", eta, stamp);
      double num = 0.0, den = 0.0;
      for (std::size_t f = 0; f < eta.size(); ++f) {
        num += std::norm(eta[f] - eta0[f]);
        den += std::norm(eta0[f]);
      }
      std::cout << "l2_diff = " << io::format_g17(den > 0 ? std::sqrt(num / den) : 0.0) << "\n";
      std::cout << "wrote " << (out / "eta_final.phfld").string() << "\n";
      return 0;
    }

    if (*quantize_cmd) {
      const HamiltonianModel model = model_opt.build();
      SpectrumResult spec = bohr_sommerfeld_levels(model, nmax, family_opt.hbar);
      if (compare_exact) {
        if (model.dim() == 1) {
          require(model.has_potential_form(), ErrorCode::UsageError,
                  "--compare-exact needs a confining potential model");
          const auto pairs = eigensolve(model, grid_opt.position(), nmax + 1, family_opt.hbar);
          for (auto& level : spec.levels) {
            level.exact = pairs[level.n[0]].energy;
            level.rel_error = std::abs(level.energy - *level.exact) / std::abs(*level.exact);
          }
        } else {
          // separable product: exact levels are sums of 1D oscillator levels
          for (auto& level : spec.levels) {
            level.exact = family_opt.hbar * (model.omega(0) * (level.n[0] + 0.5) +
                                             model.omega(1) * (level.n[1] + 0.5));
            level.rel_error = std::abs(level.energy - *level.exact) / std::abs(*level.exact);
          }
        }
      }
      io::CsvWriter csv(out / "levels.csv", stamp);
      std::vector<std::string> cols = model.dim() == 1 ? std::vector<std::string>{"n"}
                                                       : std::vector<std::string>{"n1", "n2"};
      cols.push_back("E_semiclassical");
      if (compare_exact) {
        cols.push_back("E_exact");
        cols.push_back("rel_error");
      }
      csv.header(cols);
      for (const auto& level : spec.levels) {
        std::vector<std::string> cells;
        cells.push_back(std::to_string(level.n[0]));
        if (model.dim() == 2) cells.push_back(std::to_string(level.n[1]));
        cells.push_back(io::format_g17(level.energy));
        if (compare_exact) {
          cells.push_back(io::format_g17(*level.exact));
          cells.push_back(io::format_g17(*level.rel_error));
        }
        csv.row_mixed(cells);
      }
      csv.close();
      std::cout << "wrote " << (out / "levels.csv").string() << "\n";
      return 0;
    }

    if (*kernel_cmd) {
      WavepacketFamily fam;
      fam.hbar = family_opt.hbar;
      fam.sigma = family_opt.sigma.value_or(1.0 / std::numbers::sqrt2);
      fam.validate();
      const Complex k = kernel(fam, phase_point(z_flat[0], z_flat[1]),
                               phase_point(zp_flat[0], zp_flat[1]), 1);
      std::cout << "K = " << io::format_g17(k.real()) << " " << io::format_g17(k.imag()) << "\n";
      return 0;
    }

    if (*suppression_cmd) {
      const HamiltonianModel model = model_opt.build();
      WavepacketFamily fam;
      fam.hbar = family_opt.hbar;
      fam.sigma = family_opt.sigma.value_or(1.0);
      fam.validate();
      const PhasePoint probe = phase_point(probe_flat[0], probe_flat[1]);
      const double T = suppression_timescale(model, fam, probe);
      std::vector<double> offsets(n_offsets);
      const int half = n_offsets / 2;
      for (int k = 0; k < n_offsets; ++k) {
        offsets[k] = 2.0 * fam.hbar / T * (k - half) / std::max(1, half);
      }
      const SuppressionCurve curve = suppression_profile(model, fam, probe, offsets, grid_opt.phase());
      io::CsvWriter csv(out / "suppression.csv", stamp);
      csv.header({"offset", "ratio", "fitted_T", "analytic_T"});
      for (std::size_t k = 0; k < curve.offsets.size(); ++k) {
        csv.row({curve.offsets[k], curve.ratios[k], curve.fitted_T, curve.analytic_T});
      }
      csv.close();
      std::cout << "fitted_T = " << io::format_g17(curve.fitted_T)
                << " analytic_T = " << io::format_g17(curve.analytic_T) << "\n";
      std::cout << "wrote " << (out / "suppression.csv").string() << "\n";
      return 0;
    }

    if (*validate_cmd) {
      return run_validation(suite, seed, std::cout) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace phaseflow::cli
