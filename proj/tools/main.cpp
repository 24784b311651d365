// degenpde: numerical laboratory for the short-time interface asymptotics of
// u_t = (|(u^m)_x|^{p-1}(u^m)_x)_x - b u^beta with power-law initial data.
// Everything runs through the C API in degenpde/degenpde.h.
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "degenpde/degenpde.h"
#include "manifest.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitInputError = 2;

bool g_quiet = false;

void note(const std::string& msg) {
  if (!g_quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

[[noreturn]] void input_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(kExitInputError);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ReportDeleter {
  void operator()(dgp_report* r) const { dgp_report_free(r); }
};
struct ProfileDeleter {
  void operator()(dgp_profile* p) const { dgp_profile_free(p); }
};
struct SimDeleter {
  void operator()(dgp_sim* s) const { dgp_sim_free(s); }
};
using ReportPtr = std::unique_ptr<dgp_report, ReportDeleter>;
using ProfilePtr = std::unique_ptr<dgp_profile, ProfileDeleter>;
using SimPtr = std::unique_ptr<dgp_sim, SimDeleter>;

void check_status(dgp_status st, const std::string& what) {
  if (st != DGP_OK)
    input_error(what + ": " + dgp_status_name(st) + " (" + dgp_last_error() + ")");
}

json report_to_json(const dgp_report* rep) {
  json j;
  json consts = json::object();
  for (size_t i = 0; i < dgp_report_constant_count(rep); ++i)
    consts[dgp_report_constant_name(rep, i)] = dgp_report_constant_value(rep, i);
  json checks = json::array();
  for (size_t i = 0; i < dgp_report_check_count(rep); ++i) {
    double pred, meas, rel;
    int pass;
    dgp_report_check(rep, i, &pred, &meas, &rel, &pass);
    checks.push_back({{"name", dgp_report_check_name(rep, i)},
                      {"predicted", pred},
                      {"measured", meas},
                      {"rel_error", rel},
                      {"pass", pass != 0}});
  }
  j["constants"] = consts;
  j["checks"] = checks;
  j["all_pass"] = dgp_report_all_pass(rep) != 0;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) input_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::pair<double, double>>& rows) {
  std::string text = header + "\n";
  for (const auto& [a, b] : rows) text += fmt17(a) + "," + fmt17(b) + "\n";
  write_text(path, text);
}

struct ParamFlags {
  dgp_params prm{0.5, 1.0, 1.0, 0.25, 1.0, 1.0};
  void attach(CLI::App* cmd) {
    cmd->add_option("--m", prm.m, "nonlinearity exponent m");
    cmd->add_option("--p", prm.p, "gradient exponent p");
    cmd->add_option("--b", prm.b, "absorption coefficient b");
    cmd->add_option("--beta", prm.beta, "absorption exponent beta");
    cmd->add_option("--alpha", prm.alpha, "initial profile exponent alpha");
    cmd->add_option("--C", prm.C, "initial profile coefficient C");
  }
};

// ---------------------------------------------------------------- classify
int cmd_classify(const dgp_params& prm) {
  dgp_regime rc;
  const dgp_status st = dgp_classify(&prm, &rc);
  if (st != DGP_OK)
    input_error(std::string("classification rejected: ") + dgp_status_name(st) + " (" +
                dgp_last_error() + ")");
  json j;
  j["case"] = dgp_case_name(rc.case_id);
  j["interface_kind"] = dgp_interface_kind_name(rc.interface_kind);
  j["predicted_exponent"] = rc.has_exponent ? json(rc.exponent) : json(nullptr);
  j["decay_law"] = dgp_decay_law_name(rc.decay_law);
  std::printf("%s\n", j.dump().c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- constants
int cmd_constants(const dgp_params& prm, double epsilon, std::optional<double> a0,
                  std::optional<double> a1, std::optional<double> lambda,
                  std::optional<double> ell1) {
  dgp_report* rep = nullptr;
  const dgp_status st =
      dgp_appendix_constants(&prm, epsilon, a0 ? &*a0 : nullptr, a1 ? &*a1 : nullptr,
                             lambda ? &*lambda : nullptr, ell1 ? &*ell1 : nullptr, &rep);
  if (st != DGP_OK)
    input_error(std::string("constants: ") + dgp_status_name(st) + " (" + dgp_last_error() + ")");
  ReportPtr guard(rep);
  json j = json::object();
  for (size_t i = 0; i < dgp_report_constant_count(rep); ++i)
    j[dgp_report_constant_name(rep, i)] = dgp_report_constant_value(rep, i);
  std::printf("%s\n", j.dump(2).c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- stationary
int cmd_stationary(const dgp_params& prm_in, double z_min, int nodes, const fs::path& out_dir) {
  dgp_params prm = prm_in;
  prm.beta = prm.m * prm.p;  // phi lives on the balance line
  dgp_profile* prof = nullptr;
  check_status(dgp_stationary_profile(&prm, z_min, nodes, &prof), "stationary profile");
  ProfilePtr guard(prof);

  fs::create_directories(out_dir);
  std::vector<std::pair<double, double>> rows;
  for (size_t i = 0; i < dgp_profile_size(prof); ++i) {
    double x, v;
    dgp_profile_node(prof, i, &x, &v);
    rows.push_back({x, v});
  }
  write_csv(out_dir / "phi.csv", "x,phi", rows);

  dgp_report* rep = nullptr;
  check_status(dgp_stationary_decay_check(&prm, prof, 1.2, &rep), "decay check");
  ReportPtr rguard(rep);
  const json j = report_to_json(rep);
  write_json(out_dir / "stationary_report.json", j);
  std::printf("%s\n", j.dump(2).c_str());
  return dgp_report_all_pass(rep) ? kExitOk : kExitChecksFailed;
}

// ---------------------------------------------------------------- selfsim
int cmd_selfsim(const dgp_params& prm, const dgp_shooting_config& scfg, const fs::path& out_dir) {
  dgp_regime rc;
  check_status(dgp_classify(&prm, &rc), "classify");

  dgp_profile* prof = nullptr;
  const bool balance = rc.case_id == DGP_CASE_II_SUPER || rc.case_id == DGP_CASE_II_SUB ||
                       rc.case_id == DGP_CASE_II_STATIONARY;
  if (balance)
    check_status(dgp_selfsim_f1(&prm, &scfg, &prof), "f1 shooting");
  else
    check_status(dgp_selfsim_f(&prm, &scfg, &prof), "f shooting");
  ProfilePtr guard(prof);

  fs::create_directories(out_dir);
  std::vector<std::pair<double, double>> rows;
  for (size_t i = 0; i < dgp_profile_size(prof); ++i) {
    double x, v;
    dgp_profile_node(prof, i, &x, &v);
    rows.push_back({x, v});
  }
  write_csv(out_dir / (balance ? "f1.csv" : "f.csv"), balance ? "xi,f1" : "xi,f", rows);

  json j;
  double v0 = 0.0;
  if (dgp_profile_value_at_zero(prof, &v0) != DGP_OK) v0 = 0.0;
  if (balance) {
    double zs = 0.0;
    check_status(dgp_profile_front(prof, &zs), "front location");
    j["A1"] = v0;
    j["zeta_star"] = zs;
  } else {
    j["A0"] = v0;
  }
  write_json(out_dir / "selfsim.json", j);
  std::printf("%s\n", j.dump().c_str());
  return kExitOk;
}

// ---------------------------------------------------------------- simulate
struct SimulateOutcome {
  bool ok = false;
  bool all_pass = false;
  std::string message;
};

SimulateOutcome simulate_manifest(const std::string& manifest_path,
                                  const std::string& out_override) {
  SimulateOutcome outcome;
  cli::Manifest mf;
  try {
    mf = cli::Manifest::load(manifest_path);
  } catch (const std::exception& e) {
    outcome.message = e.what();
    return outcome;
  }

  dgp_params prm;
  try {
    prm.m = mf.require_number("params.m");
    prm.p = mf.require_number("params.p");
    prm.b = mf.require_number("params.b");
    prm.beta = mf.require_number("params.beta");
    prm.alpha = mf.require_number("params.alpha");
    prm.C = mf.require_number("params.C");
  } catch (const std::exception& e) {
    outcome.message = e.what();
    return outcome;
  }
  dgp_regime rc;
  if (dgp_classify(&prm, &rc) != DGP_OK) {
    outcome.message = std::string("invalid parameters: ") + dgp_last_error();
    return outcome;
  }

  dgp_solver_config sc{};
  sc.x_left = mf.get_number("solver.x_left", -2.0);
  sc.x_right = mf.get_number("solver.x_right", 4.0);
  sc.dx = mf.get_number("solver.dx", 2e-3);
  sc.t_end = mf.get_number("solver.t_end", 5e-2);
  sc.cfl_safety = mf.get_number("solver.cfl", 0.4);
  sc.floor = mf.get_number("solver.floor", 0.0);
  sc.threshold = mf.get_number("solver.threshold", 0.0);
  sc.floor_scale = mf.get_number("solver.floor_scale", 1e-6);
  const std::string lbc = mf.get_string("solver.left_bc", "exact_absorption");
  const std::string rbc = mf.get_string("solver.right_bc", "zero");
  if (lbc == "frozen")
    sc.left_bc = 0;
  else if (lbc == "exact_absorption")
    sc.left_bc = 1;
  else if (lbc == "reflecting")
    sc.left_bc = 2;
  else {
    outcome.message = "unknown solver.left_bc: " + lbc;
    return outcome;
  }
  if (rbc == "zero")
    sc.right_bc = 0;
  else if (rbc == "floor")
    sc.right_bc = 1;
  else if (rbc == "reflecting")
    sc.right_bc = 2;
  else {
    outcome.message = "unknown solver.right_bc: " + rbc;
    return outcome;
  }

  std::vector<double> samples = mf.get_list("solver.sample_times");
  if (samples.empty()) {
    const int n = static_cast<int>(mf.get_number("solver.samples", 16));
    const double t_first = mf.get_number("solver.t_first", sc.t_end / 50.0);
    for (int i = 0; i < n; ++i)
      samples.push_back(t_first * std::pow(sc.t_end / t_first, double(i) / (n - 1)));
    samples.back() = sc.t_end;
  }
  sc.sample_times = samples.data();
  sc.n_samples = samples.size();

  const fs::path out_dir = out_override.empty()
                               ? fs::path(mf.get_string("output.dir", "out"))
                               : fs::path(out_override);
  fs::create_directories(out_dir);

  // regime-dependent shape inputs
  dgp_shooting_config scfg{};
  scfg.xi_left = mf.get_number("shooting.xi_left", std::nan(""));
  scfg.xi_right = mf.get_number("shooting.xi_right", std::nan(""));
  scfg.tolerance = 0.0;
  scfg.ode_rel_tol = 0.0;
  scfg.output_nodes = 0;

  ProfilePtr shape, phi;
  std::optional<double> a0, a1, lambda, ell1;
  const bool balance = rc.case_id == DGP_CASE_II_SUPER || rc.case_id == DGP_CASE_II_SUB ||
                       rc.case_id == DGP_CASE_II_STATIONARY;
  if (balance) {
    dgp_profile* pr = nullptr;
    if (dgp_selfsim_f1(&prm, &scfg, &pr) != DGP_OK) {
      outcome.message = std::string("f1 shooting failed: ") + dgp_last_error();
      return outcome;
    }
    shape.reset(pr);
    double v0 = 0.0;
    if (dgp_profile_value_at_zero(pr, &v0) == DGP_OK && rc.case_id == DGP_CASE_II_SUPER) a1 = v0;
    double zs = 0.0;
    if (dgp_profile_front(pr, &zs) == DGP_OK && rc.case_id == DGP_CASE_II_SUB) {
      // lambda curve for the sub-critical constants: pick ell1 left of the
      // front with margin scaled by the contact geometry
      double cs = 0.0;
      dgp_c_star(&prm, &cs);
      const double q = std::pow(prm.C / cs, (prm.m * prm.p - prm.beta) / (1.0 + prm.p));
      const double l1 = 1.5 * std::abs(zs) / std::max(1.0 - q, 1e-3);
      double lam = 0.0;
      if (dgp_profile_eval(pr, -l1, &lam) == DGP_OK && lam > 0.0) {
        ell1 = l1;
        lambda = lam;
      }
    }
  } else if (rc.case_id == DGP_CASE_IV) {
    dgp_profile* pr = nullptr;
    if (dgp_stationary_profile(&prm, mf.get_number("stationary.z_min", 1e-12), 400, &pr) !=
        DGP_OK) {
      outcome.message = std::string("stationary profile failed: ") + dgp_last_error();
      return outcome;
    }
    phi.reset(pr);
  } else {
    dgp_profile* pr = nullptr;
    if (dgp_selfsim_f(&prm, &scfg, &pr) != DGP_OK) {
      outcome.message = std::string("f shooting failed: ") + dgp_last_error();
      return outcome;
    }
    shape.reset(pr);
    double v0 = 0.0;
    if (dgp_profile_value_at_zero(pr, &v0) == DGP_OK) a0 = v0;
  }

  note("running " + manifest_path);
  dgp_sim* sim_raw = nullptr;
  if (dgp_simulate(&prm, &sc, &sim_raw) != DGP_OK) {
    outcome.message = std::string("simulation failed: ") + dgp_last_error();
    return outcome;
  }
  SimPtr sim(sim_raw);

  // snapshots, one CSV per sample time
  const size_t grid_n = dgp_sim_grid_size(sim.get());
  std::vector<double> xs(grid_n), us(grid_n);
  dgp_sim_grid(sim.get(), xs.data());
  for (size_t i = 0; i < dgp_sim_snapshot_count(sim.get()); ++i) {
    double t;
    dgp_sim_snapshot_time(sim.get(), i, &t);
    dgp_sim_snapshot_values(sim.get(), i, us.data());
    char name[64];
    std::snprintf(name, sizeof(name), "snap_t%.6f.csv", t);
    std::string text = "x,u\n";
    for (size_t k = 0; k < grid_n; ++k) text += fmt17(xs[k]) + "," + fmt17(us[k]) + "\n";
    write_text(out_dir / name, text);
  }
  {
    std::vector<std::pair<double, double>> rows;
    for (size_t i = 0; i < dgp_sim_trace_size(sim.get()); ++i) {
      double t, eta;
      dgp_sim_trace_point(sim.get(), i, &t, &eta);
      rows.push_back({t, eta});
    }
    write_csv(out_dir / "interface.csv", "t,eta", rows);
  }

  // verdicts
  json report;
  bool all_pass = true;
  const double eps = mf.get_number("analysis.epsilon", 0.1);
  const double fit_lo = mf.get_number("fit.t_lo", samples.front());
  const double fit_hi = mf.get_number("fit.t_hi", samples.back());

  if (rc.case_id == DGP_CASE_I || rc.case_id == DGP_CASE_II_SUPER ||
      rc.case_id == DGP_CASE_II_SUB || rc.case_id == DGP_CASE_III) {
    dgp_report* rep = nullptr;
    if (dgp_verify_interface_law(&prm, sim.get(), fit_lo, fit_hi, &rep) == DGP_OK) {
      ReportPtr g(rep);
      report["interface_law"] = report_to_json(rep);
      all_pass = all_pass && dgp_report_all_pass(rep);
    } else {
      report["interface_law"] = {{"error", dgp_last_error()}};
      all_pass = false;
    }
  }
  {
    dgp_report* rep = nullptr;
    if (dgp_verify_local_solution(&prm, sim.get(), shape.get(), phi.get(), eps, &rep) == DGP_OK) {
      ReportPtr g(rep);
      report["local_solution"] = report_to_json(rep);
      all_pass = all_pass && dgp_report_all_pass(rep);
    } else {
      report["local_solution"] = {{"error", dgp_last_error()}};
      all_pass = false;
    }
  }
  if (rc.case_id != DGP_CASE_III && rc.case_id != DGP_CASE_IV &&
      rc.case_id != DGP_CASE_II_STATIONARY) {
    dgp_report* rep = nullptr;
    if (dgp_solver_vs_barriers(&prm, sim.get(), eps, a0 ? &*a0 : nullptr, a1 ? &*a1 : nullptr,
                               lambda ? &*lambda : nullptr, ell1 ? &*ell1 : nullptr,
                               &rep) == DGP_OK) {
      ReportPtr g(rep);
      report["barriers"] = report_to_json(rep);
      all_pass = all_pass && dgp_report_all_pass(rep);
    } else {
      report["barriers"] = {{"error", dgp_last_error()}};
      all_pass = false;
    }
  }

  report["case"] = dgp_case_name(rc.case_id);
  report["clipped_mass"] = dgp_sim_clipped_mass(sim.get());
  report["right_tail_resolved"] = dgp_sim_right_tail_resolved(sim.get()) != 0;
  report["all_pass"] = all_pass;
  write_json(out_dir / "report.json", report);

  outcome.ok = true;
  outcome.all_pass = all_pass;
  outcome.message = out_dir.string();
  return outcome;
}

int cmd_simulate(const std::vector<std::string>& manifests, const std::string& out_override) {
  if (manifests.empty()) input_error("simulate needs at least one manifest file");
  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("DEGENPDE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) workers = static_cast<unsigned>(v);
  }
  workers = std::min<unsigned>(std::max(1u, workers), manifests.size());

  std::vector<SimulateOutcome> outcomes(manifests.size());
  std::mutex mu;
  size_t next = 0;
  auto worker = [&] {
    for (;;) {
      size_t idx;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= manifests.size()) return;
        idx = next++;
      }
      // each manifest owns its output directory; --out only applies to a
      // single run
      outcomes[idx] = simulate_manifest(
          manifests[idx], manifests.size() == 1 ? out_override : std::string());
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  bool any_input_error = false, all_pass = true;
  for (size_t i = 0; i < manifests.size(); ++i) {
    if (!outcomes[i].ok) {
      std::fprintf(stderr, "error: %s: %s\n", manifests[i].c_str(),
                   outcomes[i].message.c_str());
      any_input_error = true;
    } else {
      note(manifests[i] + " -> " + outcomes[i].message +
           (outcomes[i].all_pass ? " [pass]" : " [FAIL]"));
      all_pass = all_pass && outcomes[i].all_pass;
    }
  }
  if (any_input_error) return kExitInputError;
  return all_pass ? kExitOk : kExitChecksFailed;
}

// ---------------------------------------------------------------- verify
int cmd_verify(uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
  };

  json failures = json::array();
  int total = 0;
  auto run_report = [&](const std::string& what, dgp_status st, dgp_report* rep) {
    ++total;
    ReportPtr g(rep);
    if (st != DGP_OK) {
      failures.push_back({{"what", what}, {"error", dgp_last_error()}});
      return;
    }
    if (!dgp_report_all_pass(rep)) failures.push_back({{"what", what}, {"report", report_to_json(rep)}});
  };

  // randomized expanding-regime tuples: every defining identity must vanish
  for (int i = 0; i < count; ++i) {
    dgp_params prm;
    prm.m = uniform(0.2, 2.2);
    const double mp = uniform(0.08, 0.92);
    prm.p = mp / prm.m;
    prm.beta = mp * uniform(0.08, 0.9);
    prm.alpha = uniform(0.12, 0.9) * (1.0 + prm.p) / (mp - prm.beta);
    prm.b = uniform(0.1, 4.0);
    prm.C = uniform(0.2, 4.0);
    const double eps = uniform(0.05, 0.5);
    const double a0 = uniform(0.1, 4.0);
    dgp_report* rep = nullptr;
    const dgp_status st = dgp_constant_identity_suite(&prm, eps, a0, &rep);
    char what[128];
    std::snprintf(what, sizeof(what), "identities[m=%.4f,p=%.4f,beta=%.4f,alpha=%.4f]", prm.m,
                  prm.p, prm.beta, prm.alpha);
    run_report(what, st, rep);
  }

  // fixed barrier scans on representative points
  {
    dgp_params prm{0.5, 1.0, 1.0, 0.25, 1.0, 1.0};
    for (const char* id : {"case1_sub", "case1_super", "diffbound"}) {
      dgp_report* rep = nullptr;
      const dgp_status st =
          dgp_barrier_residual_scan(&prm, id, 0.1, nullptr, nullptr, nullptr, nullptr, &rep);
      run_report(std::string("scan:") + id, st, rep);
    }
  }
  {
    dgp_params prm{0.5, 1.0, 1.0, 1.2, 2.0, 1.0};  // power-tail regime, b > 0
    const double a0 = 1.0;
    for (const char* id : {"case5_sub", "case5_super"}) {
      dgp_report* rep = nullptr;
      const dgp_status st =
          dgp_barrier_residual_scan(&prm, id, 0.1, &a0, nullptr, nullptr, nullptr, &rep);
      run_report(std::string("scan:") + id, st, rep);
    }
  }
  {
    dgp_params prm{0.5, 1.0, -0.5, 1.5, 2.0, 1.0};  // b < 0 branch
    const double a0 = 1.0;
    dgp_report* rep = nullptr;
    const dgp_status st =
        dgp_barrier_residual_scan(&prm, "case5_mu_region", 0.1, &a0, nullptr, nullptr, nullptr,
                                  &rep);
    run_report("scan:case5_mu_region", st, rep);
  }

  json summary;
  summary["total"] = total;
  summary["failures"] = failures;
  summary["pass"] = failures.empty();
  std::printf("%s\n", summary.dump(2).c_str());
  return failures.empty() ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for double degenerate fast-diffusion interfaces"};
  app.require_subcommand(1);
  std::string out_dir;
  uint64_t seed = 12345;
  app.add_flag("--quiet", g_quiet, "suppress progress notes");
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--seed", seed, "seed for randomized sweeps");

  ParamFlags classify_flags, constants_flags, selfsim_flags;
  dgp_params stationary_prm{0.5, 1.0, 1.0, 0.5, 1.0, 1.0};

  auto* c_classify = app.add_subcommand("classify", "classify a parameter point");
  classify_flags.attach(c_classify);

  auto* c_constants = app.add_subcommand("constants", "closed-form constant table as JSON");
  constants_flags.attach(c_constants);
  double epsilon = 0.1;
  double a0v = 0.0, a1v = 0.0, lamv = 0.0, ell1v = 0.0;
  c_constants->add_option("--epsilon", epsilon, "epsilon in (0,1) for the tail constants");
  auto* o_a0 = c_constants->add_option("--a0", a0v, "A0 = f(0) from the b=0 shape");
  auto* o_a1 = c_constants->add_option("--a1", a1v, "A1 = f1(0) from the balance shape");
  auto* o_lam = c_constants->add_option("--lambda", lamv, "lambda from the balance shape");
  auto* o_el1 = c_constants->add_option("--ell1", ell1v, "ell_1 from the balance shape");

  auto* c_stationary = app.add_subcommand("stationary", "tabulate phi and check its decay");
  c_stationary->add_option("--m", stationary_prm.m, "m");
  c_stationary->add_option("--p", stationary_prm.p, "p");
  c_stationary->add_option("--b", stationary_prm.b, "b");
  double z_min = 1e-12;
  int nodes = 400;
  c_stationary->add_option("--zmin", z_min, "smallest tabulated phi value");
  c_stationary->add_option("--nodes", nodes, "tabulation nodes");

  auto* c_selfsim = app.add_subcommand("selfsim", "solve the self-similar shape (f or f1)");
  selfsim_flags.attach(c_selfsim);
  dgp_shooting_config scfg{};
  scfg.xi_left = std::nan("");
  scfg.xi_right = std::nan("");
  c_selfsim->add_option("--xi-left", scfg.xi_left, "far-field matching point");
  c_selfsim->add_option("--xi-right", scfg.xi_right, "right edge of the shooting window");

  auto* c_simulate = app.add_subcommand("simulate", "full pipeline from a manifest");
  std::vector<std::string> manifests;
  c_simulate->add_option("manifest", manifests, "manifest file(s)")->required();

  auto* c_verify = app.add_subcommand("verify", "closed-form identity and barrier-sign sweep");
  int count = 50;
  c_verify->add_option("--count", count, "number of randomized parameter tuples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (c_classify->parsed()) return cmd_classify(classify_flags.prm);
  if (c_constants->parsed())
    return cmd_constants(constants_flags.prm, epsilon,
                         o_a0->count() ? std::optional<double>(a0v) : std::nullopt,
                         o_a1->count() ? std::optional<double>(a1v) : std::nullopt,
                         o_lam->count() ? std::optional<double>(lamv) : std::nullopt,
                         o_el1->count() ? std::optional<double>(ell1v) : std::nullopt);
  if (c_stationary->parsed())
    return cmd_stationary(stationary_prm, z_min, nodes, out_dir.empty() ? "out" : out_dir);
  if (c_selfsim->parsed())
    return cmd_selfsim(selfsim_flags.prm, scfg, out_dir.empty() ? "out" : out_dir);
  if (c_simulate->parsed()) return cmd_simulate(manifests, out_dir);
  if (c_verify->parsed()) return cmd_verify(seed, count);
  return kExitInputError;
}
