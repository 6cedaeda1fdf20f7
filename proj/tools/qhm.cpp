#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qhm/harness.hpp"

namespace {

void add_common(CLI::App* cmd, qhm::SuiteConfig& cfg) {
  cmd->add_option("--c", cfg.c, "central charge (positive integer)");
  cmd->add_option("--mu", cfg.mu, "deformation parameter mu in (0,1)");
  cmd->add_option("--nu", cfg.nu, "deformation parameter nu in [0,1)");
  cmd->add_option("--nx", cfg.nx, "Chebyshev order in x");
  cmd->add_option("--ny", cfg.ny, "Fourier half-width in y");
  cmd->add_option("--pmax", cfg.p_max, "Fourier window half-width in p");
  cmd->add_option("--seed", cfg.seed, "seed for the deterministic tuple generator");
}

void write_or_die(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::RuntimeError("cannot open " + path, 3);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of the smooth quantum Heisenberg manifold"};
  app.require_subcommand(1);
  qhm::SuiteConfig cfg;
  std::string json_path, md_path, res_csv = "64,128,256";

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite,
                     "all|algebra|cocycles|even|odd|dual|toeplitz");
  add_common(verify, cfg);
  verify->add_option("--json", json_path, "write the JSON report here");
  verify->add_option("--markdown", md_path, "write the markdown tables here");

  auto* sw = app.add_subcommand("sweep", "error-vs-resolution convergence table");
  sw->add_option("--resolutions", res_csv,
                 "comma-separated Chebyshev orders (y stays spectral)");
  sw->add_option("--suite", cfg.suite, "all|algebra|cocycles|even|odd|dual|toeplitz");
  add_common(sw, cfg);
  sw->add_option("--json", json_path, "write the JSON report here");
  sw->add_option("--markdown", md_path, "write the markdown table here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      auto recs = qhm::run_suite(cfg);
      auto sum = qhm::summarize(recs);
      if (!json_path.empty()) write_or_die(json_path, qhm::emit_json(cfg, recs));
      if (!md_path.empty()) write_or_die(md_path, qhm::emit_tables(recs));
      for (const auto& r : recs) {
        std::cout << (r.skipped ? "skip" : r.pass ? "pass" : "FAIL") << "  " << r.id;
        if (r.skipped)
          std::cout << "  (" << r.skip_reason << ")";
        else
          std::cout << "  err " << r.abs_err << "  tol " << r.tol;
        std::cout << "\n";
      }
      std::cout << "passed " << sum.passed << "  failed " << sum.failed
                << "  skipped " << sum.skipped << "\n";
      return sum.failed == 0 ? 0 : 1;
    }

    std::vector<int> res;
    std::stringstream ss(res_csv);
    for (std::string tok; std::getline(ss, tok, ',');) res.push_back(std::stoi(tok));
    auto rows = qhm::sweep(cfg, res);
    auto table = qhm::emit_sweep(rows, res);
    if (!md_path.empty()) write_or_die(md_path, table);
    if (!json_path.empty()) {
      std::ostringstream js;
      js << "[\n";
      for (size_t i = 0; i < rows.size(); ++i) {
        js << "  {\"id\": \"" << rows[i].id << "\", \"errs\": [";
        for (size_t j = 0; j < rows[i].errs.size(); ++j)
          js << (j ? ", " : "") << rows[i].errs[j];
        js << "], \"quadrature_bound\": " << (rows[i].quadrature_bound ? "true" : "false")
           << ", \"converged\": " << (rows[i].converged ? "true" : "false") << "}"
           << (i + 1 < rows.size() ? "," : "") << "\n";
      }
      js << "]\n";
      write_or_die(json_path, js.str());
    }
    std::cout << table;
    int bad = 0;
    for (const auto& r : rows) bad += r.converged ? 0 : 1;
    return bad == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
