// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Links only the public C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "privclust.h"

namespace {

struct Scoped {
  char* text = nullptr;
  ~Scoped() { pc_string_free(text); }
};

struct InstanceHandle {
  pc_instance* inst = nullptr;
  ~InstanceHandle() { pc_instance_free(inst); }
};

struct SolutionHandle {
  pc_solution* sol = nullptr;
  ~SolutionHandle() { pc_solution_free(sol); }
};

char errbuf[512];

int fail(pc_status st) {
  std::cerr << "error: " << errbuf << "\n";
  return static_cast<int>(st);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << (text ? text : "");
  return out.good();
}

std::string read_file_or_die(const std::string& path, int* rc) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    *rc = PC_ERR_PARSE;
    return "";
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  *rc = PC_OK;
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privclust: k-center clustering with privacy lower bounds, outliers, "
               "capacities, fairness and per-color bounds"};
  app.require_subcommand(1);

  // solve
  std::string in_path, out_path, report_path, trace_path, variant, underlying;
  bool with_oracle = false;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--input", in_path, "instance file")->required();
  solve->add_option("--variant", variant, "solver variant (see 'factors')")->required();
  solve->add_option("--underlying", underlying, "underlying solver id (default per variant)");
  solve->add_option("--output", out_path, "write the solution document here");
  solve->add_option("--report", report_path, "write the run report here (default: stdout)");
  solve->add_option("--tau-trace", trace_path, "write the per-threshold iteration log here");
  solve->add_flag("--with-oracle", with_oracle, "include the exact optimum in the report");

  // verify
  std::string sol_path;
  auto* verify = app.add_subcommand("verify", "re-check a solution against its instance");
  verify->add_option("--input", in_path, "instance file")->required();
  verify->add_option("--solution", sol_path, "solution file")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum for a variant");
  oracle->add_option("--input", in_path, "instance file")->required();
  oracle->add_option("--variant", variant, "solver variant")->required();

  // bench
  int trials = 200, max_n = 8;
  std::uint64_t seed = 1;
  bool no_oracle = false;
  std::string replay_path;
  auto* bench = app.add_subcommand("bench", "random sweep with feasibility and ratio checks");
  bench->add_option("--variant", variant, "solver variant")->required();
  bench->add_option("--underlying", underlying, "underlying solver id");
  bench->add_option("--trials", trials, "number of feasible instances to test");
  bench->add_option("--seed", seed, "master seed");
  bench->add_option("--max-n", max_n, "largest point count to generate");
  bench->add_flag("--no-oracle", no_oracle, "feasibility-only mode (no ratio checks)");
  bench->add_option("--report", report_path, "write the bench report here (default: stdout)");
  bench->add_option("--replay", replay_path, "write any offending instance here");

  // factors
  auto* factors = app.add_subcommand("factors", "print the guarantee table");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    InstanceHandle inst;
    pc_status st = pc_instance_from_file(in_path.c_str(), &inst.inst, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    SolutionHandle sol;
    Scoped trace;
    st = pc_solve(inst.inst, variant.c_str(), underlying.empty() ? nullptr : underlying.c_str(),
                  &sol.sol, trace_path.empty() ? nullptr : &trace.text, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    if (!trace_path.empty() && !write_file(trace_path, trace.text)) {
      std::cerr << "error: cannot write " << trace_path << "\n";
      return PC_ERR_INTERNAL;
    }
    if (!out_path.empty()) {
      Scoped text;
      st = pc_solution_to_text(sol.sol, &text.text, errbuf, sizeof errbuf);
      if (st != PC_OK) return fail(st);
      if (!write_file(out_path, text.text)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return PC_ERR_INTERNAL;
      }
    }
    Scoped report;
    st = pc_run_report(inst.inst, sol.sol, trace.text, with_oracle ? 1 : 0, &report.text,
                       errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    if (report_path.empty())
      std::cout << report.text;
    else if (!write_file(report_path, report.text)) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return PC_ERR_INTERNAL;
    }
    return 0;
  }

  if (verify->parsed()) {
    InstanceHandle inst;
    pc_status st = pc_instance_from_file(in_path.c_str(), &inst.inst, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    int rc = PC_OK;
    std::string sol_text = read_file_or_die(sol_path, &rc);
    if (rc != PC_OK) return rc;
    SolutionHandle sol;
    st = pc_solution_parse(sol_text.c_str(), &sol.sol, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    int feasible = 0;
    Scoped report;
    st = pc_verify(inst.inst, sol.sol, &feasible, &report.text, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    if (feasible) {
      std::cout << "feasible\n";
      return 0;
    }
    std::cout << "infeasible\n" << (report.text ? report.text : "");
    return 1;
  }

  if (oracle->parsed()) {
    InstanceHandle inst;
    pc_status st = pc_instance_from_file(in_path.c_str(), &inst.inst, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    Scoped value;
    st = pc_oracle(inst.inst, variant.c_str(), &value.text, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    std::cout << value.text << "\n";
    return 0;
  }

  if (bench->parsed()) {
    std::ostringstream cfg;
    cfg << "variant " << variant << "\n";
    if (!underlying.empty()) cfg << "underlying " << underlying << "\n";
    cfg << "trials " << trials << "\nseed " << seed << "\nmax_n " << max_n << "\n";
    cfg << "oracle " << (no_oracle ? "off" : "on") << "\n";
    Scoped report, replay;
    pc_status st = pc_bench_run(cfg.str().c_str(), &report.text, &replay.text, errbuf,
                                sizeof errbuf);
    if (report.text) {
      if (report_path.empty())
        std::cout << report.text;
      else if (!write_file(report_path, report.text)) {
        std::cerr << "error: cannot write " << report_path << "\n";
        return PC_ERR_INTERNAL;
      }
    }
    if (st != PC_OK) {
      if (replay.text && replay.text[0] != '\0') {
        const std::string path = replay_path.empty() ? "privclust-replay.instance" : replay_path;
        if (write_file(path, replay.text)) std::cerr << "replay instance written to " << path << "\n";
      }
      return fail(st);
    }
    return 0;
  }

  if (factors->parsed()) {
    Scoped table;
    pc_status st = pc_factor_table(&table.text, errbuf, sizeof errbuf);
    if (st != PC_OK) return fail(st);
    std::cout << table.text;
    return 0;
  }

  return 0;
}
