// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "doctest.h"
#include "privclust.h"

namespace {

char errbuf[512];

std::string take(char* text) {
  std::string out = text ? text : "";
  pc_string_free(text);
  return out;
}

const char* kInstance =
    "privclust instance v1\n"
    "points 4\n"
    "locations same\n"
    "metric matrix\n"
    "0 1 10 11\n"
    "1 0 9 10\n"
    "10 9 0 1\n"
    "11 10 1 0\n"
    "k 2\n"
    "ell 2\n"
    "outliers 0\n"
    "capacities none\n"
    "colors none\n"
    "color_ell none\n"
    "opening_cost none\n"
    "end\n";

}  // namespace

TEST_CASE("C API solves, serializes and verifies") {
  pc_instance* inst = nullptr;
  REQUIRE(pc_instance_parse(kInstance, &inst, errbuf, sizeof errbuf) == PC_OK);

  char* text = nullptr;
  REQUIRE(pc_instance_to_text(inst, &text, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(text) == kInstance);

  pc_solution* sol = nullptr;
  char* trace = nullptr;
  REQUIRE(pc_solve(inst, "private-outliers", "exact", &sol, &trace, errbuf, sizeof errbuf) ==
          PC_OK);
  CHECK(take(trace).find("accepted") != std::string::npos);

  char* value = nullptr;
  REQUIRE(pc_solution_value(sol, &value, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(value) == "1");

  int feasible = 0;
  char* report = nullptr;
  REQUIRE(pc_verify(inst, sol, &feasible, &report, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(report).empty());
  CHECK(feasible == 1);

  char* sol_text = nullptr;
  REQUIRE(pc_solution_to_text(sol, &sol_text, errbuf, sizeof errbuf) == PC_OK);
  std::string sol_str = take(sol_text);
  pc_solution* reparsed = nullptr;
  REQUIRE(pc_solution_parse(sol_str.c_str(), &reparsed, errbuf, sizeof errbuf) == PC_OK);
  char* round = nullptr;
  REQUIRE(pc_solution_to_text(reparsed, &round, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(round) == sol_str);
  pc_solution_free(reparsed);

  char* oracle = nullptr;
  REQUIRE(pc_oracle(inst, "private-outliers", &oracle, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(oracle) == "1");

  char* rep = nullptr;
  REQUIRE(pc_run_report(inst, sol, nullptr, 1, &rep, errbuf, sizeof errbuf) == PC_OK);
  std::string rep_str = take(rep);
  CHECK(rep_str.find("ratio 1") != std::string::npos);
  CHECK(rep_str.find("feasible yes") != std::string::npos);

  pc_solution_free(sol);
  pc_instance_free(inst);
}

TEST_CASE("C API error codes distinguish the failure categories") {
  pc_instance* inst = nullptr;
  CHECK(pc_instance_parse("garbage", &inst, errbuf, sizeof errbuf) == PC_ERR_PARSE);

  // pigeonhole at parse time is an infeasibility, not a parse error
  std::string tight(kInstance);
  tight.replace(tight.find("ell 2"), 5, "ell 3");
  CHECK(pc_instance_parse(tight.c_str(), &inst, errbuf, sizeof errbuf) == PC_ERR_INFEASIBLE);

  REQUIRE(pc_instance_parse(kInstance, &inst, errbuf, sizeof errbuf) == PC_OK);
  pc_solution* sol = nullptr;
  CHECK(pc_solve(inst, "no-such-variant", nullptr, &sol, nullptr, errbuf, sizeof errbuf) ==
        PC_ERR_INVALID_ARGUMENT);
  CHECK(pc_solve(inst, "private-capacitated", nullptr, &sol, nullptr, errbuf, sizeof errbuf) ==
        PC_ERR_INVALID_INSTANCE);  // no capacities on this instance
  pc_instance_free(inst);
}

TEST_CASE("C API reports size caps and verification violations") {
  // 13 colinear points overflow the exact solver's point cap.
  std::string big = "privclust instance v1\npoints 13\nlocations same\nmetric matrix\n";
  for (int a = 0; a < 13; ++a) {
    for (int b = 0; b < 13; ++b) big += (b ? " " : "") + std::to_string(a > b ? a - b : b - a);
    big += "\n";
  }
  big += "k 2\nell 2\noutliers 0\ncapacities none\ncolors none\ncolor_ell none\n";
  big += "opening_cost none\nend\n";
  pc_instance* inst = nullptr;
  REQUIRE(pc_instance_parse(big.c_str(), &inst, errbuf, sizeof errbuf) == PC_OK);
  pc_solution* sol = nullptr;
  CHECK(pc_solve(inst, "private-outliers", "exact", &sol, nullptr, errbuf, sizeof errbuf) ==
        PC_ERR_SIZE_CAP);
  pc_instance_free(inst);

  // A tampered cluster below ell shows up as a privacy violation.
  REQUIRE(pc_instance_parse(kInstance, &inst, errbuf, sizeof errbuf) == PC_OK);
  const char* tampered =
      "privclust solution v1\n"
      "variant private-outliers\n"
      "underlying exact\n"
      "clusters 2\n"
      "cluster 0 location 0 points 0 1 2\n"
      "cluster 1 location 3 points 3\n"
      "outliers none\n"
      "radius 2\n"
      "end\n";
  pc_solution* bad = nullptr;
  REQUIRE(pc_solution_parse(tampered, &bad, errbuf, sizeof errbuf) == PC_OK);
  int feasible = 1;
  char* report = nullptr;
  REQUIRE(pc_verify(inst, bad, &feasible, &report, errbuf, sizeof errbuf) == PC_OK);
  CHECK(feasible == 0);
  CHECK(take(report).find("privacy") != std::string::npos);
  pc_solution_free(bad);
  pc_instance_free(inst);
}

TEST_CASE("C API solves are byte-deterministic") {
  pc_instance* inst = nullptr;
  REQUIRE(pc_instance_parse(kInstance, &inst, errbuf, sizeof errbuf) == PC_OK);
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    pc_solution* sol = nullptr;
    char* trace = nullptr;
    REQUIRE(pc_solve(inst, "private-outliers", "exact", &sol, &trace, errbuf, sizeof errbuf) ==
            PC_OK);
    char* text = nullptr;
    REQUIRE(pc_solution_to_text(sol, &text, errbuf, sizeof errbuf) == PC_OK);
    *out = take(text) + take(trace);
    pc_solution_free(sol);
  }
  CHECK(first == second);
  pc_instance_free(inst);
}

TEST_CASE("C API bench runs and reports deterministically") {
  const char* cfg = "variant private-outliers\ntrials 5\nseed 7\nmax_n 6\noracle on\n";
  char *rep1 = nullptr, *rep2 = nullptr, *replay = nullptr;
  REQUIRE(pc_bench_run(cfg, &rep1, &replay, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(replay).empty());
  REQUIRE(pc_bench_run(cfg, &rep2, nullptr, errbuf, sizeof errbuf) == PC_OK);
  std::string a = take(rep1), b = take(rep2);
  CHECK(a == b);
  CHECK(a.find("status ok") != std::string::npos);
}

TEST_CASE("C API exposes the variant registry and factor table") {
  char* text = nullptr;
  REQUIRE(pc_variants(&text, errbuf, sizeof errbuf) == PC_OK);
  std::string variants = take(text);
  CHECK(variants.find("private-fair-capacitated") != std::string::npos);
  REQUIRE(pc_underlying_options("private-outliers", &text, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(text).find("outliers-greedy") != std::string::npos);
  REQUIRE(pc_factor_table(&text, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(text).find("private-fair") != std::string::npos);
  CHECK(std::string(pc_version()).find("privclust") == 0);
}

TEST_CASE("C API generates deterministic instances") {
  const char* spec = "seed 5 n 6 k 2 ell 1 color_mode balanced colors 2";
  pc_instance *a = nullptr, *b = nullptr;
  REQUIRE(pc_instance_generate(spec, &a, errbuf, sizeof errbuf) == PC_OK);
  REQUIRE(pc_instance_generate(spec, &b, errbuf, sizeof errbuf) == PC_OK);
  char *ta = nullptr, *tb = nullptr;
  REQUIRE(pc_instance_to_text(a, &ta, errbuf, sizeof errbuf) == PC_OK);
  REQUIRE(pc_instance_to_text(b, &tb, errbuf, sizeof errbuf) == PC_OK);
  CHECK(take(ta) == take(tb));
  pc_instance_free(a);
  pc_instance_free(b);
}
