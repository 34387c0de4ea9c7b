// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "privclust/bench.hpp"
#include "privclust/guarantees.hpp"
#include "privclust/instance_io.hpp"

using namespace privclust;

struct pc_instance {
  Instance inst;
};

struct pc_solution {
  SolutionDoc doc;
};

namespace {

void fill_err(char* errbuf, size_t errlen, const char* what) {
  if (!errbuf || errlen == 0) return;
  std::strncpy(errbuf, what, errlen - 1);
  errbuf[errlen - 1] = '\0';
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
pc_status guarded(char* errbuf, size_t errlen, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_PARSE;
  } catch (const InvalidInstanceError& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_INVALID_INSTANCE;
  } catch (const MalformedSolutionError& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_INVALID_INSTANCE;
  } catch (const InfeasibleError& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_INFEASIBLE;
  } catch (const SizeCapError& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_SIZE_CAP;
  } catch (const MisuseError& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    fill_err(errbuf, errlen, e.what());
    return PC_ERR_INTERNAL;
  } catch (...) {
    fill_err(errbuf, errlen, "unknown failure");
    return PC_ERR_INTERNAL;
  }
}

GenSpec parse_genspec(const std::string& text) {
  GenSpec g;
  std::istringstream in(text);
  std::string key;
  while (in >> key) {
    std::string value;
    if (!(in >> value)) throw ParseError("generator spec: key '" + key + "' without a value");
    auto to_int = [&](const std::string& s) {
      Rational r = Rational::parse(s);
      if (!r.is_integer()) throw ParseError("generator spec: integer expected for " + key);
      return r.num();
    };
    if (key == "seed") g.seed = static_cast<std::uint64_t>(to_int(value));
    else if (key == "n") g.num_points = static_cast<int>(to_int(value));
    else if (key == "locations") g.num_locations = static_cast<int>(to_int(value));
    else if (key == "metric") {
      if (value == "euclidean") g.metric = MetricKind::Euclidean;
      else if (value == "graph") g.metric = MetricKind::GraphShortestPath;
      else throw ParseError("generator spec: unknown metric " + value);
    } else if (key == "color_mode") {
      if (value == "none") g.color_mode = ColorMode::None;
      else if (value == "balanced") g.color_mode = ColorMode::Balanced;
      else if (value == "skewed") g.color_mode = ColorMode::Skewed;
      else if (value == "quota1") g.color_mode = ColorMode::ForceQuotaOne;
      else if (value == "general") g.color_mode = ColorMode::General;
      else throw ParseError("generator spec: unknown color mode " + value);
    } else if (key == "colors") g.num_colors = static_cast<int>(to_int(value));
    else if (key == "k") g.k = static_cast<int>(to_int(value));
    else if (key == "ell") g.ell = to_int(value);
    else if (key == "outliers") g.outliers = to_int(value);
    else if (key == "capacities") g.capacities = value == "on";
    else if (key == "uniform_caps") g.uniform_caps = value == "on";
    else if (key == "color_bounds") g.color_bounds = value == "on";
    else if (key == "opening_cost") g.opening_cost = value == "on";
    else throw ParseError("generator spec: unknown key " + key);
  }
  return g;
}

}  // namespace

extern "C" {

const char* pc_version(void) { return "privclust 1.0.0"; }

pc_status pc_instance_parse(const char* text, pc_instance** out, char* errbuf, size_t errlen) {
  if (!text || !out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out = new pc_instance{parse_instance(text)};
    return PC_OK;
  });
}

pc_status pc_instance_from_file(const char* path, pc_instance** out, char* errbuf,
                                size_t errlen) {
  if (!path || !out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&]() -> pc_status {
    std::ifstream in(path);
    if (!in) {
      fill_err(errbuf, errlen, "cannot open file");
      return PC_ERR_PARSE;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    *out = new pc_instance{parse_instance(buf.str())};
    return PC_OK;
  });
}

pc_status pc_instance_to_text(const pc_instance* inst, char** out_text, char* errbuf,
                              size_t errlen) {
  if (!inst || !out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out_text = dup_string(serialize_instance(inst->inst));
    return PC_OK;
  });
}

pc_status pc_instance_digest(const pc_instance* inst, char** out_text, char* errbuf,
                             size_t errlen) {
  if (!inst || !out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out_text = dup_string(text_digest(serialize_instance(inst->inst)));
    return PC_OK;
  });
}

void pc_instance_free(pc_instance* inst) { delete inst; }

pc_status pc_instance_generate(const char* spec_text, pc_instance** out, char* errbuf,
                               size_t errlen) {
  if (!spec_text || !out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out = new pc_instance{generate_instance(parse_genspec(spec_text))};
    return PC_OK;
  });
}

pc_status pc_solve(const pc_instance* inst, const char* variant, const char* underlying,
                   pc_solution** out, char** trace_out, char* errbuf, size_t errlen) {
  if (!inst || !variant || !out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    SolveOutcome oc =
        dispatch_solve(inst->inst, variant, underlying ? std::string(underlying) : std::string());
    SolutionDoc doc;
    doc.variant = oc.variant;
    doc.underlying = oc.underlying;
    if (oc.is_fl) {
      doc.clustering.clusters = oc.fl.clusters;
      doc.clustering.radius = eval_radius(inst->inst, doc.clustering);
      doc.cost = oc.fl.total_cost;
    } else {
      doc.clustering = oc.clustering;
    }
    if (trace_out) *trace_out = dup_string(format_trace(oc.trace));
    *out = new pc_solution{std::move(doc)};
    return PC_OK;
  });
}

pc_status pc_solution_parse(const char* text, pc_solution** out, char* errbuf, size_t errlen) {
  if (!text || !out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out = new pc_solution{parse_solution(text)};
    return PC_OK;
  });
}

pc_status pc_solution_to_text(const pc_solution* sol, char** out_text, char* errbuf,
                              size_t errlen) {
  if (!sol || !out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out_text = dup_string(serialize_solution(sol->doc));
    return PC_OK;
  });
}

pc_status pc_solution_value(const pc_solution* sol, char** out_text, char* errbuf,
                            size_t errlen) {
  if (!sol || !out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out_text = dup_string(sol->doc.cost ? sol->doc.cost->str()
                                         : sol->doc.clustering.radius.str());
    return PC_OK;
  });
}

void pc_solution_free(pc_solution* sol) { delete sol; }

pc_status pc_verify(const pc_instance* inst, const pc_solution* sol, int* feasible,
                    char** report_out, char* errbuf, size_t errlen) {
  if (!inst || !sol || !feasible) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    std::vector<std::string> violations;
    const SolutionDoc& doc = sol->doc;
    if (doc.variant == "private-capacitated-fl") {
      FLSolution re = fl_evaluate(inst->inst, doc.clustering.clusters);
      const std::int64_t ell = inst->inst.lower_bound();
      const std::int64_t u = inst->inst.capacity(0);
      for (std::size_t j = 0; j < re.clusters.size(); ++j) {
        std::int64_t size = static_cast<std::int64_t>(re.clusters[j].members.size());
        if (size < ell)
          violations.push_back("privacy: cluster " + std::to_string(j) + " below ell");
        if (size > u)
          violations.push_back("capacities: cluster " + std::to_string(j) + " above u");
      }
      if (!doc.cost || *doc.cost != re.total_cost)
        violations.push_back("cost: stored value does not match the recomputation");
    } else {
      Verdict v = check_feasible(inst->inst, constraints_for(doc.variant, inst->inst),
                                 doc.clustering);
      violations = v.violations;
      Rational re = eval_radius(inst->inst, doc.clustering);
      if (re != doc.clustering.radius)
        violations.push_back("radius: stored " + doc.clustering.radius.str() +
                             " differs from recomputed " + re.str());
    }
    *feasible = violations.empty() ? 1 : 0;
    if (report_out) {
      std::ostringstream rep;
      for (const std::string& v : violations) rep << v << "\n";
      *report_out = dup_string(rep.str());
    }
    return PC_OK;
  });
}

pc_status pc_oracle(const pc_instance* inst, const char* variant, char** value_out,
                    char* errbuf, size_t errlen) {
  if (!inst || !variant || !value_out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&]() -> pc_status {
    auto value = oracle_value(inst->inst, variant);
    if (!value) {
      fill_err(errbuf, errlen, "instance infeasible for this variant");
      return PC_ERR_INFEASIBLE;
    }
    *value_out = dup_string(value->str());
    return PC_OK;
  });
}

pc_status pc_bench_run(const char* config_text, char** report_out, char** replay_out,
                       char* errbuf, size_t errlen) {
  if (!config_text || !report_out) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&]() -> pc_status {
    BenchConfig cfg;
    std::istringstream in(config_text);
    std::string key;
    while (in >> key) {
      std::string value;
      if (!(in >> value)) throw ParseError("bench config: key '" + key + "' without a value");
      if (key == "variant") cfg.variant = value;
      else if (key == "underlying") cfg.underlying = value == "default" ? "" : value;
      else if (key == "trials") cfg.trials = static_cast<int>(Rational::parse(value).num());
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(Rational::parse(value).num());
      else if (key == "max_n") cfg.max_n = static_cast<int>(Rational::parse(value).num());
      else if (key == "oracle") cfg.with_oracle = value == "on";
      else throw ParseError("bench config: unknown key " + key);
    }
    BenchOutcome out = run_bench(cfg);
    *report_out = dup_string(out.report);
    if (replay_out) *replay_out = dup_string(out.replay);
    if (!out.ok) {
      fill_err(errbuf, errlen, "bench found a violation; see the report and replay");
      return PC_ERR_INTERNAL;
    }
    return PC_OK;
  });
}

pc_status pc_run_report(const pc_instance* inst, const pc_solution* sol, const char* trace_text,
                        int with_oracle, char** out_text, char* errbuf, size_t errlen) {
  if (!inst || !sol || !out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    RunReport r;
    r.instance_digest = text_digest(serialize_instance(inst->inst));
    r.variant = sol->doc.variant;
    r.underlying = sol->doc.underlying;
    r.value = sol->doc.cost ? sol->doc.cost->str() : sol->doc.clustering.radius.str();
    int feasible = 0;
    char* rep = nullptr;
    pc_verify(inst, sol, &feasible, &rep, nullptr, 0);
    if (rep) pc_string_free(rep);
    r.feasible = feasible == 1;
    if (with_oracle) {
      auto opt = oracle_value(inst->inst, sol->doc.variant);
      if (opt) {
        r.oracle = opt->str();
        Rational value = sol->doc.cost ? *sol->doc.cost : sol->doc.clustering.radius;
        r.ratio = opt->is_zero() ? (value.is_zero() ? "1" : "inf") : (value / *opt).str();
      }
    }
    if (trace_text) {
      std::istringstream in(trace_text);
      std::string line;
      while (std::getline(in, line))
        if (line.find("event=recompute") != std::string::npos) ++r.recompute_steps;
    }
    *out_text = dup_string(format_report(r));
    return PC_OK;
  });
}

pc_status pc_factor_table(char** out_text, char* errbuf, size_t errlen) {
  if (!out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    *out_text = dup_string(factor_table_text());
    return PC_OK;
  });
}

pc_status pc_variants(char** out_text, char* errbuf, size_t errlen) {
  if (!out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    std::ostringstream out;
    for (const std::string& v : known_variants()) out << v << "\n";
    *out_text = dup_string(out.str());
    return PC_OK;
  });
}

pc_status pc_underlying_options(const char* variant, char** out_text, char* errbuf,
                                size_t errlen) {
  if (!variant || !out_text) {
    fill_err(errbuf, errlen, "null argument");
    return PC_ERR_INVALID_ARGUMENT;
  }
  return guarded(errbuf, errlen, [&] {
    std::ostringstream out;
    for (const std::string& v : underlying_options(variant)) out << v << "\n";
    *out_text = dup_string(out.str());
    return PC_OK;
  });
}

void pc_string_free(char* text) { std::free(text); }

}  // extern "C"
