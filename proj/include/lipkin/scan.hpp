#pragma once

// Parameter sweeps over (N, chi, method, subsystem, partition) written as CSV.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "lipkin/common.hpp"
#include "lipkin/discord.hpp"
#include "lipkin/gcm.hpp"
#include "lipkin/mean_field.hpp"
#include "lipkin/model.hpp"
#include "lipkin/rdm.hpp"

namespace lipkin {

enum class Method { exact, hf, phf, gcm };

inline constexpr std::array<Method, 4> kAllMethods{Method::exact, Method::hf, Method::phf, Method::gcm};

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::hf: return "hf";
    case Method::phf: return "phf";
    case Method::gcm: return "gcm";
  }
  return "?";
}

inline Method method_from_string(std::string_view s) {
  for (Method m : kAllMethods)
    if (to_string(m) == s) return m;
  throw InvalidArgument("unknown method '" + std::string(s) + "' (expected exact, hf, phf or gcm)");
}

/// Parses "a1,a2:b1[,b2]" with labels in {0,1,2,3}.
inline Partition parse_partition(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos || spec.find(':', colon + 1) != std::string_view::npos)
    throw InvalidArgument("partition '" + std::string(spec) + "': expected exactly one ':' separating A and B");

  unsigned seen = 0;
  auto side = [&](std::string_view text, const char* name) {
    if (text.empty()) throw InvalidArgument("partition '" + std::string(spec) + "': side " + name + " is empty");
    std::vector<int> labels;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      const std::string_view tok = text.substr(pos, comma - pos);
      if (tok.size() != 1 || tok[0] < '0' || tok[0] > '3')
        throw InvalidArgument("partition '" + std::string(spec) + "': bad mode label '" + std::string(tok) +
                              "' (expected 0-3)");
      const int m = tok[0] - '0';
      if (seen & (1u << m))
        throw InvalidArgument("partition '" + std::string(spec) + "': duplicate mode label '" + std::string(tok) + "'");
      seen |= 1u << m;
      labels.push_back(m);
      pos = comma + 1;
    }
    std::sort(labels.begin(), labels.end());
    return ModeSubset(std::move(labels));
  };
  ModeSubset a = side(spec.substr(0, colon), "A");
  ModeSubset b = side(spec.substr(colon + 1), "B");
  if (b.size() > 2) throw InvalidArgument("partition '" + std::string(spec) + "': B may hold at most two modes");
  return Partition(std::move(a), std::move(b));
}

struct ScanConfig {
  std::vector<int> n_list{4, 8, 20};
  double chi_min = 0.0;
  double chi_max = 6.0;
  int chi_steps = 61;  ///< number of grid points, chi_min and chi_max included
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::vector<Subsystem> subsystems{kAllSubsystems.begin(), kAllSubsystems.end()};
  std::vector<std::string> partitions{"1,3:0,2", "2,3:0,1", "1:0"};
  double epsilon = 1.0;
  OptimizerConfig optimizer;
  int threads = 1;
  bool record_timing = false;  ///< fill wall_ms; otherwise left empty so output is reproducible

  void validate() const {
    detail::require(!n_list.empty(), "ScanConfig: no particle numbers given");
    for (int n : n_list) detail::require(n >= 2, "ScanConfig: N must be >= 2, got " + std::to_string(n));
    detail::require(chi_min >= 0.0 && chi_min <= chi_max, "ScanConfig: need 0 <= chi_min <= chi_max");
    detail::require(chi_steps >= 1, "ScanConfig: chi_steps must be >= 1");
    detail::require(!methods.empty() && !subsystems.empty() && !partitions.empty(),
                    "ScanConfig: methods, subsystems and partitions must be nonempty");
    detail::require(epsilon > 0.0, "ScanConfig: epsilon must be > 0");
    detail::require(optimizer.restarts >= 1, "ScanConfig: restarts must be >= 1");
    detail::require(optimizer.tol > 0.0, "ScanConfig: tolerance must be > 0");
    for (const auto& p : partitions) (void)parse_partition(p);
  }

  [[nodiscard]] std::vector<double> chi_grid() const {
    std::vector<double> g;
    for (int i = 0; i < chi_steps; ++i)
      g.push_back(chi_steps == 1 ? chi_min : chi_min + (chi_max - chi_min) * i / (chi_steps - 1));
    return g;
  }
};

// Partition labels contain commas, so that column is always double-quoted.
inline constexpr std::string_view kCsvHeader =
    "N,chi,method,subsystem,partition,energy,S_A,S_B,S_AB,mutual_info,classical_J,discord,restarts_used,"
    "stationarity_residual,converged,h11,h22,re_h12,im_h12,re_d12,im_d12,wall_ms";

/// Ground state of one method, reduced to the RDM-relevant data.
struct MethodState {
  double energy = 0.0;
  std::optional<PQState> amplitudes;  ///< absent for HF (closed-form RDM)
  HfOrbital orbital;
};

inline MethodState solve_method(Method m, const ModelParams& params) {
  MethodState out;
  switch (m) {
    case Method::exact: {
      auto gs = exact_ground_state(params);
      out.energy = gs.energy;
      out.amplitudes = std::move(gs.state);
      break;
    }
    case Method::hf: {
      out.orbital = hf_orbital(params.chi());
      out.energy = energy_expectation(hf_amplitudes(params), params);
      break;
    }
    case Method::phf: {
      PQState s = phf_project(hf_amplitudes(params));
      out.energy = energy_expectation(s, params);
      out.amplitudes = std::move(s);
      break;
    }
    case Method::gcm: {
      auto sol = gcm::hill_wheeler(gcm::GcmConfig::from_params(params));
      out.energy = sol.energy;
      out.amplitudes = std::move(sol.state);
      break;
    }
  }
  return out;
}

inline NineStateDensity method_rdm(const MethodState& st, Subsystem sub) {
  return st.amplitudes ? rdm_from_pq(*st.amplitudes, sub) : rdm_from_hf(st.orbital, sub);
}

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct ScanSummary {
  std::size_t rows = 0;
  std::size_t failed_points = 0;
  std::size_t unconverged = 0;
  double max_discord = 0.0;
  double min_discord = 0.0;
};

/// Runs the sweep and writes header plus one row per grid point, in the order
/// N, chi, method, subsystem, partition as listed in cfg. Output is
/// independent of thread count and scheduling.
inline ScanSummary run_scan(const ScanConfig& cfg, std::ostream& csv) {
  cfg.validate();
  std::vector<Partition> parts;
  for (const auto& p : cfg.partitions) parts.push_back(parse_partition(p));
  const auto chis = cfg.chi_grid();

  struct Task {
    int n;
    double chi;
    Method method;
  };
  std::vector<Task> tasks;
  for (int n : cfg.n_list)
    for (double chi : chis)
      for (Method m : cfg.methods) tasks.push_back({n, chi, m});

  const std::size_t per_task = cfg.subsystems.size() * parts.size();
  std::vector<std::string> rows(tasks.size() * per_task);
  std::vector<ScanSummary> partial(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      ScanSummary& sum = partial[t];
      const ModelParams params = ModelParams::from_chi(task.n, task.chi, cfg.epsilon);
      std::optional<MethodState> st;
      std::string failure;
      try {
        st = solve_method(task.method, params);
      } catch (const std::exception& e) {
        failure = e.what();
      }
      std::size_t slot = t * per_task;
      for (Subsystem sub : cfg.subsystems) {
        std::optional<fock::FockDensity> rho;
        if (st) rho = embed_to_fock(method_rdm(*st, sub));
        for (std::size_t pi = 0; pi < parts.size(); ++pi, ++slot) {
          const auto t0 = std::chrono::steady_clock::now();
          CorrelationReport rep;
          bool ok = rho.has_value();
          if (ok) {
            try {
              rep = quantum_discord(*rho, parts[pi], cfg.optimizer);
            } catch (const std::exception&) {
              ok = false;
            }
          }
          const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          const double nan = std::numeric_limits<double>::quiet_NaN();
          if (!ok) {
            rep = CorrelationReport{};
            rep.s_a = rep.s_b = rep.s_ab = rep.mutual_info = rep.classical_j = rep.discord = nan;
            rep.stationarity_residual = nan;
            rep.converged = false;
            ++sum.failed_points;
          }
          if (ok && !rep.converged) ++sum.unconverged;
          if (ok) {
            sum.max_discord = std::max(sum.max_discord, rep.discord);
            sum.min_discord = std::min(sum.min_discord, rep.discord);
          }
          const auto x = rep.best_params.to_array();
          std::ostringstream row;
          row << task.n << ',' << format_double(task.chi) << ',' << to_string(task.method) << ',' << to_string(sub)
              << ",\"" << parts[pi].to_string() << "\"," << format_double(st ? st->energy : nan) << ','
              << format_double(rep.s_a) << ',' << format_double(rep.s_b) << ',' << format_double(rep.s_ab) << ','
              << format_double(rep.mutual_info) << ',' << format_double(rep.classical_j) << ','
              << format_double(rep.discord) << ',' << rep.restarts_used << ','
              << format_double(rep.stationarity_residual) << ',' << (rep.converged ? "true" : "false");
          for (double v : x) row << ',' << format_double(v);
          row << ',' << (cfg.record_timing ? format_double(ms) : "");
          rows[slot] = row.str();
          ++sum.rows;
        }
      }
    }
  };

  const int nthreads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  csv << kCsvHeader << '\n';
  for (const auto& r : rows) csv << r << '\n';

  ScanSummary total;
  for (const auto& s : partial) {
    total.rows += s.rows;
    total.failed_points += s.failed_points;
    total.unconverged += s.unconverged;
    total.max_discord = std::max(total.max_discord, s.max_discord);
    total.min_discord = std::min(total.min_discord, s.min_discord);
  }
  return total;
}

}  // namespace lipkin
