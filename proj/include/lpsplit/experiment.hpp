#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "lpsplit/detail.hpp"
#include "lpsplit/program.hpp"
#include "lpsplit/split.hpp"

namespace lpsplit {

/// Head selection for generated rules. Each rule draws 3 distinct atoms; the
/// head is a uniformly chosen subset of them, the rest form the positive
/// body. kNonEmptySubsets draws from the 7 nonempty subsets; kAllSubsets also
/// admits the empty head (integrity rules).
enum class HeadPolicy {
  kNonEmptySubsets,
  kAllSubsets,
};

struct GenConfig {
  std::uint32_t num_vars = 20;
  double ratio = 4.25;  // rules = round(ratio * num_vars)
  std::uint64_t seed = 1;
  HeadPolicy head_policy = HeadPolicy::kNonEmptySubsets;
};

/// Random negation-free program: round(ratio * num_vars) rules, each over 3
/// distinct atoms drawn uniformly from x1..xN. Bit-reproducible from the
/// seed (std::mt19937_64 plus our own bounded draw). Duplicate rules are
/// allowed.
inline Program gen_random_program(const GenConfig& cfg) {
  if (cfg.num_vars < 3)
    throw std::invalid_argument("num_vars must be at least 3");
  if (!(cfg.ratio > 0.0))
    throw std::invalid_argument("ratio must be positive");

  Program p;
  for (std::uint32_t i = 1; i <= cfg.num_vars; ++i)
    p.symbols.intern("x" + std::to_string(i));

  const auto num_rules =
      static_cast<std::uint64_t>(std::llround(cfg.ratio * cfg.num_vars));
  std::mt19937_64 rng(cfg.seed);
  for (std::uint64_t r = 0; r < num_rules; ++r) {
    // three distinct indices by index shifting
    std::uint32_t a0 = static_cast<std::uint32_t>(detail::draw_below(rng, cfg.num_vars));
    std::uint32_t a1 = static_cast<std::uint32_t>(detail::draw_below(rng, cfg.num_vars - 1));
    if (a1 >= a0) ++a1;
    std::uint32_t lo = std::min(a0, a1), hi = std::max(a0, a1);
    std::uint32_t a2 = static_cast<std::uint32_t>(detail::draw_below(rng, cfg.num_vars - 2));
    if (a2 >= lo) ++a2;
    if (a2 >= hi) ++a2;
    const AtomId chosen[3] = {a0, a1, a2};

    std::uint64_t mask =
        cfg.head_policy == HeadPolicy::kNonEmptySubsets
            ? detail::draw_below(rng, 7) + 1
            : detail::draw_below(rng, 8);
    Rule rule;
    for (int i = 0; i < 3; ++i) {
      if (mask >> i & 1)
        rule.head.push_back(chosen[i]);
      else
        rule.body_pos.push_back(chosen[i]);
    }
    rule.head = make_atom_set(std::move(rule.head));
    rule.body_pos = make_atom_set(std::move(rule.body_pos));
    p.rules.push_back(std::move(rule));
  }
  return p;
}

struct SweepConfig {
  std::uint32_t num_vars = 20;
  double ratio_from = 2.0;
  double ratio_to = 6.0;
  double ratio_step = 0.25;
  std::uint32_t per_point = 100;
  std::uint64_t seed = 1;
  HeadPolicy head_policy = HeadPolicy::kNonEmptySubsets;
};

struct SweepPoint {
  double ratio;
  double mean_min_split;
  double median_min_split;
  std::uint32_t samples;
};

inline std::string csv_header() {
  return "ratio,mean_min_split,median_min_split,samples,num_vars,seed";
}

inline std::string csv_row(const SweepPoint& pt, std::uint32_t num_vars,
                           std::uint64_t seed) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.2f,%.4f,%.4f,%u,%u,%llu", pt.ratio,
                pt.mean_min_split, pt.median_min_split, pt.samples, num_vars,
                static_cast<unsigned long long>(seed));
  return buf;
}

/// Minimum nontrivial splitting-set size of one program.
inline std::uint32_t min_split_size(const Program& p) {
  auto found = min_splitting_set(p);
  if (!found)
    throw std::runtime_error("program has no rules; no nontrivial splitting set");
  return static_cast<std::uint32_t>(found->size());
}

/// Ratio sweep: per ratio point, generates per_point programs (seeded
/// independently via derive_seed(master, point, sample)), measures each
/// program's minimum nontrivial splitting-set size, and aggregates mean and
/// median. When csv is given, header and rows are emitted incrementally.
inline std::vector<SweepPoint> run_sweep(const SweepConfig& cfg,
                                         std::ostream* csv = nullptr) {
  if (cfg.ratio_from > cfg.ratio_to)
    throw std::invalid_argument("ratio_from must not exceed ratio_to");
  if (!(cfg.ratio_step > 0.0))
    throw std::invalid_argument("ratio_step must be positive");
  if (cfg.per_point == 0)
    throw std::invalid_argument("per_point must be positive");

  if (csv) *csv << csv_header() << '\n' << std::flush;
  std::vector<SweepPoint> points;
  const auto num_points = static_cast<std::uint32_t>(
      std::floor((cfg.ratio_to - cfg.ratio_from) / cfg.ratio_step + 1e-9)) + 1;
  for (std::uint32_t pi = 0; pi < num_points; ++pi) {
    const double ratio = cfg.ratio_from + pi * cfg.ratio_step;
    std::vector<std::uint32_t> sizes;
    sizes.reserve(cfg.per_point);
    for (std::uint32_t si = 0; si < cfg.per_point; ++si) {
      GenConfig gen{cfg.num_vars, ratio, detail::derive_seed(cfg.seed, pi, si),
                    cfg.head_policy};
      try {
        sizes.push_back(min_split_size(gen_random_program(gen)));
      } catch (const std::exception& e) {
        throw std::runtime_error("sweep point ratio=" + std::to_string(ratio) +
                                 " sample " + std::to_string(si) +
                                 " failed: " + e.what());
      }
    }
    double sum = 0;
    for (std::uint32_t v : sizes) sum += v;
    std::vector<std::uint32_t> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    double median =
        sorted.size() % 2 == 1
            ? sorted[sorted.size() / 2]
            : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2.0;
    SweepPoint pt{ratio, sum / sizes.size(), median,
                  static_cast<std::uint32_t>(sizes.size())};
    if (csv) *csv << csv_row(pt, cfg.num_vars, cfg.seed) << '\n' << std::flush;
    points.push_back(pt);
  }
  return points;
}

}  // namespace lpsplit
