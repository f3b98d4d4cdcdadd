#include "burau/search.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <string>
#include <thread>

namespace burau {

namespace {

template <class Ring>
LaurentMatrix<Ring> times_lift(const LaurentMatrix<Ring>& m, const BurauContext<Ring>& ctx, const Permutation& u) {
  if (ctx.has_lift_cache()) return m * ctx.cached_lift(u);
  return m * ctx.positive_lift(u);
}

// Calls work(worker, workers) on `threads` threads and rethrows the first failure.
template <class Work>
void run_parallel(Work&& work, unsigned threads) {
  if (threads <= 1) {
    work(0, 1);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t, threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  try {
    work(0, threads);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::size_t> braid_key(const Braid& b) {
  std::vector<std::size_t> key;
  key.reserve(b.factors().size() + 1);
  key.push_back(static_cast<std::size_t>(static_cast<long>(b.inf()) + (1L << 30)));
  for (const auto& f : b.factors()) key.push_back(f.rank());
  return key;
}

// Folds one completed level into the report and looks for kernel elements
// among its projlen-0 items. Returns the level summary.
template <class Ring>
LevelSummary scan_level(const Level<Ring>& level, int ell, const BurauContext<Ring>& ctx, SearchReport& report) {
  LevelSummary summary;
  summary.level = ell;
  for (const auto& [m, bucket] : level) {
    report.bucket_stats[{ell, m}] += bucket.seen();
    if (bucket.empty()) continue;
    ++summary.buckets;
    summary.items += bucket.size();
    if (!summary.min_projlen) summary.min_projlen = m;
  }
  if (summary.min_projlen) {
    auto [it, inserted] = report.min_projlen_per_level.try_emplace(ell, *summary.min_projlen);
    if (!inserted) it->second = std::min(it->second, *summary.min_projlen);
  }
  const auto zero = level.find(0);
  if (zero == level.end()) return summary;
  for (const auto& item : zero->second.items()) {
    const auto d = ctx.positive_kernel_candidate(item.braid, item.matrix);
    if (!d) {
      ++report.projective_hits[ell];
      continue;
    }
    FoundKernel found{item.braid.with_inf(-*d), ell};
    const bool known = std::any_of(report.found.begin(), report.found.end(),
                                   [&](const FoundKernel& f) { return f.braid == found.braid; });
    if (!known) {
      report.found.push_back(std::move(found));
      ++summary.kernels_found;
    }
  }
  return summary;
}

template <class Ring>
SearchReport run_levels(const SearchConfig& config, const BurauContext<Ring>& ctx, int levels, bool forced_mode,
                        const SearchHooks& hooks, std::vector<ForcedPrefixStat>* forced_stats) {
  Rng rng(config.seed);
  SearchReport report;
  report.seed = config.seed;
  Level<Ring> level = initial_level(ctx, config.capacity);
  const Braid* target = forced_mode && config.forced_target ? &*config.forced_target : nullptr;
  std::optional<BucketItem<Ring>> forced;

  for (int ell = 1; ell <= levels; ++ell) {
    const BucketItem<Ring>* forced_now = nullptr;
    if (target && ell <= target->garside_length()) {
      const Permutation& factor = target->factors()[static_cast<std::size_t>(ell - 1)];
      if (forced) {
        forced = BucketItem<Ring>{forced->braid.with_suffix(factor), times_lift(forced->matrix, ctx, factor)};
      } else {
        forced = BucketItem<Ring>{Braid(ctx.strands()).with_suffix(factor), times_lift(ctx.identity(), ctx, factor)};
      }
      forced_now = &*forced;
    }

    level = search_step(std::move(level), ctx, config.capacity, rng, config.threads, forced_now);
    const LevelSummary summary = scan_level(level, ell, ctx, report);
    report.levels_completed = ell;

    if (forced_now && forced_stats) {
      const int m = forced_now->matrix.projlen();
      forced_stats->push_back({ell, m, level.at(m).seen()});
    }
    if (hooks.on_level) hooks.on_level(summary);
    if (config.stop_on_kernel && !forced_stats && !report.found.empty()) break;
  }
  return report;
}

template <class Ring>
McResult mc_run(const SearchConfig& config, const McConfig& mc, const BurauContext<Ring>& ctx,
                const SearchHooks& hooks) {
  Rng rng(config.seed);
  McResult result;
  result.report.seed = config.seed;
  std::set<std::vector<std::size_t>> known;
  result.database.push_back({Braid(ctx.strands()), 1.0, false});
  known.insert(braid_key(result.database.front().braid));

  for (int round = 0; round < mc.rounds; ++round) {
    double total = 0.0;
    for (const auto& node : result.database) {
      if (!node.expanded) total += node.score * node.score;
    }
    if (total <= 0.0) break;

    std::size_t chosen = result.database.size();
    double x = rng.uniform01() * total;
    for (std::size_t i = 0; i < result.database.size(); ++i) {
      if (result.database[i].expanded) continue;
      chosen = i;
      x -= result.database[i].score * result.database[i].score;
      if (x < 0.0) break;
    }
    result.database[chosen].expanded = true;
    const Braid parent = result.database[chosen].braid;
    const auto parent_matrix = ctx.of_positive_part(parent);

    LevelSummary round_summary;
    round_summary.level = round + 1;
    for (const auto& u : garside_suffixes(parent)) {
      Braid child = parent.with_suffix(u);
      auto child_matrix = times_lift(parent_matrix, ctx, u);
      const int child_level = child.garside_length();

      Level<Ring> level;
      auto& start = level.try_emplace(child_matrix.projlen(), config.capacity).first->second;
      reservoir_offer(start, BucketItem<Ring>{child, std::move(child_matrix)}, rng);
      bool hit_zero = level.begin()->first == 0;
      round_summary.kernels_found += scan_level(level, child_level, ctx, result.report).kernels_found;

      for (int j = 1; j <= mc.rollout_length; ++j) {
        level = search_step(std::move(level), ctx, config.capacity, rng, config.threads);
        const auto s = scan_level(level, child_level + j, ctx, result.report);
        round_summary.kernels_found += s.kernels_found;
        hit_zero = hit_zero || (s.min_projlen && *s.min_projlen == 0);
      }
      const int final_min = level.empty() ? 0 : level.begin()->first;
      const double score = mc_score(mc.rollout_length, hit_zero ? 0 : final_min);

      auto key = braid_key(child);
      if (known.insert(key).second) {
        result.database.push_back({std::move(child), score, false});
      } else {
        for (auto& node : result.database) {
          if (node.braid == child) node.score = std::max(node.score, score);
        }
      }
    }
    result.report.levels_completed = round + 1;
    round_summary.items = result.database.size();
    if (hooks.on_level) hooks.on_level(round_summary);
    if (config.stop_on_kernel && !result.report.found.empty()) break;
  }
  return result;
}

}  // namespace

void SearchConfig::validate() const {
  if (n < 3 || n > 8) throw std::invalid_argument("search needs 3 <= n <= 8");
  validate_modulus(modulus);
  if (capacity < 1) throw std::invalid_argument("capacity must be at least 1");
  if (max_level < 1) throw std::invalid_argument("max_level must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (forced_target && forced_target->strands() != n) {
    throw std::invalid_argument("forced target has " + std::to_string(forced_target->strands()) +
                                " strands, search has " + std::to_string(n));
  }
}

template <class Ring>
Level<Ring> initial_level(const BurauContext<Ring>& ctx, std::size_t capacity) {
  Level<Ring> level;
  level.try_emplace(0, capacity).first->second.place(0, BucketItem<Ring>{Braid(ctx.strands()), ctx.identity()});
  return level;
}

template <class Ring>
Level<Ring> search_step(Level<Ring> previous, const BurauContext<Ring>& ctx, std::size_t capacity, Rng& rng,
                        unsigned threads, const BucketItem<Ring>* forced) {
  struct Candidate {
    Permutation u;
    LaurentMatrix<Ring> matrix;
    int projlen;
  };
  // Products are computed in parallel in fixed-size chunks; offers are made
  // serially in source order, so the RNG stream is independent of threads.
  constexpr std::size_t kChunk = 256;

  std::vector<std::optional<BucketItem<Ring>>> sources;
  for (auto& [m, bucket] : previous) {
    for (auto& item : bucket.take_items()) sources.emplace_back(std::move(item));
  }
  previous.clear();

  Level<Ring> next;
  std::vector<std::vector<Candidate>> expanded;
  for (std::size_t begin = 0; begin < sources.size(); begin += kChunk) {
    const std::size_t end = std::min(sources.size(), begin + kChunk);
    expanded.assign(end - begin, {});
    run_parallel(
        [&](std::size_t worker, std::size_t workers) {
          for (std::size_t s = begin + worker; s < end; s += workers) {
            auto& out = expanded[s - begin];
            for (const auto& u : garside_suffixes(sources[s]->braid)) {
              auto matrix = times_lift(sources[s]->matrix, ctx, u);
              const int p = matrix.projlen();
              out.push_back(Candidate{u, std::move(matrix), p});
            }
          }
        },
        threads);
    for (std::size_t s = begin; s < end; ++s) {
      for (auto& c : expanded[s - begin]) {
        auto& bucket = next.try_emplace(c.projlen, capacity).first->second;
        if (const auto slot = bucket.claim(rng)) {
          bucket.place(*slot, BucketItem<Ring>{sources[s]->braid.with_suffix(c.u), std::move(c.matrix)});
        }
      }
      sources[s].reset();
    }
  }

  if (forced) {
    auto& bucket = next.try_emplace(forced->matrix.projlen(), capacity).first->second;
    const bool present = std::any_of(bucket.items().begin(), bucket.items().end(),
                                     [&](const BucketItem<Ring>& item) { return item.braid == forced->braid; });
    if (!present) bucket.force(*forced, rng);
  }
  return next;
}

SearchReport run_search(const SearchConfig& config, const SearchHooks& hooks) {
  config.validate();
  if (config.modulus == 0) {
    const BurauContext<IntegerRing> ctx(config.n, IntegerRing{});
    return run_levels(config, ctx, config.max_level, true, hooks, nullptr);
  }
  const BurauContext<ModularRing> ctx(config.n, ModularRing(config.modulus));
  return run_levels(config, ctx, config.max_level, true, hooks, nullptr);
}

template <class Ring>
std::vector<TrajectoryPoint> trajectory(const Braid& b, const BurauContext<Ring>& ctx) {
  std::vector<TrajectoryPoint> out;
  auto m = ctx.identity();
  int k = 0;
  for (const auto& f : b.factors()) {
    m = times_lift(m, ctx, f);
    out.push_back({++k, m.projlen()});
  }
  return out;
}

std::vector<TrajectoryPoint> trajectory(const Braid& b, std::int64_t modulus) {
  validate_modulus(modulus);
  if (modulus == 0) return trajectory(b, BurauContext<IntegerRing>(b.strands(), IntegerRing{}));
  return trajectory(b, BurauContext<ModularRing>(b.strands(), ModularRing(modulus)));
}

Braid random_braid_walk(int length, int n, Rng& rng) {
  if (length < 1) throw std::invalid_argument("random walk length must be at least 1");
  Braid b(n);
  for (int k = 0; k < length; ++k) {
    const auto suffixes = garside_suffixes(b);
    b = b.with_suffix(suffixes[static_cast<std::size_t>(rng.uniform_index(suffixes.size()))]);
  }
  return b;
}

namespace {

template <class Ring>
std::vector<ScatterPoint> scatter_with(const ScatterConfig& config, const BurauContext<Ring>& ctx) {
  Rng rng(config.seed);
  std::vector<ScatterPoint> out;
  out.reserve(static_cast<std::size_t>(config.max_length) * static_cast<std::size_t>(config.per_length));
  for (int ell = 1; ell <= config.max_length; ++ell) {
    for (int j = 0; j < config.per_length; ++j) {
      const Braid b = random_braid_walk(ell, config.n, rng);
      auto m = ctx.identity();
      for (const auto& f : b.factors()) m = times_lift(m, ctx, f);
      out.push_back({ell, m.projlen()});
    }
  }
  return out;
}

}  // namespace

std::vector<ScatterPoint> sample_scatter(const ScatterConfig& config) {
  validate_modulus(config.modulus);
  if (config.max_length < 1 || config.per_length < 0) throw std::invalid_argument("invalid scatter sizes");
  if (config.modulus == 0) return scatter_with(config, BurauContext<IntegerRing>(config.n, IntegerRing{}));
  return scatter_with(config, BurauContext<ModularRing>(config.n, ModularRing(config.modulus)));
}

ForcedRunResult forced_run(const SearchConfig& config) {
  config.validate();
  if (!config.forced_target) throw std::invalid_argument("forced run needs a target braid");
  const int levels = config.forced_target->garside_length();
  ForcedRunResult result;
  if (levels == 0) return result;
  if (config.modulus == 0) {
    const BurauContext<IntegerRing> ctx(config.n, IntegerRing{});
    result.report = run_levels(config, ctx, levels, true, {}, &result.prefixes);
  } else {
    const BurauContext<ModularRing> ctx(config.n, ModularRing(config.modulus));
    result.report = run_levels(config, ctx, levels, true, {}, &result.prefixes);
  }
  return result;
}

double discovery_probability(std::span<const std::uint64_t> counts, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("bucket capacity must be at least 1");
  double p = 1.0;
  for (const std::uint64_t r : counts) p *= static_cast<double>(k) / static_cast<double>(std::max(r, k));
  return p;
}

double mc_score(int levels_gained, int min_projlen) {
  return (1.0 + levels_gained) / (1.0 + min_projlen);
}

McResult mc_search(const SearchConfig& config, const McConfig& mc, const SearchHooks& hooks) {
  config.validate();
  if (mc.rollout_length < 1) throw std::invalid_argument("rollout length must be at least 1");
  if (mc.rounds < 0) throw std::invalid_argument("rounds must be non-negative");
  if (config.modulus == 0) return mc_run(config, mc, BurauContext<IntegerRing>(config.n, IntegerRing{}), hooks);
  return mc_run(config, mc, BurauContext<ModularRing>(config.n, ModularRing(config.modulus)), hooks);
}

template <class Ring>
CoefficientPattern coefficient_pattern(const LaurentMatrix<Ring>& m, int slices) {
  if (slices < 0) throw std::invalid_argument("slice count must be non-negative");
  CoefficientPattern out;
  out.projlen = m.projlen();
  const int base = m.val();
  const std::size_t r = m.size();
  auto slice = [&](int i) {
    CoefficientPattern::Slice s(r, std::vector<int>(r, 0));
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) s[a][b] = m.ring().is_zero(m(a, b).coefficient(base + i)) ? 0 : 1;
    }
    return s;
  };
  for (int i = 0; i <= std::min(slices, out.projlen); ++i) out.head.push_back(slice(i));
  for (int i = std::max(0, out.projlen - slices + 1); i <= out.projlen && slices > 0; ++i) out.tail.push_back(slice(i));
  return out;
}

template Level<IntegerRing> initial_level(const BurauContext<IntegerRing>&, std::size_t);
template Level<ModularRing> initial_level(const BurauContext<ModularRing>&, std::size_t);
template Level<IntegerRing> search_step(Level<IntegerRing>, const BurauContext<IntegerRing>&, std::size_t, Rng&,
                                        unsigned, const BucketItem<IntegerRing>*);
template Level<ModularRing> search_step(Level<ModularRing>, const BurauContext<ModularRing>&, std::size_t, Rng&,
                                        unsigned, const BucketItem<ModularRing>*);
template std::vector<TrajectoryPoint> trajectory(const Braid&, const BurauContext<IntegerRing>&);
template std::vector<TrajectoryPoint> trajectory(const Braid&, const BurauContext<ModularRing>&);
template CoefficientPattern coefficient_pattern(const LaurentMatrix<IntegerRing>&, int);
template CoefficientPattern coefficient_pattern(const LaurentMatrix<ModularRing>&, int);

}  // namespace burau
