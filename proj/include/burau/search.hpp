#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "burau/braid.hpp"
#include "burau/laurent.hpp"
#include "burau/representation.hpp"
#include "burau/rng.hpp"

namespace burau {

/// A capacity-k reservoir (Vitter's Algorithm R) with a count of all offers.
template <class T>
class Bucket {
 public:
  explicit Bucket(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("bucket capacity must be at least 1");
  }

  std::size_t capacity() const { return capacity_; }
  std::uint64_t seen() const { return seen_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<T>& items() const { return items_; }
  /// Moves the items out, leaving the bucket empty; seen() is unchanged.
  std::vector<T> take_items() { return std::exchange(items_, {}); }

  /// Records one offer. Returns the slot the offered item should occupy
  /// (size() means append), or nullopt if it is discarded.
  std::optional<std::size_t> claim(Rng& rng) {
    ++seen_;
    if (items_.size() < capacity_) return items_.size();
    const std::uint64_t j = rng.uniform_index(seen_);
    if (j < capacity_) return static_cast<std::size_t>(j);
    return std::nullopt;
  }

  void place(std::size_t slot, T item) {
    if (slot == items_.size()) {
      items_.push_back(std::move(item));
    } else {
      items_.at(slot) = std::move(item);
    }
  }

  /// Inserts without counting an offer, evicting a uniform slot when full.
  void force(T item, Rng& rng) {
    if (items_.size() < capacity_) {
      items_.push_back(std::move(item));
    } else {
      items_[static_cast<std::size_t>(rng.uniform_index(capacity_))] = std::move(item);
    }
  }

 private:
  std::size_t capacity_;
  std::uint64_t seen_ = 0;
  std::vector<T> items_;
};

/// Offers `item` to the bucket; true if it was kept.
template <class T>
bool reservoir_offer(Bucket<T>& bucket, T item, Rng& rng) {
  const auto slot = bucket.claim(rng);
  if (!slot) return false;
  bucket.place(*slot, std::move(item));
  return true;
}

template <class Ring>
struct BucketItem {
  Braid braid;
  LaurentMatrix<Ring> matrix;  // image of the positive part of braid
};

/// Buckets of one Garside length, keyed by projlen.
template <class Ring>
using Level = std::map<int, Bucket<BucketItem<Ring>>>;

struct SearchConfig {
  int n = 4;
  std::int64_t modulus = 5;  // 0 means the integers
  std::size_t capacity = 1000;
  int max_level = 80;
  std::uint64_t seed = 0;
  bool stop_on_kernel = false;
  std::optional<Braid> forced_target;
  unsigned threads = 1;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct FoundKernel {
  Braid braid;  // Delta^-d * sigma with sigma the bucket item
  int level;

  bool operator==(const FoundKernel&) const = default;
};

struct SearchReport {
  std::uint64_t seed = 0;
  int levels_completed = 0;
  std::vector<FoundKernel> found;
  std::map<int, int> min_projlen_per_level;
  std::map<std::pair<int, int>, std::uint64_t> bucket_stats;  // (level, projlen) -> offers seen
  std::map<int, std::uint64_t> projective_hits;               // projlen-0 items that are not kernel elements

  bool operator==(const SearchReport&) const = default;
};

struct LevelSummary {
  int level = 0;
  std::size_t buckets = 0;
  std::size_t items = 0;
  std::optional<int> min_projlen;
  std::size_t kernels_found = 0;
};

struct SearchHooks {
  std::function<void(const LevelSummary&)> on_level;
};

/// Level 0: the trivial braid alone in bucket (0, 0).
template <class Ring>
Level<Ring> initial_level(const BurauContext<Ring>& ctx, std::size_t capacity);

/// One sweep: every Garside suffix of every item of `previous` is offered to
/// the bucket of its projlen. With `forced`, that item is inserted after the
/// sweep unless already present. Results do not depend on `threads`.
/// `previous` is consumed: its items are released as they are expanded.
template <class Ring>
Level<Ring> search_step(Level<Ring> previous, const BurauContext<Ring>& ctx, std::size_t capacity, Rng& rng,
                        unsigned threads = 1, const BucketItem<Ring>* forced = nullptr);

/// Level-by-level bucket search from the trivial braid.
SearchReport run_search(const SearchConfig& config, const SearchHooks& hooks = {});

struct TrajectoryPoint {
  int garside_length;
  int projlen;

  bool operator==(const TrajectoryPoint&) const = default;
};

/// projlen of the positive part of every Garside prefix of b.
template <class Ring>
std::vector<TrajectoryPoint> trajectory(const Braid& b, const BurauContext<Ring>& ctx);
std::vector<TrajectoryPoint> trajectory(const Braid& b, std::int64_t modulus);

/// A braid of Garside length `length` (inf 0), each factor drawn uniformly
/// from the valid Garside suffixes.
Braid random_braid_walk(int length, int n, Rng& rng);

struct ScatterConfig {
  int n = 4;
  int max_length = 50;
  int per_length = 1000;
  std::int64_t modulus = 0;
  std::uint64_t seed = 0;
};

struct ScatterPoint {
  int garside_length;
  int projlen;
};

/// per_length random walks for each Garside length 1..max_length.
std::vector<ScatterPoint> sample_scatter(const ScatterConfig& config);

struct ForcedPrefixStat {
  int index;        // i, the Garside length of beta_i
  int projlen;      // bucket coordinate of beta_i
  std::uint64_t r;  // offers seen by that bucket
};

struct ForcedRunResult {
  std::vector<ForcedPrefixStat> prefixes;
  SearchReport report;
};

/// Runs the search for l_G(target) levels, injecting the target's positive
/// prefixes, and reports the offer count of each prefix's bucket.
ForcedRunResult forced_run(const SearchConfig& config);

/// prod_i k / max(r_i, k).
double discovery_probability(std::span<const std::uint64_t> counts, std::uint64_t k);

struct McConfig {
  int rollout_length = 5;
  int rounds = 10;
};

struct ScoredNode {
  Braid braid;
  double score;
  bool expanded = false;
};

struct McResult {
  SearchReport report;
  std::vector<ScoredNode> database;
};

/// (1 + levels gained) / (1 + lowest projlen seen).
double mc_score(int levels_gained, int min_projlen);

/// Monte-Carlo search over a database of scored nodes.
McResult mc_search(const SearchConfig& config, const McConfig& mc, const SearchHooks& hooks = {});

/// Zero-one patterns of the coefficient slices of a matrix normalised to
/// exponents 0..projlen: slices 0..k and projlen-k+1..projlen.
struct CoefficientPattern {
  using Slice = std::vector<std::vector<int>>;
  int projlen = 0;
  std::vector<Slice> head;
  std::vector<Slice> tail;
};

template <class Ring>
CoefficientPattern coefficient_pattern(const LaurentMatrix<Ring>& m, int slices);

}  // namespace burau
