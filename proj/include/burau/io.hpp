#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "burau/braid.hpp"
#include "burau/laurent.hpp"
#include "burau/search.hpp"

namespace burau {

using json = nlohmann::ordered_json;

/// Thrown for malformed input files and documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);

/// Comma- or whitespace-separated signed generator indices; blank lines and
/// '#' comments are ignored.
ArtinWord parse_artin_word(std::string_view text, int n);

/// {"n": 4, "inf": -27, "factors": [[1,3], ...]}, factors as canonical
/// reduced words with 1-based indices.
json braid_to_json(const Braid& b);
/// Accepts any reduced word per factor; validates the normal form.
Braid braid_from_json(const json& j);

/// A file holding either braid JSON (first non-blank character '{') or an
/// Artin word, which is normalised. `n` is used for words and checked
/// against JSON documents.
Braid read_braid_file(const std::filesystem::path& path, int n);
bool looks_like_json(std::string_view text);

/// Printed normal form listing: an "inf d" line, then one factor per line
/// written as generator names such as "s0 s2". `index_base` is the label of
/// the first generator (0 for s0,s1,...).
Braid parse_printed_gnf(std::string_view text, int n, int index_base);

/// {"m": 5, "size": 3, "entries": [[[[exp, coeff], ...], ...], ...]}.
/// Integral coefficients that do not fit in 64 bits are written as decimal strings.
template <class Ring>
json matrix_to_json(const LaurentMatrix<Ring>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.size(); ++k) {
      json terms = json::array();
      for (const auto& [e, c] : m(i, k).terms()) {
        const auto small = m.ring().to_int64(c);
        terms.push_back(small ? json::array({e, *small}) : json::array({e, m.ring().to_string(c)}));
      }
      row.push_back(std::move(terms));
    }
    rows.push_back(std::move(row));
  }
  return json{{"m", m.ring().modulus()}, {"size", m.size()}, {"entries", std::move(rows)}};
}

ZMatrix z_matrix_from_json(const json& j);
ModMatrix mod_matrix_from_json(const json& j);

/// {"n":4, "modulus":5, "capacity":1000, "max_level":80, "seed":12345,
///  "stop_on_kernel":true, "forced_target":"path/or/null"}. Missing keys
/// keep their defaults; a relative forced_target resolves against base_dir.
SearchConfig config_from_json(const json& j, const std::filesystem::path& base_dir);

void write_min_projlen_csv(std::ostream& out, const SearchReport& report);
void write_bucket_stats_csv(std::ostream& out, const SearchReport& report);
void write_kernels_jsonl(std::ostream& out, const SearchReport& report);
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points);
void write_forced_csv(std::ostream& out, std::span<const ForcedPrefixStat> stats, std::uint64_t k);
void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points);

json pattern_to_json(const CoefficientPattern& pattern);

}  // namespace burau
