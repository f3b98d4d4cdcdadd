#pragma once

#include <span>
#include <vector>

#include "burau/permutation.hpp"

namespace burau {

/// A signed word in the Artin generators: +i is sigma_i, -i its inverse.
class ArtinWord {
 public:
  /// Throws std::invalid_argument if a letter is 0 or |letter| >= n.
  ArtinWord(int n, std::vector<int> letters);

  int strands() const { return n_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  ArtinWord operator+(const ArtinWord& tail) const;
  ArtinWord inverse() const;

  bool operator==(const ArtinWord&) const = default;

 private:
  int n_;
  std::vector<int> letters_;
};

/// A braid in Garside normal form: Delta^inf * lift(w_1) * ... * lift(w_l).
///
/// Factors are never the identity or the longest element, and consecutive
/// factors satisfy R(w_k) >= L(w_{k+1}).
class Braid {
 public:
  /// The trivial braid of B_n.
  explicit Braid(int n);

  /// Validates the normal form invariants; throws std::invalid_argument.
  static Braid from_normal_form(int n, int inf, std::vector<Permutation> factors);

  int strands() const { return n_; }
  int inf() const { return inf_; }
  const std::vector<Permutation>& factors() const { return factors_; }
  int garside_length() const { return static_cast<int>(factors_.size()); }
  bool is_trivial() const { return inf_ == 0 && factors_.empty(); }

  /// inf * length(w0) + sum of factor lengths.
  long exponent_sum() const;

  /// Concatenates a Garside suffix; throws if the result would not be normal.
  Braid with_suffix(const Permutation& u) const;
  Braid with_inf(int inf) const;
  /// The same factors with inf 0.
  Braid positive_part() const { return with_inf(0); }

  bool operator==(const Braid&) const = default;

 private:
  Braid(int n, int inf, std::vector<Permutation> factors);

  int n_;
  int inf_ = 0;
  std::vector<Permutation> factors_;
};

/// True iff u can follow `last` in a normal form (u != e and L(u) within R(last)).
bool can_follow(const Permutation& last, const Permutation& u);

/// Normal form of the braid the word represents.
Braid gnf_from_artin(const ArtinWord& word);

/// Every u whose lift can be appended to b while keeping it normal, in
/// lexicographic order. Requires b.strands() <= 8.
std::vector<Permutation> garside_suffixes(const Braid& b);

/// Delta^inf w_1 ... w_k for k = 1..l.
std::vector<Braid> garside_prefixes(const Braid& b);

/// Delta-block (inverted when inf < 0) followed by reduced words of the factors.
ArtinWord artin_word(const Braid& b);

}  // namespace burau
