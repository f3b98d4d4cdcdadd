#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace burau {

/// Largest strand count supported by the fixed-size permutation storage.
inline constexpr int kMaxStrands = 32;

/// Bit i-1 set means generator s_i belongs to the set.
using DescentMask = std::uint32_t;

/// An element of S_n in one-line notation, values 1..n.
///
/// Permutations act on positions: (a * b)(i) = a(b(i)). With this convention
/// i is a right descent of w iff w(i) > w(i+1), and a left descent iff the
/// value i+1 sits to the left of the value i.
class Permutation {
 public:
  /// Identity of S_n.
  explicit Permutation(int n);

  /// Validates that `images` is a bijection of {1..n}.
  static Permutation from_images(std::span<const int> images);
  static Permutation from_images(std::initializer_list<int> images);
  /// The simple transposition s_i, 1 <= i < n.
  static Permutation simple(int n, int i);
  /// Product s_{i1} s_{i2} ... of simple transpositions.
  static Permutation from_word(int n, std::span<const int> word);
  static Permutation from_word(int n, std::initializer_list<int> word);

  int size() const { return n_; }
  /// Image of 1-based position i.
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)] + 1; }
  std::vector<int> images() const;

  Permutation inverse() const;
  /// Number of inversions.
  int length() const;
  bool is_identity() const;
  bool is_longest() const;

  DescentMask right_descent_mask() const;
  DescentMask left_descent_mask() const;
  std::vector<int> right_descents() const;
  std::vector<int> left_descents() const;

  /// this * s_i: swaps positions i and i+1.
  Permutation times_simple(int i) const;
  /// s_i * this: swaps values i and i+1.
  Permutation simple_times(int i) const;

  /// Lexicographically smallest reduced expression, 1-based generator indices.
  std::vector<int> reduced_word() const;

  /// Position in the lexicographic order of one-line notations, 0..n!-1.
  std::size_t rank() const;

  bool operator==(const Permutation& other) const = default;
  auto operator<=>(const Permutation& other) const = default;

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxStrands> images_{};  // 0-based values; unused tail is zero
};

/// (a * b)(i) = a(b(i)). Throws std::invalid_argument on mismatched n.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

/// [n, n-1, ..., 1]; throws std::invalid_argument for n < 2.
Permutation longest_element(int n);

/// w0 * w * w0, the conjugation induced by the half twist.
Permutation flip(const Permutation& w);

inline bool descents_contain(DescentMask outer, DescentMask inner) { return (inner & ~outer) == 0; }

std::vector<int> mask_to_indices(DescentMask mask);

/// All elements of S_n in lexicographic order, with cached descent masks.
/// Instances are built once per n and shared; n is limited to 2..8.
class SymmetricGroup {
 public:
  static const SymmetricGroup& of(int n);

  int strands() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  DescentMask left_mask(std::size_t index) const { return left_masks_[index]; }
  DescentMask right_mask(std::size_t index) const { return right_masks_[index]; }

 private:
  explicit SymmetricGroup(int n);

  int n_;
  std::vector<Permutation> elements_;
  std::vector<DescentMask> left_masks_;
  std::vector<DescentMask> right_masks_;
};

}  // namespace burau
