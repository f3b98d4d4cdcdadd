#include "burau/permutation.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace burau {

namespace {

void check_strands(int n) {
  if (n < 1 || n > kMaxStrands) {
    throw std::invalid_argument("strand count out of range: " + std::to_string(n));
  }
}

}  // namespace

Permutation::Permutation(int n) : n_(n) {
  check_strands(n);
  for (int i = 0; i < n; ++i) images_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  Permutation p(n);
  std::array<bool, kMaxStrands> used{};
  for (int i = 0; i < n; ++i) {
    const int v = images[static_cast<std::size_t>(i)];
    if (v < 1 || v > n || used[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("not a permutation of 1..n");
    }
    used[static_cast<std::size_t>(v - 1)] = true;
    p.images_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

Permutation Permutation::from_images(std::initializer_list<int> images) {
  return from_images(std::span<const int>(images.begin(), images.size()));
}

Permutation Permutation::simple(int n, int i) { return Permutation(n).times_simple(i); }

Permutation Permutation::from_word(int n, std::span<const int> word) {
  Permutation p(n);
  for (int i : word) p = p.times_simple(i);
  return p;
}

Permutation Permutation::from_word(int n, std::initializer_list<int> word) {
  return from_word(n, std::span<const int>(word.begin(), word.size()));
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = images_[static_cast<std::size_t>(i)] + 1;
  return out;
}

Permutation Permutation::inverse() const {
  Permutation p(n_);
  for (int i = 0; i < n_; ++i) p.images_[images_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  return p;
}

int Permutation::length() const {
  int inversions = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (images_[static_cast<std::size_t>(i)] > images_[static_cast<std::size_t>(j)]) ++inversions;
    }
  }
  return inversions;
}

bool Permutation::is_identity() const { return *this == Permutation(n_); }

bool Permutation::is_longest() const {
  for (int i = 0; i < n_; ++i) {
    if (images_[static_cast<std::size_t>(i)] != n_ - 1 - i) return false;
  }
  return true;
}

DescentMask Permutation::right_descent_mask() const {
  DescentMask mask = 0;
  for (int i = 0; i + 1 < n_; ++i) {
    if (images_[static_cast<std::size_t>(i)] > images_[static_cast<std::size_t>(i + 1)]) mask |= DescentMask{1} << i;
  }
  return mask;
}

DescentMask Permutation::left_descent_mask() const { return inverse().right_descent_mask(); }

std::vector<int> Permutation::right_descents() const { return mask_to_indices(right_descent_mask()); }
std::vector<int> Permutation::left_descents() const { return mask_to_indices(left_descent_mask()); }

Permutation Permutation::times_simple(int i) const {
  if (i < 1 || i >= n_) throw std::invalid_argument("generator index out of range");
  Permutation p = *this;
  std::swap(p.images_[static_cast<std::size_t>(i - 1)], p.images_[static_cast<std::size_t>(i)]);
  return p;
}

Permutation Permutation::simple_times(int i) const {
  if (i < 1 || i >= n_) throw std::invalid_argument("generator index out of range");
  Permutation p = *this;
  for (int k = 0; k < n_; ++k) {
    auto& v = p.images_[static_cast<std::size_t>(k)];
    if (v == i - 1) {
      v = static_cast<std::uint8_t>(i);
    } else if (v == i) {
      v = static_cast<std::uint8_t>(i - 1);
    }
  }
  return p;
}

std::vector<int> Permutation::reduced_word() const {
  std::vector<int> word;
  Permutation rest = *this;
  while (true) {
    const DescentMask left = rest.left_descent_mask();
    if (left == 0) break;
    const int i = std::countr_zero(left) + 1;
    word.push_back(i);
    rest = rest.simple_times(i);
  }
  return word;
}

std::size_t Permutation::rank() const {
  // Lehmer code read in the factorial number system.
  std::size_t r = 0;
  for (int i = 0; i < n_; ++i) {
    std::size_t smaller = 0;
    for (int j = i + 1; j < n_; ++j) {
      if (images_[static_cast<std::size_t>(j)] < images_[static_cast<std::size_t>(i)]) ++smaller;
    }
    r = r * static_cast<std::size_t>(n_ - i) + smaller;
  }
  return r;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: mismatched strand counts");
  std::vector<int> out(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= a.size(); ++i) out[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation::from_images(out);
}

Permutation longest_element(int n) {
  if (n < 2) throw std::invalid_argument("longest_element needs n >= 2");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = n - i;
  return Permutation::from_images(images);
}

Permutation flip(const Permutation& w) {
  const int n = w.size();
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) out[static_cast<std::size_t>(i - 1)] = n + 1 - w(n + 1 - i);
  return Permutation::from_images(out);
}

std::vector<int> mask_to_indices(DescentMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i + 1);
  }
  return out;
}

SymmetricGroup::SymmetricGroup(int n) : n_(n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i + 1;
  do {
    elements_.push_back(Permutation::from_images(images));
    left_masks_.push_back(elements_.back().left_descent_mask());
    right_masks_.push_back(elements_.back().right_descent_mask());
  } while (std::next_permutation(images.begin(), images.end()));
}

const SymmetricGroup& SymmetricGroup::of(int n) {
  if (n < 2 || n > 8) throw std::invalid_argument("SymmetricGroup supports 2 <= n <= 8");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<SymmetricGroup>> groups;
  std::lock_guard lock(mutex);
  auto& slot = groups[n];
  if (!slot) slot.reset(new SymmetricGroup(n));
  return *slot;
}

}  // namespace burau
