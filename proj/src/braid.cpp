#include "burau/braid.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace burau {

namespace {

// Moves generators from the front of b to the back of a until L(b) is
// contained in R(a). The braid product lift(a) lift(b) is unchanged.
bool left_weight(Permutation& a, Permutation& b) {
  bool changed = false;
  while (true) {
    const DescentMask movable = b.left_descent_mask() & ~a.right_descent_mask();
    if (movable == 0) return changed;
    const int i = std::countr_zero(movable) + 1;
    a = a.times_simple(i);
    b = b.simple_times(i);
    changed = true;
  }
}

bool is_left_weighted(const std::vector<Permutation>& factors) {
  for (std::size_t k = 1; k < factors.size(); ++k) {
    if (!descents_contain(factors[k - 1].right_descent_mask(), factors[k].left_descent_mask())) return false;
  }
  return true;
}

// Accumulates Delta^inf * factors, keeping factors left-weighted.
class NormalFormBuilder {
 public:
  explicit NormalFormBuilder(int n) : n_(n), w0_(longest_element(n)) {}

  void append(const Permutation& x) {
    if (x.is_identity()) return;
    factors_.push_back(x);
    for (std::size_t j = factors_.size() - 1; j > 0; --j) {
      if (!left_weight(factors_[j - 1], factors_[j])) break;
    }
    if (!is_left_weighted(factors_)) {
      // Full sweeps; not expected to trigger.
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t j = 1; j < factors_.size(); ++j) changed |= left_weight(factors_[j - 1], factors_[j]);
      }
    }
    tidy();
  }

  // Right multiplication by Delta^-1: x Delta^-1 = Delta^-1 flip(x).
  void append_inverse_delta() {
    --inf_;
    for (auto& f : factors_) f = flip(f);
  }

  Braid finish() const { return Braid::from_normal_form(n_, inf_, factors_); }

 private:
  void tidy() {
    std::size_t lead = 0;
    while (lead < factors_.size() && factors_[lead] == w0_) ++lead;
    if (lead > 0) {
      inf_ += static_cast<int>(lead);
      factors_.erase(factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(lead));
    }
    while (!factors_.empty() && factors_.back().is_identity()) factors_.pop_back();
  }

  int n_;
  Permutation w0_;
  int inf_ = 0;
  std::vector<Permutation> factors_;
};

}  // namespace

ArtinWord::ArtinWord(int n, std::vector<int> letters) : n_(n), letters_(std::move(letters)) {
  if (n < 2 || n > kMaxStrands) throw std::invalid_argument("strand count out of range");
  for (int letter : letters_) {
    if (letter == 0 || std::abs(letter) >= n) {
      throw std::invalid_argument("Artin letter " + std::to_string(letter) + " out of range for B_" +
                                  std::to_string(n));
    }
  }
}

ArtinWord ArtinWord::operator+(const ArtinWord& tail) const {
  if (tail.n_ != n_) throw std::invalid_argument("concatenating words of different strand counts");
  std::vector<int> letters = letters_;
  letters.insert(letters.end(), tail.letters_.begin(), tail.letters_.end());
  return ArtinWord(n_, std::move(letters));
}

ArtinWord ArtinWord::inverse() const {
  std::vector<int> letters(letters_.rbegin(), letters_.rend());
  for (int& letter : letters) letter = -letter;
  return ArtinWord(n_, std::move(letters));
}

Braid::Braid(int n) : n_(n) {
  if (n < 2 || n > kMaxStrands) throw std::invalid_argument("strand count out of range");
}

Braid::Braid(int n, int inf, std::vector<Permutation> factors) : n_(n), inf_(inf), factors_(std::move(factors)) {}

Braid Braid::from_normal_form(int n, int inf, std::vector<Permutation> factors) {
  if (n < 2 || n > kMaxStrands) throw std::invalid_argument("strand count out of range");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& f = factors[k];
    if (f.size() != n) throw std::invalid_argument("factor has wrong strand count");
    if (f.is_identity()) throw std::invalid_argument("identity factor in normal form");
    if (f.is_longest()) throw std::invalid_argument("longest element as a factor in normal form");
    if (k > 0 && !can_follow(factors[k - 1], f)) {
      throw std::invalid_argument("factors " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                  " violate the descent condition");
    }
  }
  return Braid(n, inf, std::move(factors));
}

long Braid::exponent_sum() const {
  long sum = static_cast<long>(inf_) * n_ * (n_ - 1) / 2;
  for (const auto& f : factors_) sum += f.length();
  return sum;
}

Braid Braid::with_suffix(const Permutation& u) const {
  if (u.size() != n_) throw std::invalid_argument("suffix has wrong strand count");
  const bool ok = factors_.empty() ? !u.is_identity() && !u.is_longest() : can_follow(factors_.back(), u);
  if (!ok) throw std::invalid_argument("not a Garside suffix");
  std::vector<Permutation> factors = factors_;
  factors.push_back(u);
  return Braid(n_, inf_, std::move(factors));
}

Braid Braid::with_inf(int inf) const { return Braid(n_, inf, factors_); }

bool can_follow(const Permutation& last, const Permutation& u) {
  return !u.is_identity() && descents_contain(last.right_descent_mask(), u.left_descent_mask());
}

Braid gnf_from_artin(const ArtinWord& word) {
  const int n = word.strands();
  const Permutation w0 = longest_element(n);
  NormalFormBuilder builder(n);
  for (int letter : word.letters()) {
    if (letter > 0) {
      builder.append(Permutation::simple(n, letter));
    } else {
      // sigma_i^-1 = Delta^-1 * lift(w0 s_i)
      builder.append_inverse_delta();
      builder.append(w0.times_simple(-letter));
    }
  }
  return builder.finish();
}

std::vector<Permutation> garside_suffixes(const Braid& b) {
  const auto& group = SymmetricGroup::of(b.strands());
  std::vector<Permutation> out;
  if (b.factors().empty()) {
    for (const auto& u : group.elements()) {
      if (!u.is_identity() && !u.is_longest()) out.push_back(u);
    }
    return out;
  }
  const DescentMask allowed = b.factors().back().right_descent_mask();
  for (std::size_t k = 0; k < group.order(); ++k) {
    const auto& u = group.elements()[k];
    if (!u.is_identity() && descents_contain(allowed, group.left_mask(k))) out.push_back(u);
  }
  return out;
}

std::vector<Braid> garside_prefixes(const Braid& b) {
  std::vector<Braid> out;
  out.reserve(b.factors().size());
  Braid current = Braid::from_normal_form(b.strands(), b.inf(), {});
  for (const auto& f : b.factors()) {
    current = current.with_suffix(f);
    out.push_back(current);
  }
  return out;
}

ArtinWord artin_word(const Braid& b) {
  const int n = b.strands();
  const std::vector<int> delta_word = longest_element(n).reduced_word();
  std::vector<int> letters;
  if (b.inf() > 0) {
    for (int k = 0; k < b.inf(); ++k) letters.insert(letters.end(), delta_word.begin(), delta_word.end());
  } else {
    for (int k = 0; k < -b.inf(); ++k) {
      for (auto it = delta_word.rbegin(); it != delta_word.rend(); ++it) letters.push_back(-*it);
    }
  }
  for (const auto& f : b.factors()) {
    const auto w = f.reduced_word();
    letters.insert(letters.end(), w.begin(), w.end());
  }
  return ArtinWord(n, std::move(letters));
}

}  // namespace burau
