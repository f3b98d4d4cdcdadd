#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "burau/braid.hpp"
#include "burau/laurent.hpp"

namespace burau {

/// Closed form of the half-twist image: (-1)^(n+1) times the antidiagonal v^n.
template <class Ring>
LaurentMatrix<Ring> delta_closed_form(int n, const Ring& ring) {
  const std::size_t r = static_cast<std::size_t>(n - 1);
  LaurentMatrix<Ring> m(ring, r);
  const std::int64_t sign = (n % 2 == 1) ? 1 : -1;
  for (std::size_t i = 0; i < r; ++i) m.set(i, r - 1 - i, LaurentPoly<Ring>::term(ring, sign, n));
  return m;
}

/// The reduced Burau representation of B_n over `Ring`.
///
/// Generator images, their inverses and Delta^{+-1} are built once. For
/// n <= 6 the positive lifts of all of S_n are cached as well.
template <class Ring>
class BurauContext {
 public:
  using Matrix = LaurentMatrix<Ring>;
  using Poly = LaurentPoly<Ring>;

  BurauContext(int n, Ring ring) : n_(n), ring_(std::move(ring)) {
    if (n < 3 || n > kMaxStrands) throw std::invalid_argument("Burau context needs 3 <= n <= 32");
    for (int i = 1; i < n; ++i) {
      generators_.push_back(make_generator(i, 1));
      inverses_.push_back(make_generator(i, -1));
    }
    delta_ = delta_closed_form(n, ring_);
    // Delta^-1 = (-1)^(n+1) v^-n J, since J^2 = I.
    const std::size_t r = dim();
    Matrix inv(ring_, r);
    const std::int64_t sign = (n % 2 == 1) ? 1 : -1;
    for (std::size_t i = 0; i < r; ++i) inv.set(i, r - 1 - i, Poly::term(ring_, sign, -n));
    delta_inverse_ = std::move(inv);
    if (n <= 6) {
      for (const auto& w : SymmetricGroup::of(n).elements()) lifts_.push_back(product_of_word(w.reduced_word()));
    }
  }

  int strands() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_ - 1); }
  const Ring& ring() const { return ring_; }

  const Matrix& generator(int i) const { return generators_.at(checked_index(i)); }
  const Matrix& generator_inverse(int i) const { return inverses_.at(checked_index(i)); }
  const Matrix& delta() const { return *delta_; }
  const Matrix& delta_inverse() const { return *delta_inverse_; }
  Matrix identity() const { return Matrix::identity(ring_, dim()); }

  /// Delta^d for any sign of d, from the closed form Delta^2 = v^(2n) I.
  Matrix delta_power(int d) const {
    const int half = d >= 0 ? d / 2 : -((-d + 1) / 2);  // floor(d / 2)
    const bool odd = (d - 2 * half) == 1;
    Matrix m = odd ? delta() : identity();
    return m.shifted(2 * n_ * half);
  }

  /// Product of generator images along the canonical reduced word of w.
  Matrix positive_lift(const Permutation& w) const {
    if (w.size() != n_) throw std::invalid_argument("permutation has wrong strand count");
    if (!lifts_.empty()) return lifts_[w.rank()];
    return product_of_word(w.reduced_word());
  }

  /// Cached lift by reference; only valid when n <= 6.
  const Matrix& cached_lift(const Permutation& w) const { return lifts_.at(w.rank()); }
  bool has_lift_cache() const { return !lifts_.empty(); }

  Matrix of_word(const ArtinWord& word) const {
    check_strands(word.strands());
    Matrix m = identity();
    for (int letter : word.letters()) m = m * (letter > 0 ? generator(letter) : generator_inverse(-letter));
    return m;
  }

  /// Burau matrix of the positive factors only (Delta^inf dropped).
  Matrix of_positive_part(const Braid& b) const {
    check_strands(b.strands());
    Matrix m = identity();
    for (const auto& f : b.factors()) m = m * lift_ref_or_value(f);
    return m;
  }

  Matrix of_braid(const Braid& b) const { return delta_power(b.inf()) * of_positive_part(b); }

  /// True iff the braid's matrix is exactly the identity.
  bool kernel_check(const Braid& b) const { return of_braid(b).is_identity(); }

  /// For a braid with inf 0: the d with matrix == Delta^d, meaning
  /// Delta^-d * b lies in the kernel. The exponent sum pins d because every
  /// generator has determinant -v^2.
  std::optional<int> positive_kernel_candidate(const Braid& b) const {
    if (b.inf() != 0) throw std::invalid_argument("kernel candidate check expects inf 0");
    return positive_kernel_candidate(b, of_positive_part(b));
  }

  /// As above, with the braid's matrix already at hand.
  std::optional<int> positive_kernel_candidate(const Braid& b, const Matrix& matrix) const {
    const long sum = b.exponent_sum();
    const long w0_length = static_cast<long>(n_) * (n_ - 1) / 2;
    if (sum % w0_length != 0) return std::nullopt;
    const int d = static_cast<int>(sum / w0_length);
    if (matrix.projlen() != 0 || !(matrix == delta_power(d))) return std::nullopt;
    return d;
  }

 private:
  std::size_t checked_index(int i) const {
    if (i < 1 || i >= n_) throw std::invalid_argument("generator index out of range");
    return static_cast<std::size_t>(i - 1);
  }

  void check_strands(int n) const {
    if (n != n_) throw std::invalid_argument("strand count mismatch with Burau context");
  }

  Matrix lift_ref_or_value(const Permutation& w) const {
    return lifts_.empty() ? product_of_word(w.reduced_word()) : lifts_[w.rank()];
  }

  // Identity except row i: -v^e at i-1, -v^(2e) at i, -v^e at i+1 (e = +-1).
  Matrix make_generator(int i, int e) const {
    Matrix m = identity();
    const std::size_t row = static_cast<std::size_t>(i - 1);
    m.set(row, row, Poly::term(ring_, -1, 2 * e));
    if (row > 0) m.set(row, row - 1, Poly::term(ring_, -1, e));
    if (row + 1 < dim()) m.set(row, row + 1, Poly::term(ring_, -1, e));
    return m;
  }

  Matrix product_of_word(const std::vector<int>& word) const {
    Matrix m = identity();
    for (int i : word) m = m * generator(i);
    return m;
  }

  int n_;
  Ring ring_;
  std::vector<Matrix> generators_;
  std::vector<Matrix> inverses_;
  std::optional<Matrix> delta_;
  std::optional<Matrix> delta_inverse_;
  std::vector<Matrix> lifts_;  // indexed by Permutation::rank()
};

}  // namespace burau
