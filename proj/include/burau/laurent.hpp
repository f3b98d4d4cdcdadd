#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace burau {

/// Runtime description of a coefficient ring: 0 for Z, m >= 2 for Z/m.
struct CoeffRing {
  std::int64_t modulus = 0;

  bool is_integers() const { return modulus == 0; }
  bool operator==(const CoeffRing&) const = default;
};

/// Throws std::invalid_argument unless modulus is 0 or in [2, 2^31).
void validate_modulus(std::int64_t modulus);

/// The integers, with arbitrary-precision coefficients.
class IntegerRing {
 public:
  using Element = mpz_class;

  std::int64_t modulus() const { return 0; }
  CoeffRing descriptor() const { return {0}; }
  Element zero() const { return Element(0); }
  Element from_int(std::int64_t x) const { return Element(static_cast<long>(x)); }
  Element parse(const std::string& decimal) const { return Element(decimal, 10); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  void mul_add(Element& acc, const Element& a, const Element& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  std::optional<std::int64_t> to_int64(const Element& a) const {
    if (!a.fits_slong_p()) return std::nullopt;
    return static_cast<std::int64_t>(a.get_si());
  }
  std::string to_string(const Element& a) const { return a.get_str(); }

  bool operator==(const IntegerRing&) const { return true; }
};

/// Z/m for 2 <= m < 2^31; elements are kept in [0, m) as 32-bit values.
class ModularRing {
 public:
  using Element = std::uint32_t;

  explicit ModularRing(std::int64_t m) : m_(m) {
    if (m < 2) throw std::invalid_argument("modulus must be at least 2");
    validate_modulus(m);
  }

  std::int64_t modulus() const { return m_; }
  CoeffRing descriptor() const { return {m_}; }
  Element zero() const { return 0; }
  Element from_int(std::int64_t x) const {
    x %= m_;
    return static_cast<Element>(x < 0 ? x + m_ : x);
  }
  Element parse(const std::string& decimal) const { return from_int(std::stoll(decimal)); }
  bool is_zero(Element a) const { return a == 0; }
  Element add(Element a, Element b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= m() ? s - m() : s);
  }
  Element neg(Element a) const { return a == 0 ? 0 : static_cast<Element>(m() - a); }
  Element mul(Element a, Element b) const { return static_cast<Element>(std::uint64_t{a} * b % m()); }
  void mul_add(Element& acc, Element a, Element b) const {
    acc = static_cast<Element>((std::uint64_t{acc} + std::uint64_t{a} * b) % m());
  }
  std::optional<std::int64_t> to_int64(Element a) const { return std::int64_t{a}; }
  std::string to_string(Element a) const { return std::to_string(a); }

  bool operator==(const ModularRing&) const = default;

 private:
  std::uint64_t m() const { return static_cast<std::uint64_t>(m_); }

  std::int64_t m_;
};

inline void validate_modulus(std::int64_t modulus) {
  if (modulus == 1 || modulus < 0 || modulus >= (std::int64_t{1} << 31)) {
    throw std::invalid_argument("modulus must be 0 (integers) or in [2, 2^31): " + std::to_string(modulus));
  }
}

template <class Ring>
class LaurentMatrix;

/// A Laurent polynomial in v over `Ring`.
///
/// Stored as a dense band of coefficients starting at exponent `low_`; the
/// band is trimmed so both ends are nonzero, and the zero polynomial is the
/// empty band.
template <class Ring>
class LaurentPoly {
 public:
  using Element = typename Ring::Element;
  using Term = std::pair<int, Element>;

  explicit LaurentPoly(Ring ring) : ring_(std::move(ring)) {}

  static LaurentPoly monomial(const Ring& ring, const Element& coeff, int exponent) {
    LaurentPoly p(ring);
    p.low_ = exponent;
    p.coeffs_.push_back(coeff);
    p.normalize();
    return p;
  }
  /// coeff * v^exponent with an integer coefficient mapped into the ring.
  static LaurentPoly term(const Ring& ring, std::int64_t coeff, int exponent) {
    return monomial(ring, ring.from_int(coeff), exponent);
  }
  static LaurentPoly constant(const Ring& ring, std::int64_t c) { return term(ring, c, 0); }

  /// Repeated exponents are summed.
  static LaurentPoly from_terms(const Ring& ring, std::span<const Term> terms) {
    LaurentPoly p(ring);
    if (terms.empty()) return p;
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const auto& [e, c] : terms) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    p.low_ = lo;
    p.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), ring.zero());
    for (const auto& [e, c] : terms) {
      auto& slot = p.coeffs_[static_cast<std::size_t>(e - lo)];
      slot = ring.add(slot, c);
    }
    p.normalize();
    return p;
  }

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t band_width() const { return coeffs_.size(); }

  int val() const {
    if (is_zero()) throw std::domain_error("val of the zero polynomial");
    return low_;
  }
  int deg() const {
    if (is_zero()) throw std::domain_error("deg of the zero polynomial");
    return low_ + static_cast<int>(coeffs_.size()) - 1;
  }

  Element coefficient(int exponent) const {
    if (is_zero() || exponent < low_ || exponent > deg()) return ring_.zero();
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
  }

  /// Nonzero terms in increasing exponent order.
  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (!ring_.is_zero(coeffs_[k])) out.emplace_back(low_ + static_cast<int>(k), coeffs_[k]);
    }
    return out;
  }

  /// Multiplication by v^t.
  LaurentPoly shifted(int t) const {
    LaurentPoly p = *this;
    if (!p.is_zero()) p.low_ += t;
    return p;
  }

  LaurentPoly scaled(const Element& c) const {
    LaurentPoly p = *this;
    for (auto& x : p.coeffs_) x = ring_.mul(x, c);
    p.normalize();
    return p;
  }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_) c = ring_.neg(c);
    return p;
  }

  LaurentPoly operator+(const LaurentPoly& q) const {
    check_ring(q);
    if (is_zero()) return q;
    if (q.is_zero()) return *this;
    const int lo = std::min(low_, q.low_);
    const int hi = std::max(deg(), q.deg());
    LaurentPoly r(ring_);
    r.low_ = lo;
    r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), ring_.zero());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      auto& slot = r.coeffs_[static_cast<std::size_t>(low_ - lo) + k];
      slot = ring_.add(slot, coeffs_[k]);
    }
    for (std::size_t k = 0; k < q.coeffs_.size(); ++k) {
      auto& slot = r.coeffs_[static_cast<std::size_t>(q.low_ - lo) + k];
      slot = ring_.add(slot, q.coeffs_[k]);
    }
    r.normalize();
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& q) const { return *this + (-q); }

  LaurentPoly operator*(const LaurentPoly& q) const {
    check_ring(q);
    LaurentPoly r(ring_);
    if (is_zero() || q.is_zero()) return r;
    r.low_ = low_ + q.low_;
    r.coeffs_.assign(coeffs_.size() + q.coeffs_.size() - 1, ring_.zero());
    r.accumulate_product(*this, q);
    r.normalize();
    return r;
  }

  bool operator==(const LaurentPoly& q) const {
    return ring_ == q.ring_ && low_ == q.low_ && coeffs_ == q.coeffs_;
  }

 private:
  friend class LaurentMatrix<Ring>;

  void check_ring(const LaurentPoly& q) const {
    if (!(ring_ == q.ring_)) throw std::invalid_argument("Laurent polynomial ring mismatch");
  }

  // Adds a*b into this band; the band must already cover the product.
  void accumulate_product(const LaurentPoly& a, const LaurentPoly& b) {
    const std::size_t offset = static_cast<std::size_t>(a.low_ + b.low_ - low_);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (ring_.is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        ring_.mul_add(coeffs_[offset + i + j], a.coeffs_[i], b.coeffs_[j]);
      }
    }
  }

  void normalize() {
    std::size_t first = 0;
    while (first < coeffs_.size() && ring_.is_zero(coeffs_[first])) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (ring_.is_zero(coeffs_[last - 1])) --last;
    if (first > 0 || last < coeffs_.size()) {
      coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
      low_ += static_cast<int>(first);
    }
  }

  Ring ring_;
  int low_ = 0;
  std::vector<Element> coeffs_;
};

/// Human-readable form such as "-v^2 - v + 1".
template <class Ring>
std::string to_string(const LaurentPoly<Ring>& p) {
  const auto terms = p.terms();
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::string c = p.ring().to_string(it->second);
    const bool negative = !c.empty() && c.front() == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const int e = it->first;
    if (e == 0) {
      out << c;
      continue;
    }
    if (c != "1") out << c;
    out << 'v';
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

/// A square matrix of Laurent polynomials over `Ring`.
template <class Ring>
class LaurentMatrix {
 public:
  using Poly = LaurentPoly<Ring>;
  using Element = typename Ring::Element;

  /// The zero matrix.
  LaurentMatrix(Ring ring, std::size_t size) : ring_(std::move(ring)), size_(size), entries_(size * size, Poly(ring_)) {}

  static LaurentMatrix identity(const Ring& ring, std::size_t size) {
    LaurentMatrix m(ring, size);
    for (std::size_t i = 0; i < size; ++i) m.at(i, i) = Poly::constant(ring, 1);
    return m;
  }

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return size_; }

  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  Poly& at(std::size_t i, std::size_t j) {
    if (i >= size_ || j >= size_) throw std::out_of_range("matrix index");
    return entries_[i * size_ + j];
  }
  void set(std::size_t i, std::size_t j, Poly p) {
    if (!(p.ring() == ring_)) throw std::invalid_argument("matrix entry ring mismatch");
    at(i, j) = std::move(p);
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  /// Highest exponent over all entries; throws std::domain_error on the zero matrix.
  int deg() const {
    std::optional<int> best;
    for (const auto& p : entries_) {
      if (!p.is_zero()) best = best ? std::max(*best, p.deg()) : p.deg();
    }
    if (!best) throw std::domain_error("deg of the zero matrix");
    return *best;
  }

  int val() const {
    std::optional<int> best;
    for (const auto& p : entries_) {
      if (!p.is_zero()) best = best ? std::min(*best, p.val()) : p.val();
    }
    if (!best) throw std::domain_error("val of the zero matrix");
    return *best;
  }

  int projlen() const {
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const auto& p : entries_) {
      if (p.is_zero()) continue;
      lo = std::min(lo, p.low_);
      hi = std::max(hi, p.low_ + static_cast<int>(p.coeffs_.size()) - 1);
    }
    if (lo > hi) throw std::domain_error("projlen of the zero matrix");
    return hi - lo;
  }

  bool is_identity() const { return *this == identity(ring_, size_); }

  LaurentMatrix shifted(int t) const {
    LaurentMatrix m = *this;
    for (auto& p : m.entries_) p = p.shifted(t);
    return m;
  }

  LaurentMatrix scaled(const Element& c) const {
    LaurentMatrix m = *this;
    for (auto& p : m.entries_) p = p.scaled(c);
    return m;
  }

  LaurentMatrix operator*(const LaurentMatrix& b) const {
    if (!(ring_ == b.ring_)) throw std::invalid_argument("matrix ring mismatch");
    if (size_ != b.size_) throw std::invalid_argument("matrix size mismatch");
    LaurentMatrix r(ring_, size_);
    for (std::size_t i = 0; i < size_; ++i) {
      for (std::size_t j = 0; j < size_; ++j) {
        int lo = std::numeric_limits<int>::max();
        int hi = std::numeric_limits<int>::min();
        for (std::size_t k = 0; k < size_; ++k) {
          const Poly& x = (*this)(i, k);
          const Poly& y = b(k, j);
          if (x.is_zero() || y.is_zero()) continue;
          lo = std::min(lo, x.low_ + y.low_);
          hi = std::max(hi, x.low_ + y.low_ + static_cast<int>(x.coeffs_.size() + y.coeffs_.size()) - 2);
        }
        if (lo > hi) continue;
        Poly& out = r.entries_[i * size_ + j];
        out.low_ = lo;
        out.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), ring_.zero());
        for (std::size_t k = 0; k < size_; ++k) {
          const Poly& x = (*this)(i, k);
          const Poly& y = b(k, j);
          if (x.is_zero() || y.is_zero()) continue;
          out.accumulate_product(x, y);
        }
        out.normalize();
      }
    }
    return r;
  }

  bool operator==(const LaurentMatrix& b) const {
    return ring_ == b.ring_ && size_ == b.size_ && entries_ == b.entries_;
  }

 private:
  Ring ring_;
  std::size_t size_;
  std::vector<Poly> entries_;  // row-major
};

using ZPoly = LaurentPoly<IntegerRing>;
using ModPoly = LaurentPoly<ModularRing>;
using ZMatrix = LaurentMatrix<IntegerRing>;
using ModMatrix = LaurentMatrix<ModularRing>;

template <class Ring>
LaurentMatrix<Ring> mat_mul(const LaurentMatrix<Ring>& a, const LaurentMatrix<Ring>& b) {
  return a * b;
}

ModPoly poly_mod_reduce(const ZPoly& p, std::int64_t m);

/// Entrywise reduction of an integral matrix modulo m >= 2.
ModMatrix mat_mod_reduce(const ZMatrix& a, std::int64_t m);

}  // namespace burau
