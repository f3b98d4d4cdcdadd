#include "burau/laurent.hpp"

namespace burau {

ModPoly poly_mod_reduce(const ZPoly& p, std::int64_t m) {
  const ModularRing ring(m);
  std::vector<ModPoly::Term> terms;
  for (const auto& [e, c] : p.terms()) {
    const unsigned long r = mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(m));
    terms.emplace_back(e, static_cast<ModularRing::Element>(r));
  }
  return ModPoly::from_terms(ring, terms);
}

ModMatrix mat_mod_reduce(const ZMatrix& a, std::int64_t m) {
  if (m < 2) throw std::invalid_argument("mat_mod_reduce needs m >= 2");
  ModMatrix out(ModularRing(m), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out.set(i, j, poly_mod_reduce(a(i, j), m));
  }
  return out;
}

}  // namespace burau
