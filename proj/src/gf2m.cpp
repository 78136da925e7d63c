#include "repeatcode/gf2m.hpp"

#include <algorithm>
#include <stdexcept>

namespace repeatcode {

std::uint32_t GF2m::default_poly(int q) {
  switch (q) {
    case 2: return 0x7;    // x^2+x+1
    case 3: return 0xB;    // x^3+x+1
    case 4: return 0x13;   // x^4+x+1
    case 5: return 0x25;   // x^5+x^2+1
    case 6: return 0x43;   // x^6+x+1
    case 7: return 0x89;   // x^7+x^3+1
    case 8: return 0x11D;  // x^8+x^4+x^3+x^2+1
    default: throw std::invalid_argument("GF2m: q must be in [2, 8]");
  }
}

GF2m::GF2m(int q, std::uint32_t poly) : q_(q) {
  if (q < 2 || q > 8) throw std::invalid_argument("GF2m: q must be in [2, 8]");
  size_ = 1 << q;
  poly_ = poly == 0 ? default_poly(q) : poly;
  if ((poly_ >> q) != 1u)
    throw std::invalid_argument("GF2m: modulus must have degree exactly q");

  // Generate powers of x. The polynomial is primitive iff x has
  // multiplicative order 2^q - 1: the walk must visit every nonzero element
  // exactly once before returning to 1. Irreducible-but-imprimitive moduli
  // return to 1 early; reducible ones hit 0 or repeat. Both are rejected.
  exp_.assign(2 * (size_ - 1), 0);
  log_.assign(size_, -1);
  std::uint32_t v = 1;
  for (int i = 0; i < size_ - 1; ++i) {
    if (v == 0 || log_[v] != -1)
      throw std::invalid_argument("GF2m: modulus is not primitive");
    exp_[i] = static_cast<int>(v);
    log_[v] = i;
    v <<= 1;
    if (v & (1u << q)) v ^= poly_;
  }
  v = static_cast<std::uint32_t>(exp_[size_ - 2]) << 1;
  if (v & (1u << q)) v ^= poly_;
  if (v != 1u) throw std::invalid_argument("GF2m: modulus is not primitive");
  for (int i = 0; i < size_ - 1; ++i) exp_[size_ - 1 + i] = exp_[i];
}

int GF2m::inv(int a) const {
  if (a == 0) throw std::domain_error("GF2m: inverse of zero");
  return exp_[order() - log_[a]];
}

int GF2m::pow(int a, int e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw std::domain_error("GF2m: negative power of zero");
    return 0;
  }
  long long m = static_cast<long long>(log_[a]) * e % order();
  if (m < 0) m += order();
  return exp_[m];
}

int GF2m::log(int a) const {
  if (a == 0) throw std::domain_error("GF2m: log of zero");
  return log_[a];
}

GfPoly gf_poly_add(const GF2m& f, const GfPoly& a, const GfPoly& b) {
  (void)f;
  GfPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] ^= a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] ^= b[i];
  gf_poly_trim(out);
  return out;
}

GfPoly gf_poly_mul(const GF2m& f, const GfPoly& a, const GfPoly& b) {
  if (a.empty() || b.empty()) return {};
  GfPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] ^= f.mul(a[i], b[j]);
  }
  gf_poly_trim(out);
  return out;
}

GfPoly gf_poly_mod(const GF2m& f, const GfPoly& a, const GfPoly& b) {
  GfPoly r = a;
  gf_poly_trim(r);
  GfPoly d = b;
  gf_poly_trim(d);
  if (d.empty()) throw std::domain_error("gf_poly_mod: division by zero polynomial");
  const int lead_inv = f.inv(d.back());
  while (r.size() >= d.size()) {
    const int coef = f.mul(r.back(), lead_inv);
    const std::size_t shift = r.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i)
      r[shift + i] ^= f.mul(coef, d[i]);
    gf_poly_trim(r);
    if (r.empty()) break;
  }
  return r;
}

int gf_poly_eval(const GF2m& f, const GfPoly& a, int x) {
  int acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

GfPoly gf_poly_deriv(const GF2m& f, const GfPoly& a) {
  (void)f;
  if (a.size() <= 1) return {};
  GfPoly out(a.size() - 1, 0);
  for (std::size_t i = 1; i < a.size(); i += 2) out[i - 1] = a[i];
  gf_poly_trim(out);
  return out;
}

void gf_poly_trim(GfPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace repeatcode
