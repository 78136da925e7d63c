#pragma once

#include <cstdint>
#include <vector>

namespace repeatcode {

// Arithmetic in GF(2^q) for q in [2, 8], built on log/antilog tables over a
// primitive polynomial. Elements are represented as integers in [0, 2^q).
class GF2m {
 public:
  // poly: the modulus with the x^q bit set, e.g. 0x13 = x^4+x+1 for q=4.
  // Pass poly = 0 to use the built-in default for q. Throws
  // std::invalid_argument if poly is not primitive over GF(2).
  explicit GF2m(int q, std::uint32_t poly = 0);

  int q() const { return q_; }
  int field_size() const { return size_; }      // 2^q
  int order() const { return size_ - 1; }       // multiplicative group order
  std::uint32_t modulus() const { return poly_; }

  int add(int a, int b) const { return a ^ b; }
  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  int inv(int a) const;                          // throws on a == 0
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, int e) const;                   // a^e, e may be negative
  int alpha_pow(int e) const {                   // alpha^e for the table generator
    int m = e % order();
    if (m < 0) m += order();
    return exp_[m];
  }
  int log(int a) const;                          // discrete log base alpha; throws on 0

  // Default primitive polynomial for q in [2, 8].
  static std::uint32_t default_poly(int q);

 private:
  int q_ = 0;
  int size_ = 0;
  std::uint32_t poly_ = 0;
  std::vector<int> exp_;  // exp_[i] = alpha^i for i in [0, 2*order)
  std::vector<int> log_;  // log_[a] for a in [1, size)
};

// Polynomials over GF(2^q), coefficient i is the x^i coefficient.
using GfPoly = std::vector<int>;

GfPoly gf_poly_add(const GF2m& f, const GfPoly& a, const GfPoly& b);
GfPoly gf_poly_mul(const GF2m& f, const GfPoly& a, const GfPoly& b);
// Remainder of a mod b. b must have a nonzero leading coefficient.
GfPoly gf_poly_mod(const GF2m& f, const GfPoly& a, const GfPoly& b);
int gf_poly_eval(const GF2m& f, const GfPoly& a, int x);
// Formal derivative; over characteristic 2 even-power terms vanish.
GfPoly gf_poly_deriv(const GF2m& f, const GfPoly& a);
void gf_poly_trim(GfPoly& a);

}  // namespace repeatcode
