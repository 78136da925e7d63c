#include "repeatcode/reed_solomon.hpp"

#include <stdexcept>
#include <utility>

namespace repeatcode {

namespace {

GfPoly generator_poly(const GF2m& f, int r) {
  GfPoly g{1};
  for (int j = 1; j <= r; ++j) g = gf_poly_mul(f, g, GfPoly{f.alpha_pow(j), 1});
  return g;
}

// S_j = word(alpha^j) with word[i] the x^(n-1-i) coefficient, j = 1..r.
std::vector<int> syndromes(const GF2m& f, const std::vector<int>& word, int r) {
  std::vector<int> s(r);
  for (int j = 1; j <= r; ++j) {
    const int a = f.alpha_pow(j);
    int acc = 0;
    for (int v : word) acc = f.add(f.mul(acc, a), v);
    s[j - 1] = acc;
  }
  return s;
}

// Shortest LFSR generating seq, returned as the connection polynomial
// Lambda(x) with Lambda[0] = 1. Second member of the pair is the register
// length L (the claimed error count).
std::pair<GfPoly, int> berlekamp_massey(const GF2m& f, const std::vector<int>& seq) {
  GfPoly lam{1}, prev{1};
  int l = 0, m = 1, b = 1;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    int delta = seq[n];
    for (int i = 1; i <= l && i <= static_cast<int>(lam.size()) - 1; ++i)
      delta = f.add(delta, f.mul(lam[i], seq[n - i]));
    if (delta == 0) {
      ++m;
      continue;
    }
    const GfPoly save = lam;
    const int coef = f.div(delta, b);
    if (lam.size() < prev.size() + m) lam.resize(prev.size() + m, 0);
    for (std::size_t i = 0; i < prev.size(); ++i)
      lam[i + m] = f.add(lam[i + m], f.mul(coef, prev[i]));
    if (2 * l <= static_cast<int>(n)) {
      l = static_cast<int>(n) + 1 - l;
      prev = save;
      b = delta;
      m = 1;
    } else {
      ++m;
    }
  }
  gf_poly_trim(lam);
  return {lam, l};
}

struct AlgebraOutcome {
  bool ok = false;
  std::vector<int> corrected;
  int errors = 0;   // corrections at non-erased positions
  int erasures = 0;
};

AlgebraOutcome decode_algebra(const RsParams& p, const GF2m& f,
                              const std::vector<int>& received) {
  const int n = p.n_rs, r = p.parity(), big_n = f.order();
  AlgebraOutcome out;

  std::vector<int> word(received);
  std::vector<char> erased(n, 0);
  for (int i = 0; i < n; ++i) {
    if (received[i] == kErased) {
      word[i] = 0;
      erased[i] = 1;
      ++out.erasures;
    } else if (received[i] < 0 || received[i] >= f.field_size()) {
      throw std::invalid_argument("rs_decode: symbol out of field range");
    }
  }
  if (out.erasures > r) return out;

  const std::vector<int> synd = syndromes(f, word, r);
  GfPoly s_poly(synd.begin(), synd.end());
  gf_poly_trim(s_poly);

  // Erasure locator over position exponents n-1-i.
  GfPoly gamma{1};
  for (int i = 0; i < n; ++i)
    if (erased[i]) gamma = gf_poly_mul(f, gamma, GfPoly{1, f.alpha_pow(n - 1 - i)});

  // Forney syndromes: the first `erasures` coefficients of Gamma*S carry no
  // information about the unknown locators; Berlekamp-Massey runs on the rest.
  GfPoly xi = gf_poly_mul(f, gamma, s_poly);
  std::vector<int> bm_seq;
  for (int i = out.erasures; i < r; ++i)
    bm_seq.push_back(i < static_cast<int>(xi.size()) ? xi[i] : 0);
  auto [lam, num_errors] = berlekamp_massey(f, bm_seq);

  GfPoly psi = gf_poly_mul(f, lam, gamma);
  GfPoly omega = gf_poly_mul(f, psi, s_poly);
  if (omega.size() > static_cast<std::size_t>(r)) omega.resize(r);
  gf_poly_trim(omega);
  const GfPoly psi_deriv = gf_poly_deriv(f, psi);

  // Chien search over every position of the parent code; a root landing in
  // the shortened range [n, 2^q - 1) contradicts the pinned-zero coefficients.
  const int want_roots = num_errors + out.erasures;
  int found = 0;
  for (int pos = 0; pos < big_n; ++pos) {
    const int x = f.alpha_pow(-pos);
    if (gf_poly_eval(f, psi, x) != 0) continue;
    if (pos >= n) return out;
    const int dp = gf_poly_eval(f, psi_deriv, x);
    if (dp == 0) return out;
    const int mag = f.div(gf_poly_eval(f, omega, x), dp);
    const int idx = n - 1 - pos;
    if (!erased[idx]) {
      if (mag == 0) return out;  // claimed error with no correction
      ++out.errors;
    }
    word[idx] = f.add(word[idx], mag);
    ++found;
  }
  if (found != want_roots) return out;

  out.ok = true;
  out.corrected = std::move(word);
  return out;
}

RsDecodeResult finish(const RsParams& p, AlgebraOutcome&& alg) {
  RsDecodeResult res;
  res.errors_corrected = alg.errors;
  res.erasure_count = alg.erasures;
  if (!alg.ok) return res;
  res.ok = true;
  res.corrected = std::move(alg.corrected);
  res.data.assign(res.corrected.begin(), res.corrected.begin() + p.k_rs);
  return res;
}

}  // namespace

void RsParams::validate() const {
  if (q < 2 || q > 8) throw std::invalid_argument("RsParams: q must be in [2, 8]");
  const int max_n = (1 << q) - 1;
  if (n_rs < 2 || n_rs > max_n)
    throw std::invalid_argument("RsParams: n_rs must be in [2, 2^q - 1]");
  if (k_rs < 1 || k_rs >= n_rs)
    throw std::invalid_argument("RsParams: k_rs must be in [1, n_rs)");
}

std::vector<int> rs_encode(const RsParams& p, const std::vector<int>& data) {
  p.validate();
  if (static_cast<int>(data.size()) != p.k_rs)
    throw std::invalid_argument("rs_encode: data length != k_rs");
  const GF2m f(p.q, p.field_poly);
  for (int v : data)
    if (v < 0 || v >= f.field_size())
      throw std::invalid_argument("rs_encode: symbol out of field range");

  const int r = p.parity();
  // data * x^r, coefficient i of the product at x^(r + k - 1 - i).
  GfPoly shifted(r + p.k_rs, 0);
  for (int i = 0; i < p.k_rs; ++i) shifted[r + p.k_rs - 1 - i] = data[i];
  GfPoly rem = gf_poly_mod(f, shifted, generator_poly(f, r));

  std::vector<int> out(p.n_rs, 0);
  for (int i = 0; i < p.k_rs; ++i) out[i] = data[i];
  for (int i = 0; i < r; ++i)
    out[p.k_rs + i] = (r - 1 - i) < static_cast<int>(rem.size()) ? rem[r - 1 - i] : 0;
  return out;
}

RsDecodeResult rs_decode_raw(const RsParams& p, const std::vector<int>& received) {
  p.validate();
  if (static_cast<int>(received.size()) != p.n_rs)
    throw std::invalid_argument("rs_decode: received length != n_rs");
  const GF2m f(p.q, p.field_poly);
  return finish(p, decode_algebra(p, f, received));
}

RsDecodeResult rs_decode(const RsParams& p, const std::vector<int>& received) {
  RsDecodeResult res = rs_decode_raw(p, received);
  if (!res.ok) return res;
  // Certificate: budget respected and the corrected word actually re-encodes
  // to itself. Out-of-budget locator solutions and non-codeword outputs both
  // become detected failures here.
  const bool within_budget = 2 * res.errors_corrected + res.erasure_count <= p.parity();
  const bool codeword = rs_encode(p, res.data) == res.corrected;
  if (!within_budget || !codeword) {
    res.ok = false;
    res.data.clear();
    res.corrected.clear();
  }
  return res;
}

}  // namespace repeatcode
