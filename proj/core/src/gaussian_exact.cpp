#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coe/errors.hpp"
#include "coe/gaussian.hpp"

namespace coe::gaussian {

namespace {

// Owning handle for one mpfr_t; precision fixed at construction.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Binary exponent; very negative for zero.
  long exponent() const { return mpfr_zero_p(v_) ? -(1L << 40) : mpfr_get_exp(v_); }

 private:
  mpfr_t v_;
};

using BigVector = std::vector<BigFloat>;

BigVector make_vector(std::size_t n, mpfr_prec_t bits) { return BigVector(n, BigFloat(bits)); }

}  // namespace

// The alternating sums lose close to 10 bits per subsystem mode at half
// filling; 40 guard bits stay on top of that.
int default_precision_bits(const Bipartition& bp) {
  const int va = std::min(bp.subsystem(), bp.total() - bp.subsystem());
  return std::max(64, 48 + 10 * va);
}

double avg_coe_exact(const Bipartition& bp) {
  return avg_coe_exact(bp, default_precision_bits(bp));
}

double avg_coe_exact(const Bipartition& input, int precision_bits) {
  if (precision_bits < 53) {
    throw DomainError("avg_coe_exact: precision_bits must be at least 53, got " +
                      std::to_string(precision_bits));
  }
  // The whole system is pure and so is every mode.
  if (input.subsystem() == input.total()) return 0.0;
  const Bipartition bp = input.reduced();
  const int va = bp.subsystem();
  const int d = bp.delta();
  const mpfr_prec_t bits = precision_bits;
  constexpr auto rnd = MPFR_RNDN;

  // Largest factorial argument is (q + 2 delta + 3)! with q = 4 (V_A - 1).
  const int max_fact = 4 * va + 2 * d + 4;
  BigVector fact = make_vector(max_fact + 1, bits);
  mpfr_set_ui(fact[0].get(), 1, rnd);
  for (int n = 1; n <= max_fact; ++n) mpfr_mul_ui(fact[n].get(), fact[n - 1].get(), n, rnd);

  // Harmonic numbers H_n and S2_n = sum_{i<=n} 1/i^2.
  const int max_h = 4 * va + d;
  BigVector harm = make_vector(max_h + 1, bits);
  BigVector s2 = make_vector(max_h + 1, bits);
  {
    BigFloat t(bits);
    for (int n = 1; n <= max_h; ++n) {
      mpfr_set_ui(t.get(), 1, rnd);
      mpfr_div_ui(t.get(), t.get(), n, rnd);
      mpfr_add(harm[n].get(), harm[n - 1].get(), t.get(), rnd);
      mpfr_sqr(t.get(), t.get(), rnd);
      mpfr_add(s2[n].get(), s2[n - 1].get(), t.get(), rnd);
    }
  }

  // G2(q) for q = 0..4(V_A-1); it does not depend on j.
  const int max_q = 4 * (va - 1);
  BigVector g2 = make_vector(max_q + 1, bits);
  {
    BigFloat pi2_3(bits);
    BigFloat t(bits);
    mpfr_const_pi(pi2_3.get(), rnd);
    mpfr_sqr(pi2_3.get(), pi2_3.get(), rnd);
    mpfr_div_ui(pi2_3.get(), pi2_3.get(), 3, rnd);
    for (int q = 0; q <= max_q; ++q) {
      BigFloat& g = g2[q];
      mpfr_sub(t.get(), harm[q + d + 1].get(), harm[d + 1].get(), rnd);
      mpfr_sqr(g.get(), t.get(), rnd);
      mpfr_add(g.get(), g.get(), pi2_3.get(), rnd);
      mpfr_sub(g.get(), g.get(), s2[q + d + 1].get(), rnd);
      mpfr_sub(g.get(), g.get(), s2[d + 1].get(), rnd);
      mpfr_mul(g.get(), g.get(), fact[q + d + 1].get(), rnd);
      mpfr_div(g.get(), g.get(), fact[q + 2 * d + 3].get(), rnd);
    }
  }

  BigFloat total(bits);
  BigFloat inner(bits);
  BigFloat term(bits);
  BigFloat pref(bits);
  BigVector g1 = make_vector(2 * va - 1, bits);
  BigVector conv = make_vector(max_q + 1, bits);
  // Binary exponent of the largest single product entering the sum; its gap
  // to the result estimates the bits lost to cancellation.
  long max_exp = -(1L << 40);

  for (int j = 0; j < va; ++j) {
    const int n = 2 * j;
    // G1(p) = (-1)^p C(2j, p) (2j + p + 2 delta)! / (p + delta)!
    for (int p = 0; p <= n; ++p) {
      BigFloat& g = g1[p];
      mpfr_div(g.get(), fact[n].get(), fact[p].get(), rnd);
      mpfr_div(g.get(), g.get(), fact[n - p].get(), rnd);
      mpfr_mul(g.get(), g.get(), fact[n + p + 2 * d].get(), rnd);
      mpfr_div(g.get(), g.get(), fact[p + d].get(), rnd);
      if (p % 2 == 1) mpfr_neg(g.get(), g.get(), rnd);
    }
    for (int q = 0; q <= 2 * n; ++q) mpfr_set_zero(conv[q].get(), 1);
    // (2 delta + 4j + 1) (delta + 1)! / ((2j)! (2j + 2 delta)!)
    mpfr_mul_ui(pref.get(), fact[d + 1].get(), 2 * d + 4 * j + 1, rnd);
    mpfr_div(pref.get(), pref.get(), fact[n].get(), rnd);
    mpfr_div(pref.get(), pref.get(), fact[n + 2 * d].get(), rnd);
    for (int k = 0; k <= n; ++k) {
      for (int m = 0; m <= n; ++m) {
        max_exp = std::max(max_exp, g1[k].exponent() + g1[m].exponent() +
                                        g2[k + m].exponent() + pref.exponent());
        mpfr_fma(conv[k + m].get(), g1[k].get(), g1[m].get(), conv[k + m].get(), rnd);
      }
    }
    mpfr_set_zero(inner.get(), 1);
    for (int q = 0; q <= 2 * n; ++q) {
      mpfr_mul(term.get(), conv[q].get(), g2[q].get(), rnd);
      mpfr_add(inner.get(), inner.get(), term.get(), rnd);
    }
    mpfr_mul(inner.get(), inner.get(), pref.get(), rnd);
    mpfr_add(total.get(), total.get(), inner.get(), rnd);
  }

  const long loss = max_exp - total.exponent();
  if (mpfr_sgn(total.get()) <= 0 || loss > precision_bits - 40) {
    throw PrecisionError("avg_coe_exact: estimated cancellation of " + std::to_string(loss) +
                         " bits exceeds the budget of " + std::to_string(precision_bits - 40) +
                         " bits; raise precision_bits");
  }
  return total.to_double();
}

}  // namespace coe::gaussian
