#pragma once

#include <mpfr.h>

#include <string>

namespace mlosc {

// Thin RAII wrapper around an mpfr_t with a fixed precision.  Arithmetic is
// in-place; every value carries its own precision so no global mpfr state is
// touched (keeps concurrent use safe).
class Wide {
 public:
  explicit Wide(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Wide(double x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
  Wide(const Wide& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Wide& operator=(const Wide& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Wide(Wide&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Wide& operator=(Wide&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Wide() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  void set(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }
  void set(const Wide& o) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }

  void add(const Wide& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); }
  void sub(const Wide& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); }
  void mul(const Wide& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); }
  void mul(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); }
  void mul_ui(unsigned long x) { mpfr_mul_ui(v_, v_, x, MPFR_RNDN); }
  void div(const Wide& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); }
  void div_ui(unsigned long x) { mpfr_div_ui(v_, v_, x, MPFR_RNDN); }
  void neg() { mpfr_neg(v_, v_, MPFR_RNDN); }

  // out = a*b + c*d, computed at the output precision
  static void mul2add(Wide& out, const Wide& a, const Wide& b, const Wide& c, const Wide& d) {
    Wide t(out.precision());
    mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
    mpfr_mul(t.v_, c.v_, d.v_, MPFR_RNDN);
    mpfr_add(out.v_, out.v_, t.v_, MPFR_RNDN);
  }
  // out = a*b - c*d
  static void mul2sub(Wide& out, const Wide& a, const Wide& b, const Wide& c, const Wide& d) {
    Wide t(out.precision());
    mpfr_mul(out.v_, a.v_, b.v_, MPFR_RNDN);
    mpfr_mul(t.v_, c.v_, d.v_, MPFR_RNDN);
    mpfr_sub(out.v_, out.v_, t.v_, MPFR_RNDN);
  }

  void gamma_of(const Wide& x) { mpfr_gamma(v_, x.v_, MPFR_RNDN); }
  void exp_of(const Wide& x) { mpfr_exp(v_, x.v_, MPFR_RNDN); }
  void sqr_of(const Wide& x) { mpfr_sqr(v_, x.v_, MPFR_RNDN); }
  void recip() { mpfr_ui_div(v_, 1, v_, MPFR_RNDN); }

  // v = a*k + b exactly enough at wide precision (a, b doubles)
  void set_linear(double a, long k, double b) {
    mpfr_set_d(v_, a, MPFR_RNDN);
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    mpfr_add_d(v_, v_, b, MPFR_RNDN);
  }

  bool is_nonpositive_integer() const {
    return mpfr_integer_p(v_) != 0 && mpfr_sgn(v_) <= 0;
  }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // |v| as a double with saturation instead of overflow
  double abs_double() const {
    double d = mpfr_get_d(v_, MPFR_RNDN);
    return d < 0 ? -d : d;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace mlosc
