#include "risop/bigfloat.hpp"

namespace risop {

namespace {
thread_local mpfr_prec_t t_precision = 128;
}

mpfr_prec_t BigFloat::working_precision() { return t_precision; }

BigFloat::PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(t_precision) {
    t_precision = bits;
}

BigFloat::PrecisionScope::~PrecisionScope() { t_precision = saved_; }

BigFloat::BigFloat(double v) {
    mpfr_init2(v_, t_precision);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat operator-(BigFloat a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
}

BigFloat abs(const BigFloat& x) {
    BigFloat r;
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r;
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    BigFloat r;
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat lgamma(const BigFloat& x, int* sign) {
    BigFloat r;
    int s = 1;
    mpfr_lgamma(r.get(), &s, x.get(), MPFR_RNDN);
    if (sign) *sign = s;
    return r;
}

bool is_zero(const BigFloat& x) { return mpfr_zero_p(x.get()) != 0; }

}  // namespace risop
