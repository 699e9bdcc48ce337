#pragma once

#include <mpfr.h>

#include <utility>

namespace risop {

// Thin RAII value type over an mpfr_t. New values take the calling thread's
// working precision, so concurrent callers never share precision state.
class BigFloat {
public:
    static mpfr_prec_t working_precision();

    // Sets the thread's working precision for the lifetime of the scope.
    class PrecisionScope {
    public:
        explicit PrecisionScope(mpfr_prec_t bits);
        ~PrecisionScope();
        PrecisionScope(const PrecisionScope&) = delete;
        PrecisionScope& operator=(const PrecisionScope&) = delete;

    private:
        mpfr_prec_t saved_;
    };

    BigFloat() : BigFloat(0.0) {}
    BigFloat(double v);  // NOLINT(google-explicit-constructor)
    BigFloat(int v) : BigFloat(static_cast<double>(v)) {}  // NOLINT
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator-(BigFloat a);

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
// log|Gamma(x)|; `sign` receives the sign of Gamma(x).
BigFloat lgamma(const BigFloat& x, int* sign);
bool is_zero(const BigFloat& x);

}  // namespace risop
