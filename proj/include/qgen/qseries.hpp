#pragma once

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qgen/qcore.hpp"
#include "qgen/rational.hpp"

namespace qgen {

struct OrderTooSmall : std::invalid_argument {
    OrderTooSmall() : std::invalid_argument("order too small to resolve the series cancellation") {}
};

/// Truncated formal power series with exact rational coefficients.
///
/// Stores coefficients for eps^val .. eps^(val+k) together with the first
/// *unknown* exponent ("bound"): the series is known modulo eps^bound.
/// Arithmetic propagates bounds, so a quotient only claims the coefficients
/// it can actually resolve. Valuations may go negative transiently during
/// division; every q->1 limit taken here ends with valuation >= 0.
class FormalSeries {
  public:
    static FormalSeries zero(long bound) { return FormalSeries({}, bound, bound); }

    static FormalSeries constant(const Rational& c, long bound) {
        if (bound <= 0 || c.is_zero()) return zero(bound);
        return FormalSeries({c}, 0, bound);
    }

    static FormalSeries monomial(const Rational& c, long exp, long bound) {
        if (exp >= bound || c.is_zero()) return zero(bound);
        return FormalSeries({c}, exp, bound);
    }

    /// (1 + eps)^k, truncated: the expansion of q^k at q = 1 + eps.
    static FormalSeries binomial_power(unsigned k, long bound) {
        std::vector<Rational> c;
        Rational b(1);
        for (long i = 0; i <= std::min<long>(k, bound - 1); ++i) {
            c.push_back(b);
            b *= Rational(static_cast<long>(k) - i, i + 1);
        }
        return FormalSeries(std::move(c), 0, bound);
    }

    long bound() const { return bound_; }

    /// Exponent of the lowest nonzero known coefficient; equals bound() when
    /// the series is zero to the stored order.
    long valuation() const { return coef_.empty() ? bound_ : start_; }

    bool is_zero_to_order() const { return coef_.empty(); }

    /// Coefficient of eps^e; e must be below the truncation bound.
    Rational coeff(long e) const {
        if (e >= bound_) throw std::out_of_range("coefficient beyond truncation order");
        if (coef_.empty() || e < start_ || e >= start_ + static_cast<long>(coef_.size()))
            return Rational(0);
        return coef_[static_cast<size_t>(e - start_)];
    }

    FormalSeries operator-() const {
        FormalSeries r = *this;
        for (auto& c : r.coef_) c = -c;
        return r;
    }

    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
        const long bound = std::min(a.bound_, b.bound_);
        if (a.coef_.empty() && b.coef_.empty()) return zero(bound);
        const long lo = std::min(a.valuation(), b.valuation());
        std::vector<Rational> c;
        for (long e = lo; e < bound; ++e) c.push_back(a.coeff_unchecked(e) + b.coeff_unchecked(e));
        return FormalSeries(std::move(c), lo, bound);
    }

    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return a + (-b); }

    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
        if (a.coef_.empty() || b.coef_.empty()) {
            // O(eps^ba)*B = O(eps^(ba + v(B))) and symmetrically.
            return zero(std::min(a.bound_ + b.valuation(), b.bound_ + a.valuation()));
        }
        const long bound = std::min(a.start_ + b.bound_, b.start_ + a.bound_);
        const long lo = a.start_ + b.start_;
        std::vector<Rational> c(static_cast<size_t>(bound - lo), Rational(0));
        for (size_t i = 0; i < a.coef_.size(); ++i) {
            if (a.coef_[i].is_zero()) continue;
            for (size_t j = 0; j < b.coef_.size(); ++j) {
                const long e = a.start_ + static_cast<long>(i) + b.start_ + static_cast<long>(j);
                if (e >= bound) break;
                c[static_cast<size_t>(e - lo)] += a.coef_[i] * b.coef_[j];
            }
        }
        return FormalSeries(std::move(c), lo, bound);
    }

    friend FormalSeries operator*(const Rational& s, const FormalSeries& b) {
        if (s.is_zero()) return zero(b.bound_);
        FormalSeries r = b;
        for (auto& c : r.coef_) c *= s;
        return r.renorm();
    }

    /// Truncated division; the divisor must have a nonzero coefficient within
    /// its stored order.
    friend FormalSeries operator/(const FormalSeries& a, const FormalSeries& b) {
        if (b.coef_.empty()) throw DivisionByZero();
        const long vb = b.start_;
        const long nb = b.bound_ - vb;  // resolvable terms of the inverse
        // Invert the unit part of b (shifted to valuation 0).
        std::vector<Rational> inv(static_cast<size_t>(nb), Rational(0));
        const Rational& b0 = b.coef_[0];
        inv[0] = Rational(1) / b0;
        for (long k = 1; k < nb; ++k) {
            Rational s(0);
            for (long i = 1; i <= k; ++i) {
                const Rational bi = (i < static_cast<long>(b.coef_.size())) ? b.coef_[static_cast<size_t>(i)] : Rational(0);
                if (!bi.is_zero()) s += bi * inv[static_cast<size_t>(k - i)];
            }
            inv[static_cast<size_t>(k)] = -s / b0;
        }
        FormalSeries binv(std::move(inv), 0, nb);
        FormalSeries q = a * binv;
        q.start_ -= vb;
        q.bound_ -= vb;
        return q;
    }

    FormalSeries pow(unsigned k) const {
        FormalSeries r = constant(Rational(1), bound_ + static_cast<long>(k) * valuation());
        for (unsigned i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
        const long bound = std::min(a.bound_, b.bound_);
        const long lo = std::min(a.valuation(), b.valuation());
        for (long e = lo; e < bound; ++e)
            if (a.coeff_unchecked(e) != b.coeff_unchecked(e)) return false;
        return true;
    }

  private:
    FormalSeries(std::vector<Rational> c, long start, long bound)
        : coef_(std::move(c)), start_(start), bound_(bound) {
        renorm();
    }

    Rational coeff_unchecked(long e) const {
        if (coef_.empty() || e < start_ || e >= start_ + static_cast<long>(coef_.size()))
            return Rational(0);
        return coef_[static_cast<size_t>(e - start_)];
    }

    FormalSeries& renorm() {
        // Clamp to bound, then strip zero margins.
        if (start_ + static_cast<long>(coef_.size()) > bound_)
            coef_.resize(static_cast<size_t>(std::max<long>(0, bound_ - start_)));
        size_t lead = 0;
        while (lead < coef_.size() && coef_[lead].is_zero()) ++lead;
        if (lead > 0) {
            coef_.erase(coef_.begin(), coef_.begin() + static_cast<long>(lead));
            start_ += static_cast<long>(lead);
        }
        while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
        if (coef_.empty()) start_ = bound_;
        return *this;
    }

    std::vector<Rational> coef_;
    long start_ = 0;  // exponent of coef_[0]
    long bound_ = 0;  // first unknown exponent
};

/// g_{n,q}^{(alpha,beta)} expanded around q = 1 + eps. The numerator and the
/// (1-q^alpha)^(n-1) denominator share valuation n-1, so the quotient is a
/// power series; `order` must leave guard terms to resolve the cancellation.
inline FormalSeries series_genocchi(unsigned n, const Weights& w, unsigned order) {
    if (order < n + 2) throw OrderTooSmall();
    const long bound = static_cast<long>(order) + 1;
    if (n == 0) return FormalSeries::zero(bound);

    const FormalSeries one = FormalSeries::constant(Rational(1), bound);
    const FormalSeries two_qb = one + FormalSeries::binomial_power(w.beta, bound);

    const auto binom = binomial_row(n - 1);
    FormalSeries acc = FormalSeries::zero(bound);
    for (unsigned l = 0; l < n; ++l) {
        FormalSeries denom_l = one + FormalSeries::binomial_power(w.alpha * l, bound);
        FormalSeries term = FormalSeries::constant(Rational(binom[l]), bound) / denom_l;
        acc = (l % 2 == 0) ? acc + term : acc - term;
    }
    FormalSeries num = Rational(static_cast<long>(n)) * (two_qb * acc);

    FormalSeries den = (one - FormalSeries::binomial_power(w.alpha, bound)).pow(n - 1);
    assert(den.valuation() == static_cast<long>(n) - 1);

    FormalSeries g = num / den;
    if (g.valuation() < 0)
        throw std::logic_error("q->1 limit of g_n produced a negative valuation");
    return g;
}

/// Classical Genocchi number G_n: coefficient of t^n/n! in 2t/(e^t + 1),
/// by exact truncated series division.
inline Rational classical_genocchi(unsigned n) {
    const long bound = static_cast<long>(n) + 2;
    std::vector<Rational> denom_coeffs;
    Rational inv_fact(1);
    for (long k = 0; k < bound; ++k) {
        denom_coeffs.push_back(k == 0 ? Rational(2) : inv_fact);  // e^t + 1
        inv_fact /= Rational(k + 1);
    }
    FormalSeries denom = FormalSeries::zero(bound);
    for (long k = 0; k < bound; ++k)
        denom = denom + FormalSeries::monomial(denom_coeffs[static_cast<size_t>(k)], k, bound);
    FormalSeries num = FormalSeries::monomial(Rational(2), 1, bound);
    FormalSeries series = num / denom;

    Rational fact(1);
    for (unsigned k = 2; k <= n; ++k) fact *= Rational(static_cast<long>(k));
    return series.coeff(static_cast<long>(n)) * fact;
}

/// q->1 consistency: the constant eps-term of g_{n,q}^{(alpha,beta)} equals
/// the classical G_n for every weight pair.
inline IdentityReport check_classical_limit(unsigned n, const Weights& w,
                                            unsigned order_margin = 4) {
    FormalSeries g = series_genocchi(n, w, n + order_margin);
    return make_report(g.coeff(0), classical_genocchi(n));
}

}  // namespace qgen
