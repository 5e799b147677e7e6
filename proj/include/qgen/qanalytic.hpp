#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgen/qcore.hpp"
#include "qgen/rational.hpp"

namespace qgen {

using ComplexValue = std::complex<double>;

struct NotSummable : std::runtime_error {
    NotSummable() : std::runtime_error("not Abel-summable under budget") {}
};

struct TermBudgetExceeded : std::runtime_error {
    TermBudgetExceeded() : std::runtime_error("budget exceeded: series did not meet tolerance") {}
};

struct NotFinite : std::overflow_error {
    NotFinite() : std::overflow_error("non-finite value in floating-point evaluation") {}
};

inline double ensure_finite(double v) {
    if (!std::isfinite(v)) throw NotFinite();
    return v;
}

inline ComplexValue ensure_finite(ComplexValue v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NotFinite();
    return v;
}

/// Floating-point comparison outcome; rel is |lhs-rhs| / max(1, |rhs|).
struct ApproxReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool holds = false;
};

inline ApproxReport make_approx_report(double lhs, double rhs, double tol) {
    ApproxReport r;
    r.lhs = ensure_finite(lhs);
    r.rhs = ensure_finite(rhs);
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max(1.0, std::abs(rhs));
    r.tol = tol;
    r.holds = r.rel_err <= tol;
    return r;
}

// ---------------------------------------------------------------------------
// Abel (radial) summation.
//
// The *only* sanctioned evaluator for the divergent-looking alternating sums
// here is the radial limit A(r) = sum_m (-1)^m r^m a_m, r -> 1^-. Naive
// parenthesized (pairwise) partial summation is NOT Abel-consistent when the
// terms a_m do not vanish: for a_m = 1 the grouped sum suggests 0 while the
// Abel value is 1/2, and it is the Abel value the closed forms interpolate.
// ---------------------------------------------------------------------------

/// The fixed extrapolation schedule r_k = 1 - 2^-k, k = 1..12. Fixed so that
/// results are reproducible bit-for-bit at a given precision.
inline std::vector<double> default_radial_schedule() {
    std::vector<double> r;
    for (int k = 1; k <= 12; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
    return r;
}

namespace detail {

/// A(r) = sum_m (-1)^m r^m a_m for one radius r in [0,1). The terms must be
/// bounded with geometric variation, so the tail beyond m is bounded by
/// r^m * sup|a| / (1-r).
template <typename TermFn>
double radial_partial(TermFn&& a, double r, unsigned long max_terms) {
    double acc = 0.0;
    double rm = 1.0;
    double window_max = 0.0;  // max |a_m| over the current 64-term window
    for (unsigned long m = 0; m < max_terms; ++m) {
        const double am = ensure_finite(a(m));
        acc += (m % 2 == 0 ? rm : -rm) * am;
        rm *= r;
        if (m % 64 == 0) window_max = 0.0;
        window_max = std::max(window_max, std::abs(am));
        if (m >= 16) {
            const double tail = rm * (2.0 * window_max + 1e-30) / (1.0 - r);
            if (tail <= 1e-16 * (std::abs(acc) + 1.0)) return ensure_finite(acc);
        }
    }
    throw NotSummable();
}

/// Neville polynomial extrapolation to h = 0 through the points (h_i, y_i).
/// For the geometric default schedule this is classical Richardson.
inline double extrapolate_to_zero(const std::vector<double>& h, std::vector<double> y) {
    const size_t n = y.size();
    if (n == 0 || h.size() != n) throw std::invalid_argument("bad extrapolation table");
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            y[i] = (h[i - j] * y[i] - h[i] * y[i - 1]) / (h[i - j] - h[i]);
            if (i == j) break;  // size_t: avoid wrapping below j
        }
    return ensure_finite(y[n - 1]);
}

}  // namespace detail

/// Abel radial sum of sum_m (-1)^m a_m: evaluates A(r) over the given radius
/// schedule and, when `extrapolate` is set, Richardson-extrapolates r -> 1^-.
/// Otherwise returns A at the last (largest) radius.
template <typename TermFn>
double abel_radial_sum(TermFn&& a, const std::vector<double>& radii, bool extrapolate = true,
                       unsigned long max_terms_per_radius = 4'000'000) {
    if (radii.empty()) throw std::invalid_argument("empty radius schedule");
    std::vector<double> values, h;
    for (double r : radii) {
        if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("radii must lie in [0,1)");
        values.push_back(detail::radial_partial(a, r, max_terms_per_radius));
        h.push_back(1.0 - r);
    }
    if (!extrapolate) return values.back();
    return detail::extrapolate_to_zero(h, std::move(values));
}

template <typename TermFn>
double abel_radial_sum(TermFn&& a) {
    return abel_radial_sum(std::forward<TermFn>(a), default_radial_schedule(), true);
}

/// Convergence acceleration for genuinely alternating series sum_m (-1)^m b_m
/// with totally monotone b_m (Cohen-Rodriguez Villegas-Zagier). Used for the
/// classical Hurwitz-Euler reference values.
template <typename TermFn>
double alternating_sum_accelerated(TermFn&& b, int n = 0) {
    if (n <= 0) n = static_cast<int>(std::ceil(std::log(4.0 / 1e-17) / std::log(3.0 + std::sqrt(8.0))));
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double bb = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = bb - c;
        s += c * ensure_finite(b(static_cast<unsigned long>(k)));
        bb = (k + n) * (k - n) * bb / ((k + 0.5) * (k + 1.0));
    }
    return ensure_finite(s / d);
}

// ---------------------------------------------------------------------------
// Weighted q-zeta function.
// ---------------------------------------------------------------------------

struct ZetaParams {
    ComplexValue s;
    double x = 1.0;        // > 0
    Weights w{1, 1};
    double q = 0.5;        // in (0,1)

    ZetaParams(ComplexValue s_, double x_, Weights w_, double q_) : s(s_), x(x_), w(w_), q(q_) {
        if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
        if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0,1)");
    }
};

struct ZetaEval {
    ComplexValue value;
    unsigned long terms = 0;
};

/// xi^(alpha,beta)(s, x | q) through the absolutely convergent binomial form
///   [2]_{q^beta} (1-q^alpha)^s sum_{j>=0} C(-s,j) (-1)^j q^(alpha j x) / (1+q^(alpha j)),
/// which converges for every complex s (the terms decay like q^(alpha x j))
/// and terminates after n+1 terms at s = -n, realizing the entire
/// continuation constructively.
inline ZetaEval qzeta_eval(const ZetaParams& p, double tol = 1e-14,
                           unsigned long max_terms = 20'000'000) {
    const double qa = std::pow(p.q, p.w.alpha);
    const double qax = std::pow(p.q, p.w.alpha * p.x);
    ComplexValue cj(1.0, 0.0);  // C(-s,j) (-1)^j
    double wj = 1.0;            // q^(alpha j)
    double yj = 1.0;            // q^(alpha j x)
    ComplexValue sum(0.0, 0.0);
    unsigned small_streak = 0;
    unsigned long j = 0;
    bool converged = false;
    for (; j < max_terms; ++j) {
        const ComplexValue term = cj * (yj / (1.0 + wj));
        sum += term;
        const double mag = std::abs(term);
        if (mag <= tol * std::abs(sum) || mag < 1e-280)
            ++small_streak;
        else
            small_streak = 0;
        if (small_streak >= 2) {
            converged = true;
            ++j;
            break;
        }
        cj *= (p.s + ComplexValue(static_cast<double>(j), 0.0)) / (static_cast<double>(j) + 1.0);
        wj *= qa;
        yj *= qax;
    }
    if (!converged) throw TermBudgetExceeded();
    const double two_qb = 1.0 + std::pow(p.q, p.w.beta);
    const ComplexValue prefactor = std::exp(p.s * std::log(1.0 - qa));
    return ZetaEval{ensure_finite(two_qb * prefactor * sum), j};
}

inline ComplexValue qzeta(const ZetaParams& p, double tol = 1e-14) {
    return qzeta_eval(p, tol).value;
}

/// Direct floating-point evaluation of the closed polynomial form for real x:
///   g_{n+1,q}(x)/(n+1) = [2]_{q^beta}/(1-q^alpha)^n sum_l C(n,l)(-1)^l q^(alpha l x)/(1+q^(alpha l)).
/// Reference side of the interpolation check for non-integer x.
inline double genocchi_interp_fp(unsigned n, const Weights& w, double x, double q) {
    const auto binom = binomial_row(n);
    const double qa = std::pow(q, w.alpha);
    const double qax = std::pow(q, w.alpha * x);
    double wl = 1.0, yl = 1.0, acc = 0.0;
    for (unsigned l = 0; l <= n; ++l) {
        const double t = binom[l].get_d() * yl / (1.0 + wl);
        acc += (l % 2 == 0) ? t : -t;
        wl *= qa;
        yl *= qax;
    }
    const double two_qb = 1.0 + std::pow(q, w.beta);
    return ensure_finite(two_qb * acc / std::pow(1.0 - qa, static_cast<double>(n)));
}

/// Interpolation at negative integers: xi(-n, x | q) against g_{n+1,q}(x)/(n+1).
/// For integer x the reference is the exact rational polynomial; otherwise the
/// direct closed-form float evaluation (independent of the qzeta series path).
inline ApproxReport interpolation_check(unsigned n, double x, const Weights& w, const QPoint& q,
                                        double tol = 1e-10) {
    const double qd = q.value().to_double();
    const ComplexValue z = qzeta(ZetaParams(ComplexValue(-static_cast<double>(n), 0.0), x, w, qd));
    double ref;
    const double xr = std::round(x);
    if (std::abs(x - xr) < 1e-12 && xr >= 0) {
        const Rational exact = genocchi_poly(n + 1, w, q, PolyArg::at_x(static_cast<long>(xr), q)) /
                               Rational(static_cast<long>(n) + 1);
        ref = exact.to_double();
    } else {
        ref = genocchi_interp_fp(n, w, x, qd);
    }
    return make_approx_report(z.real(), ref, tol);
}

/// Definition-level Abel oracle against the closed form: [2]_{q^beta} times
/// the radial sum of a_m = [m]_{q^alpha}^n must match g_{n+1,q}/(n+1).
inline ApproxReport series_number_check(unsigned n, const Weights& w, const QPoint& q,
                                        double tol = 1e-6) {
    const double qa = std::pow(q.value().to_double(), w.alpha);
    const auto a = [qa, n](unsigned long m) {
        const double bracket = (1.0 - std::pow(qa, static_cast<double>(m))) / (1.0 - qa);
        return std::pow(bracket, static_cast<double>(n));  // 0^0 = 1
    };
    const double two_qb = 1.0 + std::pow(q.value().to_double(), w.beta);
    const double abel = two_qb * abel_radial_sum(a);
    const Rational closed = genocchi_number(n + 1, w, q) / Rational(static_cast<long>(n) + 1);
    return make_approx_report(abel, closed.to_double(), tol);
}

/// Generating-function check (|t| <= 1/4 for comfortable convergence):
/// truncated Taylor sum of g_{n,q}(x) t^n/n! against the Abel-radial value of
/// [2]_{q^beta} t sum_m (-1)^m exp(t [m+x]_{q^alpha}).
inline ApproxReport generating_check(double t, unsigned x, const Weights& w, const QPoint& q,
                                     unsigned n_terms = 8, double tol = 1e-8) {
    if (std::abs(t) > 0.25) throw std::invalid_argument("|t| must be <= 1/4");
    const PolyArg arg = PolyArg::at_x(static_cast<long>(x), q);
    double taylor = 0.0, tn = 1.0, fact = 1.0;
    for (unsigned n = 0; n <= n_terms; ++n) {
        if (n > 0) {
            tn *= t;
            fact *= n;
        }
        taylor += genocchi_poly(n, w, q, arg).to_double() * tn / fact;
    }
    const double qa = std::pow(q.value().to_double(), w.alpha);
    const auto a = [qa, t, x](unsigned long m) {
        const double bracket = (1.0 - std::pow(qa, static_cast<double>(m + x))) / (1.0 - qa);
        return std::exp(t * bracket);
    };
    const double two_qb = 1.0 + std::pow(q.value().to_double(), w.beta);
    const double abel = two_qb * t * abel_radial_sum(a);
    return make_approx_report(taylor, abel, tol);
}

/// The fixed q -> 1^- schedule mirrors the radial one.
inline std::vector<double> default_q_schedule() { return default_radial_schedule(); }

/// Hurwitz-Euler limit: extrapolated lim_{q->1} xi^(1,1)(s,x|q) against the
/// accelerated classical value 2 sum_m (-1)^m / (m+x)^s (Re s > 0).
inline ApproxReport hurwitz_limit_check(double s, double x, const std::vector<double>& q_schedule,
                                        double tol = 1e-6) {
    if (!(s > 0.0)) throw std::invalid_argument("reference series needs Re(s) > 0");
    std::vector<double> h, vals;
    for (double q : q_schedule) {
        const ZetaParams p(ComplexValue(s, 0.0), x, Weights(1, 1), q);
        vals.push_back(qzeta(p, 1e-14).real());
        h.push_back(1.0 - q);
    }
    const double limit = detail::extrapolate_to_zero(h, std::move(vals));
    const double ref = 2.0 * alternating_sum_accelerated(
                                 [s, x](unsigned long m) { return std::pow(m + x, -s); });
    ApproxReport r = make_approx_report(limit, ref, tol);
    r.holds = r.abs_err <= tol;  // criterion is an absolute difference
    return r;
}

inline ApproxReport hurwitz_limit_check(double s, double x, double tol = 1e-6) {
    return hurwitz_limit_check(s, x, default_q_schedule(), tol);
}

}  // namespace qgen
