#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qgen/rational.hpp"

namespace qgen {

struct DegenerateQ : std::domain_error {
    DegenerateQ() : std::domain_error("degenerate q: q = 1 has no q-bracket inverse, use the series limit") {}
};

/// Deformation weights (alpha, beta), both >= 1. alpha deforms the bracket
/// base q^alpha, beta deforms the measure base q^beta.
struct Weights {
    unsigned alpha = 1;
    unsigned beta = 1;
    Weights(unsigned a, unsigned b) : alpha(a), beta(b) {
        if (a < 1 || b < 1) throw std::invalid_argument("weights must be >= 1");
    }
};

/// Rational evaluation point q with 0 < q, q != 1.
class QPoint {
  public:
    explicit QPoint(Rational q) : q_(std::move(q)) {
        if (q_.sign() <= 0) throw std::invalid_argument("q must be positive");
        if (q_ == Rational(1)) throw DegenerateQ();
    }
    const Rational& value() const { return q_; }
    /// q^e, exact.
    Rational pow(long e) const { return qgen::pow(q_, e); }

  private:
    Rational q_;
};

/// Polynomial argument in the y = q^x representation. Every occurrence of x
/// in the closed form is through q^{alpha l x} = y^{alpha l}, so carrying y
/// exactly keeps fractional arguments like (x+a)/d representable.
class PolyArg {
  public:
    explicit PolyArg(Rational y, std::optional<Rational> x_label = std::nullopt)
        : y_(std::move(y)), x_label_(std::move(x_label)) {
        if (y_.sign() <= 0) throw std::invalid_argument("poly argument y must be positive");
    }
    /// Argument x = m, carried exactly as y = q^m.
    static PolyArg at_x(long m, const QPoint& q) { return PolyArg(q.pow(m), Rational(m)); }
    static PolyArg at_y(Rational y) { return PolyArg(std::move(y)); }

    const Rational& y() const { return y_; }
    const std::optional<Rational>& x_label() const { return x_label_; }

  private:
    Rational y_;
    std::optional<Rational> x_label_;
};

/// Outcome of an exact identity check: both sides plus the residual, so a
/// nonzero residual (a detected erratum) is observable, not just a boolean.
struct IdentityReport {
    Rational lhs;
    Rational rhs;
    Rational residual;  // lhs - rhs
    bool holds = false;
};

inline IdentityReport make_report(Rational lhs, Rational rhs) {
    Rational res = lhs - rhs;
    bool ok = res.is_zero();
    return IdentityReport{std::move(lhs), std::move(rhs), std::move(res), ok};
}

/// [x]_q = (1 - q^x)/(1 - q).
inline Rational q_bracket(unsigned long x, const QPoint& q) {
    return (Rational(1) - q.pow(static_cast<long>(x))) / (Rational(1) - q.value());
}

/// [x]_{-q} = (1 - (-q)^x)/(1 + q).
inline Rational q_bracket_neg(unsigned long x, const QPoint& q) {
    Rational qx = q.pow(static_cast<long>(x));
    if (x % 2 == 1) qx = -qx;
    return (Rational(1) - qx) / (Rational(1) + q.value());
}

/// [2]_{q^beta} = 1 + q^beta.
inline Rational two_bracket(const QPoint& q, unsigned beta) {
    return Rational(1) + q.pow(beta);
}

namespace detail {

// Shared kernel of the number/polynomial closed forms:
//   g_n = n * [2]_{q^beta} / (1-q^alpha)^{n-1} * sum_{l=0}^{n-1} C(n-1,l) (-1)^l y^{alpha l} / (1+q^{alpha l})
// with y = 1 giving the numbers. g_0 = 0.
inline Rational genocchi_closed(unsigned n, const Weights& w, const QPoint& q, const Rational& y) {
    if (n == 0) return Rational(0);
    const auto binom = binomial_row(n - 1);
    const Rational qa = q.pow(w.alpha);
    Rational qal(1);  // q^{alpha l}
    Rational yal(1);  // y^{alpha l}
    const Rational ya = pow(y, w.alpha);
    Rational acc(0);
    for (unsigned l = 0; l < n; ++l) {
        Rational term = Rational(binom[l]) * yal / (Rational(1) + qal);
        acc += (l % 2 == 0) ? term : -term;
        qal *= qa;
        yal *= ya;
    }
    const Rational denom = pow(Rational(1) - qa, static_cast<long>(n) - 1);
    return Rational(static_cast<long>(n)) * two_bracket(q, w.beta) * acc / denom;
}

}  // namespace detail

/// Modified q-Genocchi number g_{n,q}^{(alpha,beta)}.
inline Rational genocchi_number(unsigned n, const Weights& w, const QPoint& q) {
    return detail::genocchi_closed(n, w, q, Rational(1));
}

/// Modified q-Genocchi polynomial g_{n,q}^{(alpha,beta)}(x) at y = q^x.
inline Rational genocchi_poly(unsigned n, const Weights& w, const QPoint& q, const PolyArg& arg) {
    return detail::genocchi_closed(n, w, q, arg.y());
}

/// Modified q-Euler number: eps_{n,q} = g_{n+1,q}^{(1,1)} / (n+1).
inline Rational q_euler_number(unsigned n, const QPoint& q) {
    return genocchi_number(n + 1, Weights(1, 1), q) / Rational(static_cast<long>(n) + 1);
}

/// q-Euler polynomial eps_{n,q}(x) = g_{n+1,q}^{(1,1)}(x) / (n+1).
inline Rational q_euler_poly(unsigned n, const QPoint& q, const PolyArg& arg) {
    return genocchi_poly(n + 1, Weights(1, 1), q, arg) / Rational(static_cast<long>(n) + 1);
}

/// Boundary identity: g_n(1) + g_n = [2]_{q^beta} when n = 1, else 0.
inline IdentityReport check_boundary(unsigned n, const Weights& w, const QPoint& q) {
    Rational lhs = genocchi_poly(n, w, q, PolyArg::at_x(1, q)) + genocchi_number(n, w, q);
    Rational rhs = (n == 1) ? two_bracket(q, w.beta) : Rational(0);
    return make_report(std::move(lhs), std::move(rhs));
}

enum class TailOrientation {
    Lemma,      // polynomial term carries coefficient 1, number term (-1)^{n-1}
    AsPrinted,  // the printed ordering: number term first, polynomial term signed
};

struct EmptyTail : std::invalid_argument {
    EmptyTail() : std::invalid_argument("empty tail: n must be >= 1") {}
};

/// Tail identity relating g_{m+1}(n), g_{m+1} and the alternating power sum
/// [2]_{q^beta} sum_{l=0}^{n-1} (-1)^{n-l-1} [l]_{q^alpha}^m. The two
/// orientations coincide for odd n and differ generically for even n.
inline IdentityReport check_tail(unsigned m, unsigned n, const Weights& w, const QPoint& q,
                                 TailOrientation orient = TailOrientation::Lemma) {
    if (n == 0) throw EmptyTail();
    const Rational mp1(static_cast<long>(m) + 1);
    const Rational poly_side = genocchi_poly(m + 1, w, q, PolyArg::at_x(n, q)) / mp1;
    const Rational num_side = genocchi_number(m + 1, w, q) / mp1;
    const bool flip = (n % 2 == 0);  // (-1)^{n-1} = -1 for even n

    Rational lhs;
    if (orient == TailOrientation::Lemma)
        lhs = poly_side + (flip ? -num_side : num_side);
    else
        lhs = num_side + (flip ? -poly_side : poly_side);

    Rational rhs(0);
    const QPoint qa(q.pow(w.alpha));
    for (unsigned l = 0; l < n; ++l) {
        // [l]^m with the 0^0 = 1 convention at l = m = 0.
        Rational p = (m == 0) ? Rational(1) : pow(q_bracket(l, qa), m);
        rhs += ((n - l - 1) % 2 == 0) ? p : -p;
    }
    rhs *= two_bracket(q, w.beta);
    return make_report(std::move(lhs), std::move(rhs));
}

struct ParityViolation : std::invalid_argument {
    ParityViolation() : std::invalid_argument("parity violation: d must be odd") {}
};

/// Multiplication (distribution) theorem for odd d:
///   g_{n,q}(dx) = [d]_{q^alpha}^{n-1} / [d]_{-q^beta}
///                 * sum_{a=0}^{d-1} (-1)^a g_{n,q^d}(x + a/d).
/// With y = q^x: the left side is evaluated at y^d, the a-th right-hand term
/// at base q^d with argument (q^d)^{(x+a)/d} = y^d q^a.
inline IdentityReport check_multiplication(unsigned n, unsigned d, const Weights& w,
                                           const QPoint& q, const PolyArg& arg) {
    if (d % 2 == 0) throw ParityViolation();
    if (n == 0) throw std::invalid_argument("multiplication theorem needs n >= 1");
    const Rational& y = arg.y();
    const Rational yd = pow(y, d);

    Rational lhs = genocchi_poly(n, w, q, PolyArg::at_y(yd));

    const QPoint qd(q.pow(d));
    Rational sum(0);
    Rational ya = yd;  // y^d q^a
    for (unsigned a = 0; a < d; ++a) {
        Rational term = genocchi_poly(n, w, qd, PolyArg::at_y(ya));
        sum += (a % 2 == 0) ? term : -term;
        ya *= q.value();
    }
    const Rational da = q_bracket(d, QPoint(q.pow(w.alpha)));
    const Rational db = q_bracket_neg(d, QPoint(q.pow(w.beta)));
    Rational rhs = pow(da, static_cast<long>(n) - 1) / db * sum;
    return make_report(std::move(lhs), std::move(rhs));
}

/// Umbral value (q eps + 1)^n = sum_j C(n,j) q^j eps_{j,q}; equals eps_{n,q}(1).
inline Rational q_euler_umbral_boundary(unsigned n, const QPoint& q) {
    const auto binom = binomial_row(n);
    Rational qj(1), acc(0);
    for (unsigned j = 0; j <= n; ++j) {
        acc += Rational(binom[j]) * qj * q_euler_number(j, q);
        qj *= q.value();
    }
    return acc;
}

/// Derived q-Euler boundary recurrence: (q eps + 1)^n + eps_{n,q} = [2]_q [n=0],
/// the sign-corrected form of the printed "-" recurrence.
inline IdentityReport check_q_euler_boundary(unsigned n, const QPoint& q, bool as_printed = false) {
    const Rational umbral = q_euler_umbral_boundary(n, q);
    const Rational eps = q_euler_number(n, q);
    Rational lhs = as_printed ? umbral - eps : umbral + eps;
    Rational rhs = (n == 0) ? two_bracket(q, 1) : Rational(0);
    return make_report(std::move(lhs), std::move(rhs));
}

}  // namespace qgen
