#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgen/qcore.hpp"
#include "qgen/rational.hpp"

namespace qgen {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted() : std::runtime_error("p-adic precision exhausted") {}
};

inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

/// p-adic valuation of a nonzero rational; nullopt for zero.
inline std::optional<long> padic_val(const Rational& r, long p) {
    if (r.is_zero()) return std::nullopt;
    mpz_class tmp;
    const long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), r.num().get_mpz_t(), mpz_class(p).get_mpz_t()));
    const long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), r.den().get_mpz_t(), mpz_class(p).get_mpz_t()));
    return vn - vd;
}

/// Element of Q_p at finite precision: p^val * unit with the unit known
/// modulo p^digits, i.e. the value is known modulo p^(val+digits). A zero
/// may be exact or only "zero to known precision"; the distinction matters
/// when differences are taken, so it is tracked explicitly.
class PadicNumber {
  public:
    static constexpr long kExact = LONG_MAX;

    /// Image of an exact rational in Q_p, unit part to `digits` p-adic digits.
    static PadicNumber reduce(const Rational& r, long p, long digits) {
        if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
        if (digits < 1) throw std::invalid_argument("need at least one p-adic digit");
        if (r.is_zero()) return zero(p, kExact);
        const mpz_class P(p);
        mpz_class nu, du;
        const long vn = static_cast<long>(mpz_remove(nu.get_mpz_t(), r.num().get_mpz_t(), P.get_mpz_t()));
        const long vd = static_cast<long>(mpz_remove(du.get_mpz_t(), r.den().get_mpz_t(), P.get_mpz_t()));
        const mpz_class mod = pow_p(p, digits);
        mpz_class dinv;
        if (mpz_invert(dinv.get_mpz_t(), du.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw PrecisionExhausted();  // cannot happen: du is coprime to p
        mpz_class u = (nu * dinv) % mod;
        if (u < 0) u += mod;
        return PadicNumber(p, vn - vd, std::move(u), digits);
    }

    static PadicNumber zero(long p, long known) { return PadicNumber(p, known); }

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && known_ == kExact; }

    /// Lower bound for the valuation; exact unless is_zero().
    long valuation_bound() const { return zero_ ? known_ : val_; }
    bool valuation_exact() const { return !zero_; }

    long valuation() const {
        if (zero_) throw std::logic_error("valuation of a (precision-)zero");
        return val_;
    }
    const mpz_class& unit() const { return unit_; }
    long digits() const { return zero_ ? 0 : digits_; }
    /// The value is known modulo p^known_abs().
    long known_abs() const { return zero_ ? known_ : sat_add(val_, digits_); }

    friend PadicNumber operator-(const PadicNumber& a) {
        if (a.zero_) return a;
        PadicNumber r = a;
        r.unit_ = pow_p(a.p_, a.digits_) - a.unit_;
        return r;
    }

    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
        check_same(a, b);
        if (a.zero_ && b.zero_) return zero(a.p_, std::min(a.known_, b.known_));
        if (a.zero_) return b.clipped_abs(a.known_);
        if (b.zero_) return a.clipped_abs(b.known_);
        const long kab = std::min(a.known_abs(), b.known_abs());
        const long vmin = std::min(a.val_, b.val_);
        if (kab <= vmin) return zero(a.p_, kab);
        const long m = kab - vmin;
        const mpz_class mod = pow_p(a.p_, m);
        mpz_class r = (a.unit_ * pow_p(a.p_, a.val_ - vmin) + b.unit_ * pow_p(a.p_, b.val_ - vmin)) % mod;
        if (r < 0) r += mod;
        if (r == 0) return zero(a.p_, kab);
        mpz_class u;
        const long t = static_cast<long>(mpz_remove(u.get_mpz_t(), r.get_mpz_t(), mpz_class(a.p_).get_mpz_t()));
        return PadicNumber(a.p_, vmin + t, u % pow_p(a.p_, m - t), m - t);
    }

    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
        check_same(a, b);
        if (a.zero_ || b.zero_) {
            // a = O(p^ka), b = p^vb * unit  =>  ab = O(p^(ka+vb)).
            const long ka = a.zero_ ? a.known_ : a.val_;
            const long kb = b.zero_ ? b.known_ : b.val_;
            return zero(a.p_, sat_add(ka, kb));
        }
        const long d = std::min(a.digits_, b.digits_);
        mpz_class u = (a.unit_ * b.unit_) % pow_p(a.p_, d);
        return PadicNumber(a.p_, a.val_ + b.val_, std::move(u), d);
    }

    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
        check_same(a, b);
        if (b.is_exact_zero()) throw DivisionByZero();
        if (b.zero_) throw PrecisionExhausted();  // divisor indistinguishable from zero
        if (a.zero_) return zero(a.p_, a.known_ == kExact ? kExact : a.known_ - b.val_);
        const long d = std::min(a.digits_, b.digits_);
        const mpz_class mod = pow_p(a.p_, d);
        mpz_class binv;
        mpz_invert(binv.get_mpz_t(), b.unit_.get_mpz_t(), mod.get_mpz_t());
        mpz_class u = (a.unit_ * binv) % mod;
        return PadicNumber(a.p_, a.val_ - b.val_, std::move(u), d);
    }

    PadicNumber pow(unsigned e) const {
        PadicNumber r = reduce(Rational(1), p_, zero_ ? 1 : digits_);
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    std::string str() const {
        if (zero_) {
            if (known_ == kExact) return "0";
            return "O(" + std::to_string(p_) + "^" + std::to_string(known_) + ")";
        }
        std::string s = unit_.get_str();
        if (val_ != 0) s = std::to_string(p_) + "^" + std::to_string(val_) + " * " + s;
        return s + " + O(" + std::to_string(p_) + "^" + std::to_string(known_abs()) + ")";
    }

  private:
    PadicNumber(long p, long v, mpz_class u, long digits)
        : p_(p), zero_(false), val_(v), unit_(std::move(u)), digits_(digits), known_(0) {}
    PadicNumber(long p, long known) : p_(p), zero_(true), val_(0), unit_(0), digits_(0), known_(known) {}

    static void check_same(const PadicNumber& a, const PadicNumber& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("mixed p-adic primes");
    }
    static long sat_add(long a, long b) {
        if (a == kExact || b == kExact) return kExact;
        return a + b;
    }
    static mpz_class pow_p(long p, long e) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
        return r;
    }
    PadicNumber clipped_abs(long kab) const {
        if (zero_) return PadicNumber(p_, std::min(known_, kab));
        if (kab >= known_abs()) return *this;
        if (kab <= val_) return PadicNumber(p_, kab);
        PadicNumber r = *this;
        r.digits_ = kab - val_;
        r.unit_ %= pow_p(p_, r.digits_);
        if (r.unit_ == 0) return PadicNumber(p_, kab);  // cannot happen: unit not divisible by p
        return r;
    }

    long p_;
    bool zero_;
    long val_;
    mpz_class unit_;
    long digits_;
    long known_;  // absolute precision of a zero; kExact for true zero
};

/// Image of an exact rational in Q_p at `digits` p-adic digits.
inline PadicNumber padic_reduce(const Rational& r, long p, long digits) {
    return PadicNumber::reduce(r, p, digits);
}

/// Admissible q for p-adic q-integration: rational, positive, q != 1 and
/// q = 1 (mod p) p-adically, i.e. v_p(1-q) >= 1 (the odd-p form of the
/// |1-q|_p < p^(-1/(p-1)) disc).
class PadicQ {
  public:
    PadicQ(Rational q, long p) : q_(QPoint(std::move(q))), p_(p) {
        if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
        const auto v = padic_val(Rational(1) - q_.value(), p);
        const auto vden = padic_val(Rational(q_.value().den()), p);
        if (!v || *v < 1 || (vden && *vden != 0))
            throw std::invalid_argument("q must satisfy q = 1 (mod p) p-adically");
    }
    const QPoint& q() const { return q_; }
    long p() const { return p_; }

  private:
    QPoint q_;
    long p_;
};

/// Finite linear combination of basis integrands coeff * q^(c x) * [x]_{q^a}^k,
/// closed under the shift x -> x + m.
class Integrand {
  public:
    struct Term {
        Rational coeff;
        long c = 0;      // exponent multiplier of q^(c x)
        unsigned a = 1;  // bracket base q^a
        unsigned k = 0;  // bracket power
    };

    Integrand() = default;
    explicit Integrand(std::vector<Term> terms) : terms_(std::move(terms)) {
        for (const auto& t : terms_)
            if (t.a < 1) throw std::invalid_argument("bracket base exponent must be >= 1");
    }

    static Integrand constant(Rational c) { return Integrand({Term{std::move(c), 0, 1, 0}}); }
    static Integrand bracket_power(unsigned a, unsigned k, long c = 0, Rational coeff = Rational(1)) {
        return Integrand({Term{std::move(coeff), c, a, k}});
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Multiply by q^(delta x): shifts every exponent multiplier.
    Integrand times_q_power(long delta) const {
        Integrand r = *this;
        for (auto& t : r.terms_) t.c += delta;
        return r;
    }

    /// The shift x -> x + m, rewritten through
    /// [x+m]_{q^a} = [m]_{q^a} + q^(a m) [x]_{q^a} and q^(c(x+m)) = q^(cm) q^(cx).
    Integrand shifted(unsigned m, const QPoint& q) const {
        std::map<std::tuple<long, unsigned, unsigned>, Rational> acc;
        for (const auto& t : terms_) {
            const Rational qcm = q.pow(t.c * static_cast<long>(m));
            const Rational bm = q_bracket(m, QPoint(q.pow(t.a)));
            const Rational qam = q.pow(static_cast<long>(t.a) * m);
            const auto binom = binomial_row(t.k);
            Rational qamj(1);  // q^(a m j)
            for (unsigned j = 0; j <= t.k; ++j) {
                Rational coeff = t.coeff * qcm * Rational(binom[j]) * pow(bm, t.k - j) * qamj;
                if (!coeff.is_zero()) acc[{t.c, t.a, j}] += coeff;
                qamj *= qam;
            }
        }
        std::vector<Term> out;
        for (auto& [key, coeff] : acc)
            if (!coeff.is_zero())
                out.push_back(Term{std::move(coeff), std::get<0>(key), std::get<1>(key), std::get<2>(key)});
        return Integrand(std::move(out));
    }

    /// Exact value at a nonnegative integer point (0^0 = 1).
    Rational eval(unsigned long x, const QPoint& q) const {
        Rational r(0);
        for (const auto& t : terms_) {
            Rational v = t.coeff * q.pow(t.c * static_cast<long>(x));
            if (t.k > 0) v *= pow(q_bracket(x, QPoint(q.pow(t.a))), t.k);
            r += v;
        }
        return r;
    }

  private:
    std::vector<Term> terms_;
};

constexpr unsigned long kDefaultTermBudget = 1'000'000;

namespace detail {

inline unsigned long checked_pn(long p, unsigned level, unsigned long budget) {
    unsigned long m = 1;
    for (unsigned i = 0; i < level; ++i) {
        if (m > budget / static_cast<unsigned long>(p))
            throw BudgetExceeded("budget exceeded: p^N > " + std::to_string(budget));
        m *= static_cast<unsigned long>(p);
    }
    if (m > budget) throw BudgetExceeded("budget exceeded: p^N > " + std::to_string(budget));
    return m;
}

// One pass over x = 0 .. p^max_level - 1, snapshotting the normalized sum at
// every level boundary. Returns S_1 .. S_max_level.
inline std::vector<Rational> riemann_levels(const Integrand& f, unsigned max_level, const PadicQ& pq,
                                            unsigned beta, unsigned long budget) {
    if (max_level < 1) throw std::invalid_argument("level must be >= 1");
    const QPoint& q = pq.q();
    const unsigned long m_top = checked_pn(pq.p(), max_level, budget);

    // Fold the measure weight q^(beta x) into each term, then accumulate
    //   sum_x (-1)^x q^((c+beta) x) (1 - q^(a x))^k / (1 - q^a)^k
    // per term, with the constant bracket denominator divided out at the end.
    struct TermState {
        Rational coeff;
        long ce;            // c + beta
        unsigned a, k;
        Rational qc_step;   // q^ce
        Rational qa_step;   // q^a
        Rational qc_cur{1};
        Rational qa_cur{1};
        Rational inv_denom; // 1 / (1 - q^a)^k
        Rational acc{0};
    };
    std::vector<TermState> st;
    for (const auto& t : f.terms()) {
        TermState s;
        s.coeff = t.coeff;
        s.ce = t.c + static_cast<long>(beta);
        s.a = t.a;
        s.k = t.k;
        s.qc_step = q.pow(s.ce);
        s.qa_step = q.pow(s.a);
        s.inv_denom = Rational(1) / pow(Rational(1) - s.qa_step, s.k);
        st.push_back(std::move(s));
    }

    std::vector<Rational> snapshots;
    unsigned long next_boundary = checked_pn(pq.p(), 1, budget);
    const Rational one_plus_qb = Rational(1) + q.pow(beta);
    const Rational qb_step = q.pow(beta);
    Rational qb_cur(1);  // q^(beta x), for the normalizer snapshot

    for (unsigned long x = 0; x <= m_top; ++x) {
        if (x == next_boundary) {
            // [p^level]_{-q^beta} = (1 + q^(beta p^level)) / (1 + q^beta); here
            // qb_cur = q^(beta x) with x = p^level.
            const Rational normalizer = (Rational(1) + qb_cur) / one_plus_qb;
            Rational total(0);
            for (const auto& s : st) total += s.coeff * s.acc * s.inv_denom;
            snapshots.push_back(total / normalizer);
            if (snapshots.size() == max_level) break;
            next_boundary *= static_cast<unsigned long>(pq.p());
        }
        const bool negate = (x % 2 == 1);
        for (auto& s : st) {
            Rational v = (s.k == 0) ? Rational(1) : pow(Rational(1) - s.qa_cur, s.k);
            if (s.ce != 0) v *= s.qc_cur;
            s.acc += negate ? -v : v;
            if (s.ce != 0) s.qc_cur *= s.qc_step;
            s.qa_cur *= s.qa_step;
        }
        qb_cur *= qb_step;
    }
    return snapshots;
}

}  // namespace detail

/// Level-N Riemann sum of the fermionic p-adic q-integral with measure
/// mu_{-q^beta}:  S_N = (1/[p^N]_{-q^beta}) sum_{x=0}^{p^N-1} (-1)^x q^(beta x) f(x),
/// in exact rational arithmetic.
inline Rational riemann_sum(const Integrand& f, unsigned level, const PadicQ& pq, unsigned beta,
                            unsigned long budget = kDefaultTermBudget) {
    return detail::riemann_levels(f, level, pq, beta, budget).back();
}

/// Generic twisted moment: S_N for the integrand q^(c x) [x]_{q^alpha}^n under
/// mu_{-q^beta}. c = -beta reproduces the Witt integrand; c = h-1, beta = 1
/// gives the weighted (h,q)-Genocchi family.
inline Rational twisted_moment(long c, unsigned n, unsigned alpha, unsigned beta, const PadicQ& pq,
                               unsigned level, unsigned long budget = kDefaultTermBudget) {
    return riemann_sum(Integrand::bracket_power(alpha, n, c), level, pq, beta, budget);
}

struct WittEntry {
    unsigned level = 0;
    long valuation_bound = 0;  // p-adic valuation of S_N - closed form
    bool exact = false;        // false when the difference is zero to working precision
    std::string difference;    // reduced difference, for reporting
};

struct WittReport {
    long prime = 0;
    unsigned n = 0;
    long working_digits = 0;
    long delta = 2;
    std::vector<WittEntry> entries;
    Rational closed_form;
    bool passed = false;
};

/// Witt-type formula check: the level-N sums for q^(-beta x)[x]_{q^alpha}^n
/// must converge p-adically to g_{n+1,q}/(n+1), with v_p(S_N - closed form)
/// non-decreasing and >= N - delta.
inline WittReport witt_check(unsigned n, const Weights& w, const PadicQ& pq, long precision,
                             unsigned max_level, long delta = 2,
                             unsigned long budget = kDefaultTermBudget) {
    WittReport rep;
    rep.prime = pq.p();
    rep.n = n;
    rep.delta = delta;
    const auto v1 = padic_val(Rational(1) - pq.q().pow(w.alpha), pq.p());
    rep.working_digits = precision + static_cast<long>(n) * *v1 + 2;

    rep.closed_form = genocchi_number(n + 1, w, pq.q()) / Rational(static_cast<long>(n) + 1);
    const PadicNumber closed = PadicNumber::reduce(rep.closed_form, pq.p(), rep.working_digits);

    const Integrand f = Integrand::bracket_power(w.alpha, n, -static_cast<long>(w.beta));
    const auto sums = detail::riemann_levels(f, max_level, pq, w.beta, budget);

    rep.passed = true;
    long prev = LONG_MIN;
    for (unsigned lvl = 1; lvl <= max_level; ++lvl) {
        const PadicNumber s = PadicNumber::reduce(sums[lvl - 1], pq.p(), rep.working_digits);
        const PadicNumber diff = s - closed;
        WittEntry e;
        e.level = lvl;
        e.valuation_bound = diff.valuation_bound();
        e.exact = diff.valuation_exact();
        e.difference = diff.str();
        if (e.valuation_bound < prev || e.valuation_bound < static_cast<long>(lvl) - delta)
            rep.passed = false;
        prev = e.valuation_bound;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

struct ShiftCheckReport {
    Rational lhs;
    Rational rhs;
    Rational residual;
    std::optional<long> residual_valuation;  // nullopt: residual exactly zero
    long threshold = 0;                      // N - delta
    bool holds = false;
};

/// Finite-level check of the integral shift identity
///   I(q^(-beta x) f_n) + (-1)^(n-1) I(q^(-beta x) f)
///     = [2]_{q^beta} sum_{l=0}^{n-1} (-1)^(n-l-1) f(l),
/// with I approximated at level N; passes iff v_p(residual) >= N - delta.
inline ShiftCheckReport lemma1_check(const Integrand& f, unsigned n, const PadicQ& pq, unsigned beta,
                                unsigned level, long delta = 2,
                                unsigned long budget = kDefaultTermBudget) {
    if (n < 1) throw std::invalid_argument("shift count n must be >= 1");
    const QPoint& q = pq.q();
    const Integrand fn = f.shifted(n, q);
    const long mb = -static_cast<long>(beta);
    const Rational i_fn = riemann_sum(fn.times_q_power(mb), level, pq, beta, budget);
    const Rational i_f = riemann_sum(f.times_q_power(mb), level, pq, beta, budget);
    Rational lhs = (n % 2 == 1) ? i_fn + i_f : i_fn - i_f;

    Rational rhs(0);
    for (unsigned l = 0; l < n; ++l) {
        const Rational fl = f.eval(l, q);
        rhs += ((n - l - 1) % 2 == 0) ? fl : -fl;
    }
    rhs *= two_bracket(q, beta);

    ShiftCheckReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = lhs - rhs;
    rep.threshold = static_cast<long>(level) - delta;
    rep.residual_valuation = padic_val(rep.residual, pq.p());
    rep.holds = !rep.residual_valuation || *rep.residual_valuation >= rep.threshold;
    return rep;
}

}  // namespace qgen
