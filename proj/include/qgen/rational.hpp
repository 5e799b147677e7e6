#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgen {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("rational division by zero") {}
};

/// Arbitrary-precision rational in canonical form: positive denominator,
/// gcd(num, den) = 1. All arithmetic is exact.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) { canon(); }
    Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) { canon(); }
    explicit Rational(const mpq_class& q) : v_(q) { canon(); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// "n/d" with d omitted when 1, e.g. "3/4", "-1", "0".
    std::string str() const { return v_.get_str(); }

    double to_double() const { return v_.get_d(); }

  private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}
    void canon() {
        if (v_.get_den() == 0) throw DivisionByZero();
        v_.canonicalize();
    }
    mpq_class v_;
};

/// b^e for integer e of either sign; 0^0 = 1, 0^negative is an error.
inline Rational pow(const Rational& b, long e) {
    if (e == 0) return Rational(1);
    const bool neg = e < 0;
    const unsigned long k = neg ? static_cast<unsigned long>(-(e + 1)) + 1ul
                                : static_cast<unsigned long>(e);
    if (b.is_zero()) {
        if (neg) throw DivisionByZero();
        return Rational(0);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), b.num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), b.den().get_mpz_t(), k);
    return neg ? Rational(d, n) : Rational(n, d);
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Parses "n", "n/d", or a plain decimal like "0.999" (exactly, as 999/1000).
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        const std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (fp.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad rational literal: " + s);
        mpz_class whole(ip.empty() || ip == "-" ? ip + "0" : ip);
        mpz_class frac(fp.empty() ? "0" : fp);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class n = whole * scale + (s[0] == '-' ? -frac : frac);
        return Rational(n, scale);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw DivisionByZero();
    return Rational(q);
}

/// Row of Pascal's triangle: C(n,0..n), built by the additive recurrence.
inline std::vector<mpz_class> binomial_row(unsigned n) {
    std::vector<mpz_class> row{1};
    row.reserve(n + 1);
    for (unsigned i = 1; i <= n; ++i) {
        row.push_back(1);
        for (unsigned j = i - 1; j >= 1; --j) row[j] += row[j - 1];
    }
    return row;
}

}  // namespace qgen
