#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "umi/errors.hpp"
#include "umi/rational.hpp"

namespace umi {

/// Configuration of the working field K_M = Q(pi), pi^M = p.
/// Value group is (1/M)Z, residue field is F_p.
struct Field {
    std::int64_t p = 2;  // residue characteristic, prime
    int M = 1;           // ramification index

    Field() = default;
    Field(std::int64_t p_, int M_) : p(p_), M(M_) {
        if (!is_prime(Integer(p))) throw InvalidPrime("p must be prime, got " + std::to_string(p));
        if (M < 1) throw Error("ramification index must be >= 1");
    }

    bool operator==(const Field&) const = default;
    Integer prime() const { return Integer(p); }

    /// Smallest positive element of the value group.
    Rational step() const { return Rational(1, M); }

    bool in_value_group(const Rational& q) const { return rat_den(q * M) == 1; }
};

/// A nonnegative real magnitude of the form p^(-v), together with 0 and infinity.
/// Stored in valuation coordinates: v = -log_p of the magnitude.
class Magnitude {
  public:
    enum class Kind { Zero, Finite, Infinite };

    Magnitude() : kind_(Kind::Finite), v_(0) {}
    static Magnitude zero() { return Magnitude(Kind::Zero, Rational(0)); }
    static Magnitude infinite() { return Magnitude(Kind::Infinite, Rational(0)); }
    static Magnitude from_valuation(const Rational& v) { return Magnitude(Kind::Finite, v); }
    static Magnitude one() { return from_valuation(Rational(0)); }

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }

    /// Valuation exponent; only for finite magnitudes.
    const Rational& valuation() const {
        if (!is_finite()) throw Error("valuation of a zero/infinite magnitude");
        return v_;
    }

    Magnitude operator*(const Magnitude& o) const {
        if (is_zero() || o.is_zero()) {
            if (is_infinite() || o.is_infinite()) throw Error("0 * infinity magnitude");
            return zero();
        }
        if (is_infinite() || o.is_infinite()) return infinite();
        return from_valuation(v_ + o.v_);
    }
    Magnitude operator/(const Magnitude& o) const { return *this * o.reciprocal(); }
    Magnitude reciprocal() const {
        if (is_zero()) return infinite();
        if (is_infinite()) return zero();
        return from_valuation(-v_);
    }
    Magnitude pow(long e) const {
        if (is_zero()) return e == 0 ? one() : (e > 0 ? zero() : infinite());
        if (is_infinite()) return e == 0 ? one() : (e > 0 ? infinite() : zero());
        return from_valuation(v_ * e);
    }

    // Total order as real numbers: 0 < p^(-v) < infinity, larger valuation = smaller value.
    bool operator==(const Magnitude& o) const {
        if (kind_ != o.kind_) return false;
        return !is_finite() || v_ == o.v_;
    }
    bool operator<(const Magnitude& o) const {
        if (is_zero()) return !o.is_zero();
        if (is_infinite()) return false;
        if (o.is_zero()) return false;
        if (o.is_infinite()) return true;
        return v_ > o.v_;
    }
    bool operator<=(const Magnitude& o) const { return *this < o || *this == o; }
    bool operator>(const Magnitude& o) const { return o < *this; }
    bool operator>=(const Magnitude& o) const { return o <= *this; }

    static Magnitude max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }
    static Magnitude min(const Magnitude& a, const Magnitude& b) { return a < b ? a : b; }

  private:
    Magnitude(Kind k, Rational v) : kind_(k), v_(std::move(v)) {}
    Kind kind_;
    Rational v_;
};

namespace detail {

// Arithmetic in Q[x] used only for inversion in Q[x]/(x^M - p).
using QPoly = std::vector<Rational>;

inline void qp_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}

inline QPoly qp_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qp_trim(a);
    return a;
}

inline QPoly qp_scale(QPoly a, const Rational& c) {
    for (auto& x : a) x *= c;
    qp_trim(a);
    return a;
}

// Division with remainder; b nonzero.
inline std::pair<QPoly, QPoly> qp_divrem(QPoly a, const QPoly& b) {
    QPoly q;
    if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational c = a.back() / b.back();
        std::size_t k = a.size() - b.size();
        q[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
        qp_trim(a);
    }
    return {q, a};
}

// Inverse of a modulo m in Q[x]; gcd(a, m) must be 1 (m irreducible here).
inline QPoly qp_inverse_mod(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = a, t0 = {}, t1 = {Rational(1)};
    while (!r1.empty()) {
        auto [q, r2] = qp_divrem(r0, r1);
        QPoly t2 = qp_sub(t0, qp_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant gcd.
    if (r0.size() != 1) throw Error("inverse does not exist in K_M");
    return qp_scale(t0, Rational(1) / r0[0]);
}

}  // namespace detail

/// Element of K_M, stored as a_0 + a_1 pi + ... + a_{M-1} pi^{M-1} with rational a_i.
class Scalar {
  public:
    Scalar() = default;
    explicit Scalar(const Field& fld) : fld_(fld), a_(fld.M, Rational(0)) {}
    Scalar(const Field& fld, const Rational& a0) : fld_(fld), a_(fld.M, Rational(0)) {
        a_[0] = a0;
    }
    Scalar(const Field& fld, std::vector<Rational> coeffs) : fld_(fld), a_(std::move(coeffs)) {
        if (a_.size() != static_cast<std::size_t>(fld.M))
            throw Error("scalar needs exactly M coefficients");
    }

    static Scalar zero(const Field& fld) { return Scalar(fld); }
    static Scalar one(const Field& fld) { return Scalar(fld, Rational(1)); }
    static Scalar from_int(const Field& fld, long n) { return Scalar(fld, Rational(n)); }

    /// pi^k for any integer k (negative powers use pi^{-1} = pi^{M-1}/p).
    static Scalar pi_power(const Field& fld, long k) {
        long m = fld.M;
        long r = ((k % m) + m) % m;
        long d = (k - r) / m;  // k = d*M + r
        Scalar s(fld);
        s.a_[static_cast<std::size_t>(r)] = rat_pow(fld.prime(), d);
        return s;
    }

    const Field& field() const { return fld_; }
    const std::vector<Rational>& coeffs() const { return a_; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
    }

    bool operator==(const Scalar& o) const { return fld_ == o.fld_ && a_ == o.a_; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar r(fld_);
        for (int i = 0; i < fld_.M; ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        Scalar r(fld_);
        for (int i = 0; i < fld_.M; ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    Scalar operator-() const {
        Scalar r(fld_);
        for (int i = 0; i < fld_.M; ++i) r.a_[i] = -a_[i];
        return r;
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar r(fld_);
        Rational p(fld_.prime());
        for (int i = 0; i < fld_.M; ++i) {
            if (a_[i] == 0) continue;
            for (int j = 0; j < fld_.M; ++j) {
                if (o.a_[j] == 0) continue;
                int k = i + j;
                if (k >= fld_.M)
                    r.a_[k - fld_.M] += a_[i] * o.a_[j] * p;  // pi^M = p
                else
                    r.a_[k] += a_[i] * o.a_[j];
            }
        }
        return r;
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (fld_.M == 1) return Scalar(fld_, Rational(1) / a_[0]);
        detail::QPoly f(a_.begin(), a_.end());
        detail::qp_trim(f);
        detail::QPoly mod(static_cast<std::size_t>(fld_.M) + 1, Rational(0));
        mod[0] = -Rational(fld_.prime());
        mod[static_cast<std::size_t>(fld_.M)] = 1;  // x^M - p, irreducible by Eisenstein
        detail::QPoly inv = detail::qp_inverse_mod(f, mod);
        inv.resize(static_cast<std::size_t>(fld_.M), Rational(0));
        return Scalar(fld_, std::vector<Rational>(inv.begin(), inv.end()));
    }

    /// Exact valuation: min over nonzero coefficients of v_p(a_i) + i/M.
    /// The M candidate terms have distinct fractional parts, so the minimum is exact.
    std::optional<Rational> valuation() const {
        std::optional<Rational> v;
        Integer p = fld_.prime();
        for (int i = 0; i < fld_.M; ++i) {
            if (a_[i] == 0) continue;
            Rational vi = Rational(padic_val(a_[i], p)) + Rational(i, fld_.M);
            if (!v || vi < *v) v = vi;
        }
        return v;  // nullopt for 0
    }

    Magnitude abs() const {
        auto v = valuation();
        return v ? Magnitude::from_valuation(*v) : Magnitude::zero();
    }

    /// Image in F_p = O/m; requires valuation >= 0.
    std::int64_t residue() const {
        auto v = valuation();
        if (v && *v < 0) throw NegativeValuation();
        if (!v) return 0;
        // Only the a_0 term can contribute: for i >= 1, v_p(a_i) + i/M > 0 strictly.
        if (padic_val(a_[0] == 0 ? Rational(1) : a_[0], fld_.prime()) > 0 || a_[0] == 0) return 0;
        Integer p = fld_.prime();
        Integer n = rat_num(a_[0]) % p, d = rat_den(a_[0]) % p;
        Integer r = ((n * mod_inverse(d, p)) % p + p) % p;
        return static_cast<std::int64_t>(r);
    }

    /// Lift of a residue class back into K_M.
    static Scalar lift(const Field& fld, std::int64_t c) {
        return Scalar(fld, Rational(((c % fld.p) + fld.p) % fld.p));
    }

    /// Keeps only the digits of valuation < q; the remainder has valuation >= q.
    /// The canonical representative of a disk center at radius level q.
    Scalar truncate(const Rational& q) const {
        Scalar r(fld_);
        Integer p = fld_.prime();
        for (int i = 0; i < fld_.M; ++i) {
            if (a_[i] == 0) continue;
            // keep the part of a_i with v_p < ceil(q - i/M)
            Integer e = rat_ceil(q - Rational(i, fld_.M));
            long w = padic_val(a_[i], p);
            if (Integer(w) >= e) continue;  // whole term is above the level
            // a_i = p^w * x / y with p coprime to x, y
            Rational u = a_[i] / rat_pow(p, w);
            Integer x = rat_num(u), y = rat_den(u);
            Integer pk = int_pow(p, static_cast<unsigned long>(e - w));
            Integer t = ((x % pk) * mod_inverse(y % pk, pk)) % pk;
            t = (t + pk) % pk;
            r.a_[i] = Rational(t) * rat_pow(p, w);
        }
        return r;
    }

  private:
    void check(const Scalar& o) const {
        if (!(fld_ == o.fld_)) throw Error("scalars from different fields");
    }
    Field fld_;
    std::vector<Rational> a_;
};

inline Magnitude abs(const Scalar& x) { return x.abs(); }

/// A certified real threshold of the form p^(-(a + b*E_p)), or exactly zero.
/// E_p = sum 1/(p^i - 1); comparisons with b != 0 use shrinking rational intervals.
struct LogThreshold {
    bool zero = false;
    Rational a{0};
    Rational b{0};

    static LogThreshold exact(const Rational& a) { return LogThreshold{false, a, Rational(0)}; }
    static LogThreshold zero_value() { return LogThreshold{true, Rational(0), Rational(0)}; }

    LogThreshold times_magnitude(const Magnitude& m) const {
        if (zero || m.is_zero()) return zero_value();
        return LogThreshold{false, a + m.valuation(), b};
    }
    LogThreshold power(const Rational& e) const {
        if (zero) return zero_value();
        return LogThreshold{false, a * e, b * e};
    }
};

struct EpInterval {
    Rational lo, hi;  // lo <= E_p <= hi
};

/// N-term partial sum of E_p with the tail bound 2/((p-1) p^N).
inline EpInterval e_p_interval(std::int64_t p, int terms) {
    if (p < 3) throw InvalidPrime("E_p interval requires p >= 3");
    if (terms < 1) throw Error("e_p_interval requires at least one term");
    Integer P(p);
    Rational s(0);
    Integer pk(1);
    for (int i = 1; i <= terms; ++i) {
        pk *= P;
        s += Rational(1, pk - 1);
    }
    Rational tail = Rational(2) / (Rational(P - 1) * Rational(pk));
    return EpInterval{s, s + tail};
}

enum class Compare { Less, GreaterEq, Undecided };

/// Certified comparison of the exponent x against a + b*E_p.
/// Returns the ordering of p^(-x) versus the threshold value.
inline Compare compare_exponent_to_threshold(std::int64_t p, const Rational& x,
                                             const LogThreshold& t, int max_terms) {
    if (t.b == 0) return x > t.a ? Compare::Less : Compare::GreaterEq;
    for (int n = 1; n <= max_terms; n *= 2) {
        EpInterval e = e_p_interval(p, n);
        Rational lo = t.a + (t.b > 0 ? t.b * e.lo : t.b * e.hi);
        Rational hi = t.a + (t.b > 0 ? t.b * e.hi : t.b * e.lo);
        if (x > hi) return Compare::Less;
        if (x <= lo) return Compare::GreaterEq;
        if (n == max_terms) break;
    }
    return Compare::Undecided;
}

/// m < t  ->  Less; m >= t -> GreaterEq (ties count as GreaterEq).
inline Compare threshold_compare(std::int64_t p, const Magnitude& m, const LogThreshold& t,
                                 int max_terms = 64) {
    if (t.zero) return Compare::GreaterEq;  // every magnitude is >= 0
    if (m.is_zero()) return Compare::Less;  // 0 < p^(-anything)
    if (m.is_infinite()) return Compare::GreaterEq;
    return compare_exponent_to_threshold(p, m.valuation(), t, max_terms);
}

/// Certified sign of (a1 + b1 E_p) - (a2 + b2 E_p): -1, 0 never certified, +1.
/// Returns nullopt when undecided at the precision cap.
inline std::optional<int> threshold_exponent_compare(std::int64_t p, const LogThreshold& t1,
                                                     const LogThreshold& t2, int max_terms = 64) {
    Rational da = t1.a - t2.a, db = t1.b - t2.b;
    if (db == 0) return da == 0 ? std::optional<int>(0) : (da > 0 ? 1 : -1);
    for (int n = 1; n <= max_terms; n *= 2) {
        EpInterval e = e_p_interval(p, n);
        Rational lo = da + (db > 0 ? db * e.lo : db * e.hi);
        Rational hi = da + (db > 0 ? db * e.hi : db * e.lo);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (n == max_terms) break;
    }
    return std::nullopt;
}

}  // namespace umi
