#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "umi/poly.hpp"

namespace umi {

/// Dense polynomial over the residue field F_p, lowest degree first.
struct FpPoly {
    std::int64_t p;
    std::vector<std::int64_t> c;

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_constant() const { return c.size() <= 1; }
    std::int64_t constant_value() const { return c.empty() ? 0 : c[0]; }
};

inline std::int64_t fp_inv(std::int64_t a, std::int64_t p) {
    return static_cast<std::int64_t>(mod_inverse(Integer(((a % p) + p) % p), Integer(p)));
}

inline FpPoly fp_divrem(FpPoly a, const FpPoly& b, FpPoly* quot = nullptr) {
    std::int64_t p = a.p;
    FpPoly q{p, {}};
    if (a.degree() >= b.degree() && !b.is_zero())
        q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    std::int64_t linv = fp_inv(b.c.back(), p);
    while (!a.is_zero() && a.degree() >= b.degree()) {
        std::size_t k = static_cast<std::size_t>(a.degree() - b.degree());
        std::int64_t f = (a.c.back() * linv) % p;
        q.c[k] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i)
            a.c[k + i] = ((a.c[k + i] - f * b.c[i]) % p + p) % p;
        a.trim();
    }
    if (quot) *quot = q;
    return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = fp_divrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        std::int64_t linv = fp_inv(a.c.back(), a.p);
        for (auto& x : a.c) x = (x * linv) % a.p;
    }
    return a;
}

/// Coefficientwise residue; requires every coefficient to have valuation >= 0.
inline FpPoly fp_reduce(const Poly& f) {
    FpPoly r{f.field().p, {}};
    r.c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) r.c.push_back(a.residue());
    r.trim();
    return r;
}

/// Evaluation of f at a point of P^1: a field value or infinity.
struct ProjValue {
    std::optional<Scalar> value;  // nullopt = infinity
    bool is_infinity() const { return !value.has_value(); }
};

/// Rational function over K_M in normalized form: gcd(num, den) = 1, den monic.
class RatFunc {
  public:
    RatFunc(const Poly& g, const Poly& h) : num_(g.field()), den_(h.field()) {
        if (h.is_zero()) throw ZeroDenominator();
        Poly d = poly_gcd(g, h);
        Poly n2 = g, h2 = h;
        if (d.degree() > 0) {
            n2 = g.divrem(d).first;
            h2 = h.divrem(d).first;
        }
        Scalar linv = h2.leading().inverse();
        num_ = n2 * linv;
        den_ = h2 * linv;
    }
    static RatFunc from_poly(const Poly& g) {
        return RatFunc(g, Poly::constant(Scalar::one(g.field())));
    }

    const Field& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_zero() const { return num_.is_zero(); }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    ProjValue eval(const Scalar& x) const {
        Scalar h = den_.eval(x);
        if (h.is_zero()) return ProjValue{std::nullopt};
        return ProjValue{num_.eval(x) / h};
    }

    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator*(const RatFunc& o) const {
        return RatFunc(num_ * o.num_, den_ * o.den_);
    }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw DivisionByZero();
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }
    RatFunc operator-(const Scalar& c) const { return RatFunc(num_ - den_ * c, den_); }
    RatFunc reciprocal() const {
        if (is_zero()) throw DivisionByZero();
        return RatFunc(den_, num_);
    }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - den_.derivative() * num_, den_ * den_);
    }

    /// f(a + s*w) as a function of w.
    RatFunc compose_affine(const Scalar& a, const Scalar& s) const {
        return RatFunc(num_.compose_affine(a, s), den_.compose_affine(a, s));
    }

  private:
    Poly num_, den_;
};

/// g'h - h'g for the normalized pair; its disk root counts define N_ram.
inline Poly wronskian(const RatFunc& f) {
    return f.num().derivative() * f.den() - f.den().derivative() * f.num();
}

struct ReducedRatFunc {
    enum class Kind { Nonconstant, FiniteConstant, InfinityConstant };
    Kind kind;
    FpPoly num, den;          // gcd-reduced, meaningful for Nonconstant
    std::int64_t constant{0};  // meaningful for FiniteConstant
};

namespace detail {

/// Reduction after a *common* rescale putting max(|num|, |den|) content at 1.
/// Used by the pushforward; unlike reduce_ratfunc it may see one side vanish.
inline ReducedRatFunc reduce_common_scaled(const Poly& num, const Poly& den) {
    FpPoly rn = fp_reduce(num), rd = fp_reduce(den);
    if (rd.is_zero()) return {ReducedRatFunc::Kind::InfinityConstant, {}, {}, 0};
    if (rn.is_zero()) return {ReducedRatFunc::Kind::FiniteConstant, {}, {}, 0};
    FpPoly g = fp_gcd(rn, rd);
    if (g.degree() > 0) {
        FpPoly q;
        fp_divrem(rn, g, &q);
        rn = q;
        fp_divrem(rd, g, &q);
        rd = q;
    }
    if (rn.is_constant() && rd.is_constant()) {
        std::int64_t c = (rn.constant_value() * fp_inv(rd.constant_value(), rn.p)) % rn.p;
        return {ReducedRatFunc::Kind::FiniteConstant, {}, {}, c};
    }
    return {ReducedRatFunc::Kind::Nonconstant, rn, rd, 0};
}

inline std::optional<Rational> gauss_content_valuation(const Poly& f) {
    std::optional<Rational> v;
    for (const auto& c : f.coeffs()) {
        auto vc = c.valuation();
        if (vc && (!v || *vc < *v)) v = vc;
    }
    return v;
}

}  // namespace detail

/// Coefficientwise residue of a unit-content fraction, gcd-reduced over F_p[z].
/// Requires max coefficient magnitude of num and of den both equal to 1.
inline ReducedRatFunc reduce_ratfunc(const RatFunc& f) {
    auto vn = detail::gauss_content_valuation(f.num());
    auto vd = detail::gauss_content_valuation(f.den());
    if (!vn || *vn != 0 || !vd || *vd != 0) throw NonUnitContent();
    return detail::reduce_common_scaled(f.num(), f.den());
}

}  // namespace umi
