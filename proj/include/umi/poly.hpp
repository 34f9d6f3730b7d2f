#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "umi/field.hpp"

namespace umi {

/// Polynomial over K_M, coefficients lowest degree first, no trailing zeros.
class Poly {
  public:
    explicit Poly(const Field& fld) : fld_(fld) {}
    Poly(const Field& fld, std::vector<Scalar> coeffs) : fld_(fld), c_(std::move(coeffs)) {
        trim();
    }
    static Poly zero(const Field& fld) { return Poly(fld); }
    static Poly constant(const Scalar& a) { return Poly(a.field(), {a}); }
    static Poly z(const Field& fld) {
        return Poly(fld, {Scalar::zero(fld), Scalar::one(fld)});
    }
    /// c * z^k
    static Poly monomial(const Scalar& c, int k) {
        std::vector<Scalar> v(static_cast<std::size_t>(k) + 1, Scalar::zero(c.field()));
        v.back() = c;
        return Poly(c.field(), std::move(v));
    }

    const Field& field() const { return fld_; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_constant() const { return c_.size() <= 1; }

    const Scalar& operator[](std::size_t i) const { return c_[i]; }
    Scalar coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Scalar::zero(fld_);
    }
    const Scalar& leading() const {
        if (is_zero()) throw ZeroPolynomial();
        return c_.back();
    }

    bool operator==(const Poly& o) const { return fld_ == o.fld_ && c_ == o.c_; }

    Poly operator+(const Poly& o) const {
        std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(fld_));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return Poly(fld_, std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator-() const {
        std::vector<Scalar> r(c_);
        for (auto& x : r) x = -x;
        return Poly(fld_, std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return zero(fld_);
        std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(fld_));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return Poly(fld_, std::move(r));
    }
    Poly operator*(const Scalar& s) const {
        std::vector<Scalar> r(c_);
        for (auto& x : r) x = x * s;
        return Poly(fld_, std::move(r));
    }

    Poly derivative() const {
        if (c_.size() <= 1) return zero(fld_);
        std::vector<Scalar> r;
        r.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.push_back(c_[i] * Scalar::from_int(fld_, static_cast<long>(i)));
        return Poly(fld_, std::move(r));
    }

    Scalar eval(const Scalar& x) const {
        Scalar r = Scalar::zero(fld_);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    /// Coefficients of f(w + a) in w, by in-place synthetic division.
    Poly taylor_shift(const Scalar& a) const {
        if (a.is_zero() || is_zero()) return *this;
        std::vector<Scalar> r(c_);
        std::size_t n = r.size();
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t i = n - 1; i-- > j;) r[i] = r[i] + a * r[i + 1];
        return Poly(fld_, std::move(r));
    }

    /// Coefficients of f(a + s*w) in w.
    Poly compose_affine(const Scalar& a, const Scalar& s) const {
        Poly g = taylor_shift(a);
        std::vector<Scalar> r(g.c_);
        Scalar pw = Scalar::one(fld_);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = r[i] * pw;
            pw = pw * s;
        }
        return Poly(fld_, std::move(r));
    }

    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw DivisionByZero();
        Poly r = *this;
        std::vector<Scalar> q;
        if (r.degree() >= d.degree())
            q.assign(static_cast<std::size_t>(r.degree() - d.degree()) + 1,
                     Scalar::zero(fld_));
        Scalar lead_inv = d.leading().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t k = static_cast<std::size_t>(r.degree() - d.degree());
            Scalar c = r.leading() * lead_inv;
            q[k] = c;
            std::vector<Scalar> rc(r.c_);
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                rc[k + i] = rc[k + i] - c * d.c_[i];
            rc.pop_back();  // leading term cancels exactly
            r = Poly(fld_, std::move(rc));
        }
        return {Poly(fld_, std::move(q)), r};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inverse();
    }

    /// Order of vanishing at 0.
    int order_at_zero() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<int>(i);
        return -1;  // zero polynomial
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    Field fld_;
    std::vector<Scalar> c_;
};

/// Monic gcd computed by the Euclidean algorithm over the field K_M.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = b.monic();  // keeps coefficient growth in check
    }
    return a.is_zero() ? a : a.monic();
}

/// One segment of the Newton polygon: `length` roots of valuation -slope.
struct NewtonSegment {
    Rational slope;
    long length;
    bool operator==(const NewtonSegment&) const = default;
};

/// Lower convex hull of {(i, v(c_i))}; slopes strictly increasing.
/// Roots exactly at the expansion center are recorded by order_at_zero.
struct NewtonPolygon {
    long order_at_zero = 0;
    std::vector<NewtonSegment> segments;

    long total_length() const {
        long t = 0;
        for (const auto& s : segments) t += s.length;
        return t;
    }
};

inline NewtonPolygon newton_polygon(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    std::vector<std::pair<long, Rational>> pts;  // (i, v(c_i)) for nonzero c_i
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        auto v = f.coeffs()[i].valuation();
        if (v) pts.emplace_back(static_cast<long>(i), *v);
    }
    NewtonPolygon np;
    np.order_at_zero = pts.front().first;
    // lower hull, left to right
    std::vector<std::pair<long, Rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a--pt
            if ((b.second - a.second) * (pt.first - a.first) <
                (pt.second - a.second) * (b.first - a.first))
                break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Rational slope =
            (hull[k + 1].second - hull[k].second) / Rational(hull[k + 1].first - hull[k].first);
        long len = hull[k + 1].first - hull[k].first;
        if (!np.segments.empty() && np.segments.back().slope == slope)
            np.segments.back().length += len;
        else
            np.segments.push_back({slope, len});
    }
    return np;
}

/// Number of roots (with multiplicity, in the algebraic closure) with
/// v(root - center) >= q (closed) or > q (open).
inline long count_roots(const Poly& f, const Scalar& center, const Rational& log_radius,
                        bool closed) {
    if (f.is_zero()) throw ZeroPolynomial();
    NewtonPolygon np = newton_polygon(f.taylor_shift(center));
    long n = np.order_at_zero;  // roots at the center itself, valuation infinity
    for (const auto& seg : np.segments) {
        Rational root_val = -seg.slope;
        if (closed ? root_val >= log_radius : root_val > log_radius) n += seg.length;
    }
    return n;
}

}  // namespace umi
