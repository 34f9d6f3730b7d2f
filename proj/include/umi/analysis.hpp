#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "umi/berkovich.hpp"
#include "umi/piecewise.hpp"

namespace umi {

// ---------------------------------------------------------------------------
// Gauss norms

/// -log_p of max |c_i| r^i for the expansion of f at `center`, r = p^-q.
/// Returns nullopt for the zero polynomial (norm 0).
inline std::optional<Rational> poly_norm_valuation(const Poly& f, const Scalar& center,
                                                   const Rational& q) {
    if (f.is_zero()) return std::nullopt;
    Poly g = f.taylor_shift(center);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        auto v = g.coeffs()[i].valuation();
        if (!v) continue;
        Rational cand = *v + q * static_cast<long>(i);
        if (!best || cand < *best) best = cand;
    }
    return best;
}

/// Gauss norm of a rational function at a type II point.
inline Magnitude gauss_norm(const RatFunc& f, const BerkPoint& nu) {
    if (!nu.is_type2()) throw TypeMismatch("Gauss norm needs a type II point");
    auto vn = poly_norm_valuation(f.num(), nu.center(), nu.log_radius());
    if (!vn) return Magnitude::zero();
    auto vd = poly_norm_valuation(f.den(), nu.center(), nu.log_radius());
    return Magnitude::from_valuation(*vn - *vd);
}

inline Magnitude gauss_norm(const Poly& f, const BerkPoint& nu) {
    auto v = poly_norm_valuation(f, nu.center(), nu.log_radius());
    return v ? Magnitude::from_valuation(*v) : Magnitude::zero();
}

// ---------------------------------------------------------------------------
// Valuation profiles along rays

/// q |-> -log_p ||f||_{nu(center, p^-q)} as a piecewise-linear function.
inline PiecewiseLinear poly_norm_profile(const Poly& f, const Scalar& center) {
    if (f.is_zero()) throw ZeroPolynomial();
    Poly g = f.taylor_shift(center);
    std::vector<std::pair<Rational, Rational>> lines;  // (slope = i, intercept = v(c_i))
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
        auto v = g.coeffs()[i].valuation();
        if (v) lines.emplace_back(Rational(static_cast<long>(i)), *v);
    }
    return PiecewiseLinear::lower_envelope(std::move(lines));
}

inline PiecewiseLinear ratfunc_norm_profile(const RatFunc& f, const Scalar& center) {
    if (f.is_zero()) throw ZeroFunction();
    return poly_norm_profile(f.num(), center) - poly_norm_profile(f.den(), center);
}

/// -log_p of the spherical radius of nu(center, p^-q), as a function of q.
inline PiecewiseLinear spherical_radius_profile(const Scalar& center) {
    // q_r = q - min(0, 2q, 2 v(center))
    std::vector<std::pair<Rational, Rational>> lines = {{Rational(0), Rational(0)},
                                                        {Rational(2), Rational(0)}};
    auto va = center.valuation();
    if (va) lines.emplace_back(Rational(0), Rational(2 * *va));
    return PiecewiseLinear::line(Rational(1), Rational(0), Rational(0)) -
           PiecewiseLinear::lower_envelope(std::move(lines));
}

/// Exported profile: exact breakpoints, integer slopes, value at the left edge.
struct ProfilePiece {
    Rational q_from, q_to;
    long slope;
    Rational v_at_from;
};

struct Profile {
    Scalar center;
    Rational q_lo, q_hi;
    std::vector<ProfilePiece> pieces;

    Rational value(const Rational& q) const {
        for (const auto& p : pieces)
            if (q >= p.q_from && q <= p.q_to)
                return p.v_at_from + Rational(p.slope) * (q - p.q_from);
        throw Error("profile evaluated out of range");
    }
};

inline Profile export_profile(const PiecewiseLinear& pl, const Scalar& center,
                              const Rational& q_lo, const Rational& q_hi) {
    if (!(q_lo < q_hi)) throw Error("profile needs q_lo < q_hi");
    std::vector<Rational> cuts = {q_lo};
    for (const auto& b : pl.breakpoints())
        if (b > q_lo && b < q_hi) cuts.push_back(b);
    cuts.push_back(q_hi);
    Profile prof{center, q_lo, q_hi, {}};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational s = pl.slope_right(cuts[i]);
        if (rat_den(s) != 1) throw Error("profile slope is not an integer");
        prof.pieces.push_back(
            {cuts[i], cuts[i + 1], static_cast<long>(rat_num(s)), pl.eval(cuts[i])});
    }
    return prof;
}

/// Valuation profile of q |-> ||f||_{nu(center, p^-q)} over [q_lo, q_hi].
/// Piece slopes are integers, equal to N_0 - N_infty of the closed disk.
inline Profile norm_profile(const RatFunc& f, const Scalar& center, const Rational& q_lo,
                            const Rational& q_hi) {
    return export_profile(ratfunc_norm_profile(f, center), center, q_lo, q_hi);
}

// ---------------------------------------------------------------------------
// Pushforward

struct PushResult {
    BerkPoint image;
    int descent_steps;
};

/// f_*(nu) for a type II point with lattice radius: the unique point nu(b, s)
/// with ||f - c||_nu = max(s, |b - c|) for all scalars c. Computed by
/// translating to the Gauss point and descending one residue digit at a time.
inline PushResult pushforward(const RatFunc& f, const BerkPoint& nu, int cap_per_m = 64) {
    if (f.is_constant()) throw ConstantFunction();
    if (!nu.is_type2()) throw TypeMismatch("pushforward needs a type II point");
    const Field& fld = f.field();
    if (!fld.in_value_group(nu.log_radius()))
        throw UnrepresentableRadius("radius exponent outside (1/M)Z");
    long qm = static_cast<long>(rat_num(nu.log_radius() * fld.M));
    RatFunc g = f.compose_affine(nu.center(), Scalar::pi_power(fld, qm));
    Mobius psi = Mobius::identity(fld);
    int cap = cap_per_m * fld.M;
    int steps = 0;
    for (;; ++steps) {
        if (steps > cap)
            throw IterationCapExceeded("pushforward digit descent exceeded " +
                                       std::to_string(cap) + " steps");
        auto vn = detail::gauss_content_valuation(g.num());
        auto vd = detail::gauss_content_valuation(g.den());
        Rational m = std::min(*vn, *vd);
        Scalar u = Scalar::pi_power(fld, -static_cast<long>(rat_num(m * fld.M)));
        auto red = detail::reduce_common_scaled(g.num() * u, g.den() * u);
        if (red.kind == ReducedRatFunc::Kind::Nonconstant) break;
        if (red.kind == ReducedRatFunc::Kind::InfinityConstant) {
            psi = psi.compose(Mobius::inversion(fld));
            g = g.reciprocal();
            continue;
        }
        // finite constant digit c: peel it off and rescale
        Scalar c = Scalar::lift(fld, red.constant);
        RatFunc h = g - c;
        auto vh = detail::gauss_content_valuation(h.num());
        if (!vh) throw ConstantFunction();  // f was the constant c
        Rational step_val = *vh - *detail::gauss_content_valuation(h.den());
        Scalar us = Scalar::pi_power(fld, static_cast<long>(rat_num(step_val * fld.M)));
        psi = psi.compose(Mobius(us, c, Scalar::zero(fld), Scalar::one(fld)));
        g = RatFunc(h.num() * us.inverse(), h.den());
    }
    return PushResult{mobius_push(psi, BerkPoint::gauss(fld)), steps};
}

namespace detail {

// c with |x - c| < p^-q: the digits of x of valuation <= q.
inline Scalar truncate_through(const Scalar& x, const Rational& q) {
    return x.truncate(open_center_level(x.field(), q));
}

// Core of the pushforward equality test, for g with g(z) finite:
// g_*(nu(z, p^-q)) = nu(0, p^-t)?
inline bool pushes_to_zero_disk(const RatFunc& g, const Scalar& z, const Rational& q,
                                const Rational& t) {
    auto v1 = poly_norm_valuation(g.num(), z, q);
    if (!v1) return false;
    if (*v1 - *poly_norm_valuation(g.den(), z, q) != t) return false;
    Scalar c = truncate_through(*g.eval(z).value, t);
    RatFunc h = g - c;
    auto v2 = poly_norm_valuation(h.num(), z, q);
    if (!v2) return false;
    return *v2 - *poly_norm_valuation(h.den(), z, q) == t;
}

}  // namespace detail

/// Exact test f_*(nu(z, p^-q)) == nu1, valid for any rational q (the radius
/// need not lie in the value lattice).
inline bool pushes_to(const RatFunc& f, const Scalar& z, const Rational& q,
                      const BerkPoint& nu1) {
    if (f.is_constant()) throw ConstantFunction();
    if (!nu1.is_type2()) return false;
    RatFunc h = f - nu1.center();
    const Rational& t = nu1.log_radius();
    if (!h.eval(z).is_infinity()) return detail::pushes_to_zero_disk(h, z, q, t);
    return detail::pushes_to_zero_disk(h.reciprocal(), z, q, Rational(-t));
}

inline bool pushes_to(const RatFunc& f, const BerkPoint& nu, const BerkPoint& nu1) {
    return pushes_to(f, nu.center(), nu.log_radius(), nu1);
}

// ---------------------------------------------------------------------------
// Spherical derivative, L, G

/// |f'(a)| / max(1, |f(a)|^2), with the 1/f convention at poles.
inline Magnitude spherical_derivative_point(const RatFunc& f, const ProjPoint& a) {
    if (a.is_infinity()) {
        // precompose with 1/z and read off at 0
        const Field& fld = f.field();
        int n = std::max(f.num().degree(), f.den().degree());
        std::vector<Scalar> rn(static_cast<std::size_t>(n) + 1, Scalar::zero(fld));
        std::vector<Scalar> rd(static_cast<std::size_t>(n) + 1, Scalar::zero(fld));
        for (int i = 0; i <= f.num().degree(); ++i)
            rn[static_cast<std::size_t>(n - i)] = f.num()[static_cast<std::size_t>(i)];
        for (int i = 0; i <= f.den().degree(); ++i)
            rd[static_cast<std::size_t>(n - i)] = f.den()[static_cast<std::size_t>(i)];
        return spherical_derivative_point(RatFunc(Poly(fld, rn), Poly(fld, rd)),
                                          ProjPoint(Scalar::zero(fld)));
    }
    ProjValue fa = f.eval(a.value());
    if (fa.is_infinity()) return spherical_derivative_point(f.reciprocal(), a);
    Magnitude d = abs(*f.derivative().eval(a.value()).value);
    Magnitude m = Magnitude::max(Magnitude::one(), abs(*fa.value).pow(2));
    return d / m;
}

/// ||f'||_nu / max(1, ||f||_nu^2).
inline Magnitude spherical_derivative_nu(const RatFunc& f, const BerkPoint& nu) {
    if (f.is_constant()) throw ConstantFunction();
    Magnitude d = gauss_norm(f.derivative(), nu);
    Magnitude m = Magnitude::max(Magnitude::one(), gauss_norm(f, nu).pow(2));
    return d / m;
}

/// L(f, nu) = r(nu) * f^#(nu), the relative boundary length analogue.
inline Magnitude boundary_length_L(const RatFunc& f, const BerkPoint& nu) {
    return spherical_radius(nu) * spherical_derivative_nu(f, nu);
}

/// G(f, alpha, nu) = (r(nu) ||g'h - h'g||)^2 / (||g|| ||g - a h|| ||g - h|| ||h||),
/// the homogeneous form, finite and positive at every type II point.
inline Magnitude g_value(const RatFunc& f, const Scalar& alpha, const BerkPoint& nu) {
    if (alpha.is_zero() || alpha == Scalar::one(alpha.field())) throw InvalidAlpha();
    if (f.is_constant()) throw ConstantFunction();
    Magnitude top = spherical_radius(nu) * gauss_norm(wronskian(f), nu);
    Magnitude bot = gauss_norm(f.num(), nu) * gauss_norm(f.num() - f.den() * alpha, nu) *
                    gauss_norm(f.num() - f.den(), nu) * gauss_norm(f.den(), nu);
    return top.pow(2) / bot;
}

// ---------------------------------------------------------------------------
// Counting functions

struct CountTarget {
    enum class Kind { Value, Infinity, Ramification } kind;
    std::optional<Scalar> value;

    static CountTarget at(const Scalar& b) { return {Kind::Value, b}; }
    static CountTarget infinity() { return {Kind::Infinity, std::nullopt}; }
    static CountTarget ramification() { return {Kind::Ramification, std::nullopt}; }
};

/// N_b(a, r) / N_ram(a, r): roots of f = b, poles, or ramification points in a disk.
inline long counts(const RatFunc& f, const CountTarget& b, const Scalar& center,
                   const Rational& log_radius, bool closed) {
    if (f.is_constant()) throw ConstantFunction();
    Poly target = f.den();
    switch (b.kind) {
        case CountTarget::Kind::Value:
            target = f.num() - f.den() * *b.value;
            break;
        case CountTarget::Kind::Infinity:
            target = f.den();
            break;
        case CountTarget::Kind::Ramification:
            target = wronskian(f);
            break;
    }
    return count_roots(target, center, log_radius, closed);
}

/// Valuation profile of G along the ray at `center`; per-piece slope equals
/// 2 + 2 N_ram - (N_0 + N_alpha + N_1 + N_infty) inside the unit disk.
inline Profile g_profile(const RatFunc& f, const Scalar& alpha, const Scalar& center,
                         const Rational& q_lo, const Rational& q_hi) {
    if (alpha.is_zero() || alpha == Scalar::one(alpha.field())) throw InvalidAlpha();
    if (f.is_constant()) throw ConstantFunction();
    PiecewiseLinear top =
        (spherical_radius_profile(center) + poly_norm_profile(wronskian(f), center)).scaled(2);
    PiecewiseLinear bot = poly_norm_profile(f.num(), center) +
                          poly_norm_profile(f.num() - f.den() * alpha, center) +
                          poly_norm_profile(f.num() - f.den(), center) +
                          poly_norm_profile(f.den(), center);
    return export_profile(top - bot, center, q_lo, q_hi);
}

// ---------------------------------------------------------------------------
// Preimages along a ray

/// All q in [q_lo, q_hi] with f_*(nu(seed, p^-q)) = nu1, found by solving the
/// piecewise-linear probe conditions exactly and verifying each candidate.
inline std::vector<BerkPoint> preimages_on_ray(const RatFunc& f, const BerkPoint& nu1,
                                               const Scalar& seed, const Rational& q_lo,
                                               const Rational& q_hi) {
    if (f.is_constant()) throw ConstantFunction();
    if (!nu1.is_type2()) throw TypeMismatch("preimage search needs a type II target");
    RatFunc h = f - nu1.center();
    Rational t = nu1.log_radius();
    if (h.eval(seed).is_infinity()) {
        h = h.reciprocal();
        t = -t;
    }
    Scalar c = detail::truncate_through(*h.eval(seed).value, t);
    PiecewiseLinear p1 = ratfunc_norm_profile(h, seed);
    RatFunc h2 = h - c;
    std::vector<Rational> candidates;
    auto s1 = p1.solve_equal(t, q_lo, q_hi);
    for (const auto& q : s1.points) candidates.push_back(q);
    if (!s1.intervals.empty() && !h2.is_zero()) {
        PiecewiseLinear p2 = ratfunc_norm_profile(h2, seed);
        for (const auto& iv : s1.intervals) {
            auto s2 = p2.solve_equal(t, iv.first, iv.second);
            for (const auto& q : s2.points) candidates.push_back(q);
            for (const auto& jv : s2.intervals) {
                // a common interval would mean infinitely many preimages
                if (jv.second > jv.first)
                    throw Error("preimage locus is not discrete; this cannot happen");
                candidates.push_back(jv.first);
            }
            candidates.push_back(iv.first);
            candidates.push_back(iv.second);
        }
    } else {
        for (const auto& iv : s1.intervals) {
            candidates.push_back(iv.first);
            candidates.push_back(iv.second);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<BerkPoint> out;
    for (const auto& q : candidates) {
        if (q < q_lo || q > q_hi) continue;
        if (pushes_to(f, seed, q, nu1)) out.push_back(BerkPoint::type2(seed, q));
    }
    return out;
}

}  // namespace umi
