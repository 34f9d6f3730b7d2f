#pragma once

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "umi/ratfunc.hpp"

namespace umi {

/// Point of P^1(K): a field element or infinity.
class ProjPoint {
  public:
    static ProjPoint infinity(const Field& fld) { return ProjPoint(fld); }
    explicit ProjPoint(Scalar v) : fld_(v.field()), value_(std::move(v)) {}

    const Field& field() const { return fld_; }
    bool is_infinity() const { return !value_.has_value(); }
    const Scalar& value() const {
        if (is_infinity()) throw TypeMismatch("infinity has no finite value");
        return *value_;
    }

    /// Homogeneous coordinates [x, y]; infinity is [1, 0].
    std::pair<Scalar, Scalar> homogeneous() const {
        if (is_infinity()) return {Scalar::one(fld_), Scalar::zero(fld_)};
        return {*value_, Scalar::one(fld_)};
    }

    bool operator==(const ProjPoint& o) const {
        if (is_infinity() != o.is_infinity()) return false;
        return is_infinity() || *value_ == *o.value_;
    }

  private:
    explicit ProjPoint(const Field& fld) : fld_(fld) {}
    Field fld_;
    std::optional<Scalar> value_;
};

inline ProjPoint proj_value_to_point(const Field& fld, const ProjValue& v) {
    return v.is_infinity() ? ProjPoint::infinity(fld) : ProjPoint(*v.value);
}

/// Spherical metric Delta(P1, P2) = |x1 y2 - x2 y1| / (max(|x1|,|y1|) max(|x2|,|y2|)).
inline Magnitude spherical_distance(const ProjPoint& P, const ProjPoint& Q) {
    auto [x1, y1] = P.homogeneous();
    auto [x2, y2] = Q.homogeneous();
    Magnitude num = abs(x1 * y2 - x2 * y1);
    Magnitude d1 = Magnitude::max(abs(x1), abs(y1));
    Magnitude d2 = Magnitude::max(abs(x2), abs(y2));
    return num / (d1 * d2);
}

/// Berkovich point: type I (a point of P^1) or type II (a closed disk).
/// A type II point nu(a, p^-q) stores the canonical truncated center, so
/// structural equality is disk equality.
class BerkPoint {
  public:
    static BerkPoint type1(ProjPoint p) { return BerkPoint(std::move(p)); }
    static BerkPoint type2(const Scalar& center, const Rational& log_radius) {
        return BerkPoint(center.truncate(log_radius), log_radius);
    }
    static BerkPoint gauss(const Field& fld) {
        return type2(Scalar::zero(fld), Rational(0));
    }

    bool is_type1() const { return std::holds_alternative<ProjPoint>(rep_); }
    bool is_type2() const { return !is_type1(); }

    const ProjPoint& point() const {
        if (!is_type1()) throw TypeMismatch("expected a type I point");
        return std::get<ProjPoint>(rep_);
    }
    const Scalar& center() const { return disk().first; }
    const Rational& log_radius() const { return disk().second; }
    Magnitude radius() const { return Magnitude::from_valuation(log_radius()); }

    const Field& field() const {
        return is_type1() ? point().field() : center().field();
    }

    bool operator==(const BerkPoint& o) const {
        if (is_type1() != o.is_type1()) return false;
        if (is_type1()) return point() == o.point();
        return log_radius() == o.log_radius() && center() == o.center();
    }

  private:
    explicit BerkPoint(ProjPoint p) : rep_(std::move(p)) {}
    BerkPoint(Scalar c, Rational q) : rep_(std::make_pair(std::move(c), std::move(q))) {}
    const std::pair<Scalar, Rational>& disk() const {
        if (is_type1()) throw TypeMismatch("expected a type II point");
        return std::get<std::pair<Scalar, Rational>>(rep_);
    }
    std::variant<ProjPoint, std::pair<Scalar, Rational>> rep_;
};

/// Spherical radius r(nu(a, rho)) = rho / max(1, rho^2, |a|^2).
inline Magnitude spherical_radius(const BerkPoint& nu) {
    if (!nu.is_type2()) throw TypeMismatch("spherical radius needs a type II point");
    const Rational& q = nu.log_radius();
    auto va = nu.center().valuation();
    Rational m = std::min(Rational(0), Rational(2 * q));
    if (va) m = std::min(m, Rational(2 * *va));
    return Magnitude::from_valuation(q - m);
}

/// Truncation level pinning the digits of valuation <= q: the first element of
/// the value lattice strictly above q. Canonical centers of open disks keep
/// exactly those digits.
inline Rational open_center_level(const Field& fld, const Rational& q) {
    return Rational(rat_floor(q * fld.M) + 1, fld.M);
}

/// Open or closed disk in P^1(K). A disk containing infinity is stored as the
/// complement of a finite disk; `open` refers to the P^1 disk itself.
struct ProjDisk {
    Scalar center;      // center of the underlying finite disk
    Rational log_radius;
    bool open = true;
    bool complement = false;

    const Field& field() const { return center.field(); }

    static ProjDisk open_disk(const Scalar& c, const Rational& q) {
        return {c.truncate(open_center_level(c.field(), q)), q, true, false};
    }
    static ProjDisk closed_disk(const Scalar& c, const Rational& q) {
        return {c.truncate(q), q, false, false};
    }
    static ProjDisk complement_of_closed(const Scalar& c, const Rational& q) {
        return {c.truncate(q), q, true, true};  // P^1 \ Dbar(c, r): open
    }
    static ProjDisk complement_of_open(const Scalar& c, const Rational& q) {
        return {c.truncate(open_center_level(c.field(), q)), q, false, true};
    }

    // The removed/underlying finite disk is open iff the P^1 disk is closed,
    // for complements; and has the disk's own openness otherwise.
    bool base_open() const { return complement ? !open : open; }

    bool contains(const ProjPoint& P) const {
        if (P.is_infinity()) return complement;
        auto v = (P.value() - center).valuation();
        bool in_base = !v ? true : (base_open() ? *v > log_radius : *v >= log_radius);
        return complement ? !in_base : in_base;
    }

    /// The associated type II boundary point nu(center, radius).
    BerkPoint boundary_point() const { return BerkPoint::type2(center, log_radius); }

    /// A definite point inside the disk: the center, or infinity for complements.
    ProjPoint witness() const {
        return complement ? ProjPoint::infinity(center.field()) : ProjPoint(center);
    }

    bool operator==(const ProjDisk& o) const {
        if (open != o.open || complement != o.complement || log_radius != o.log_radius)
            return false;
        auto d = (center - o.center).valuation();
        if (!d) return true;
        return base_open() ? *d > log_radius : *d >= log_radius;
    }
};

namespace detail {

// Containment of finite (non-complement) disks: B inside A.
// A disk is {v(z - c) >= q} (closed) or {v(z - c) > q} (open).
inline bool finite_disk_contains(const Scalar& cA, const Rational& qA, bool openA,
                                 const Scalar& cB, const Rational& qB, bool openB) {
    bool radius_ok = openA ? (openB ? qB >= qA : qB > qA) : qB >= qA;
    if (!radius_ok) return false;
    auto d = (cB - cA).valuation();
    if (!d) return true;
    return openA ? *d > qA : *d >= qA;
}

}  // namespace detail

/// B subset of A, as subsets of P^1(K) over the algebraic closure.
inline bool disk_contains(const ProjDisk& A, const ProjDisk& B) {
    if (!A.complement && !B.complement)
        return detail::finite_disk_contains(A.center, A.log_radius, A.base_open(), B.center,
                                            B.log_radius, B.base_open());
    if (!A.complement && B.complement) return false;  // finite disks never contain infinity
    if (A.complement && !B.complement) {
        // P^1 \ X contains B  <=>  B disjoint from X  <=>  not nested either way
        ProjDisk X{A.center, A.log_radius, A.base_open(), false};
        return !detail::finite_disk_contains(X.center, X.log_radius, X.base_open(), B.center,
                                             B.log_radius, B.base_open()) &&
               !detail::finite_disk_contains(B.center, B.log_radius, B.base_open(), X.center,
                                             X.log_radius, X.base_open());
    }
    // comp(X) contains comp(Y) <=> X subset of Y
    return detail::finite_disk_contains(B.center, B.log_radius, B.base_open(), A.center,
                                        A.log_radius, A.base_open());
}

/// Two finite disks are nested or disjoint; a finite disk meets P^1 \ X
/// unless it lies inside X; two complements always share infinity.
inline bool disk_intersects(const ProjDisk& A, const ProjDisk& B) {
    if (A.complement && B.complement) return true;
    if (A.complement != B.complement) {
        const ProjDisk& fin = A.complement ? B : A;
        const ProjDisk& comp = A.complement ? A : B;
        ProjDisk X{comp.center, comp.log_radius, comp.base_open(), false};
        return !disk_contains(X, fin);
    }
    return disk_contains(A, B) || disk_contains(B, A);
}

/// Linear fractional transformation, as a 2x2 matrix with nonzero determinant.
class Mobius {
  public:
    Mobius(Scalar a, Scalar b, Scalar c, Scalar d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (det().is_zero()) throw DegenerateTriple();
    }
    static Mobius identity(const Field& fld) {
        return Mobius(Scalar::one(fld), Scalar::zero(fld), Scalar::zero(fld),
                      Scalar::one(fld));
    }
    static Mobius translation(const Scalar& t) {
        const Field& f = t.field();
        return Mobius(Scalar::one(f), t, Scalar::zero(f), Scalar::one(f));
    }
    static Mobius scaling(const Scalar& s) {
        const Field& f = s.field();
        return Mobius(s, Scalar::zero(f), Scalar::zero(f), Scalar::one(f));
    }
    static Mobius inversion(const Field& fld) {
        return Mobius(Scalar::zero(fld), Scalar::one(fld), Scalar::one(fld),
                      Scalar::zero(fld));
    }

    const Field& field() const { return a_.field(); }
    Scalar det() const { return a_ * d_ - b_ * c_; }
    const Scalar& a() const { return a_; }
    const Scalar& b() const { return b_; }
    const Scalar& c() const { return c_; }
    const Scalar& d() const { return d_; }

    Mobius compose(const Mobius& o) const {  // this after o
        return Mobius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                      c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
    }
    Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }

    ProjPoint apply(const ProjPoint& P) const {
        auto [x, y] = P.homogeneous();
        Scalar xn = a_ * x + b_ * y;
        Scalar yn = c_ * x + d_ * y;
        if (yn.is_zero()) return ProjPoint::infinity(field());
        return ProjPoint(xn / yn);
    }

    /// eta o f as a rational function.
    RatFunc apply(const RatFunc& f) const {
        return RatFunc(f.num() * a_ + f.den() * b_, f.num() * c_ + f.den() * d_);
    }

    /// True iff a scalar multiple has all entries of valuation >= 0 and unit determinant.
    bool in_pgl2_o() const {
        std::optional<Rational> m;
        for (const Scalar* s : {&a_, &b_, &c_, &d_}) {
            auto v = s->valuation();
            if (v && (!m || *v < *m)) m = v;
        }
        Rational dv = *det().valuation();
        return dv == 2 * *m;
    }

  private:
    Scalar a_, b_, c_, d_;
};

namespace detail {

// Image of nu(a, p^-q) under 1/z (Lemma 4.3 proof):
// nu(0, rho) -> nu(0, 1/rho); |a| > rho -> nu(1/a, rho/|a|^2).
inline std::pair<Scalar, Rational> invert_disk(const Scalar& a, const Rational& q) {
    auto va = a.valuation();
    if (!va || *va >= q)  // 0 lies in the closed disk
        return {Scalar::zero(a.field()), -q};
    return {a.inverse(), q - 2 * *va};
}

}  // namespace detail

/// Pushforward of a Berkovich point under a Mobius map.
inline BerkPoint mobius_push(const Mobius& eta, const BerkPoint& nu) {
    if (nu.is_type1()) return BerkPoint::type1(eta.apply(nu.point()));
    Scalar a = nu.center();
    Rational q = nu.log_radius();
    if (eta.c().is_zero()) {
        // z -> (a/d) z + b/d
        Scalar lam = eta.a() / eta.d();
        Scalar beta = eta.b() / eta.d();
        return BerkPoint::type2(lam * a + beta, q + *lam.valuation());
    }
    // z -> A/C + ((BC - AD)/C^2) * 1/(z + D/C)
    Scalar t1 = eta.d() / eta.c();
    auto [ci, qi] = detail::invert_disk(a + t1, q);
    Scalar mu = (eta.b() * eta.c() - eta.a() * eta.d()) / (eta.c() * eta.c());
    return BerkPoint::type2(mu * ci + eta.a() / eta.c(), qi + *mu.valuation());
}

/// Image of a P^1 disk under a Mobius map: push the boundary point and pick
/// the side containing the image of a witness point. The image of P^1 \ X is
/// the complement of the image of X.
inline ProjDisk mobius_disk_image(const Mobius& eta, const ProjDisk& U) {
    if (U.complement) {
        ProjDisk base{U.center, U.log_radius, U.base_open(), false};
        ProjDisk img = mobius_disk_image(eta, base);
        bool comp = !img.complement;
        bool base_open = img.base_open();
        return ProjDisk{img.center, img.log_radius, comp ? !base_open : base_open, comp};
    }
    BerkPoint bp = mobius_push(eta, U.boundary_point());
    const Scalar& c = bp.center();
    const Rational& q = bp.log_radius();
    ProjPoint pole = eta.c().is_zero() ? ProjPoint::infinity(eta.field())
                                       : ProjPoint(-(eta.d() / eta.c()));
    if (!U.contains(pole)) {
        // no pole inside: a finite image disk
        if (!U.open) return ProjDisk::closed_disk(c, q);
        ProjPoint w = eta.apply(ProjPoint(U.center));
        return ProjDisk::open_disk(w.value(), q);
    }
    // pole inside: the image contains infinity
    if (U.open) return ProjDisk::complement_of_closed(c, q);
    ProjPoint w_inf = eta.apply(ProjPoint::infinity(eta.field()));
    return ProjDisk::complement_of_open(w_inf.value(), q);
}

/// The unique Mobius map with eta(P_i) = Q_i for two triples of distinct points.
inline Mobius mobius_from_triples(const std::array<ProjPoint, 3>& P,
                                  const std::array<ProjPoint, 3>& Q) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (P[i] == P[j] || Q[i] == Q[j]) throw DegenerateTriple();
    const Field& fld = P[0].field();
    // matrix sending (p1, p2, p3) to (0, 1, infinity)
    auto to_std = [&fld](const std::array<ProjPoint, 3>& T) -> Mobius {
        const ProjPoint &p1 = T[0], &p2 = T[1], &p3 = T[2];
        Scalar one = Scalar::one(fld), zero = Scalar::zero(fld);
        if (p1.is_infinity()) {
            // z -> (p2 - p3)/(z - p3)
            return Mobius(zero, p2.value() - p3.value(), one, -p3.value());
        }
        if (p2.is_infinity()) {
            // z -> (z - p1)/(z - p3)
            return Mobius(one, -p1.value(), one, -p3.value());
        }
        if (p3.is_infinity()) {
            // z -> (z - p1)/(p2 - p1)
            return Mobius(one, -p1.value(), zero, p2.value() - p1.value());
        }
        // z -> ((z - p1)(p2 - p3)) / ((z - p3)(p2 - p1))
        Scalar u = p2.value() - p3.value();
        Scalar v = p2.value() - p1.value();
        return Mobius(u, -p1.value() * u, v, -p3.value() * v);
    };
    return to_std(Q).inverse().compose(to_std(P));
}

/// Component label of P^1 minus a type II point nu(a, rho): the outside of the
/// closed disk, or one residue direction (open subdisk of radius rho).
struct ComponentLabel {
    enum class Kind { Outside, Inside, Straddles } kind;
    // Canonical representative of the direction subdisk, for Inside.
    Scalar direction_center;
    // Residue digit of the direction when the radius level is in the value lattice.
    std::optional<std::int64_t> digit;

    bool operator==(const ComponentLabel& o) const {
        if (kind != o.kind) return false;
        if (kind != Kind::Inside) return true;
        return direction_center == o.direction_center;
    }
};

using SeparationItem = std::variant<ProjPoint, ProjDisk>;

namespace detail {

inline ComponentLabel label_point(const BerkPoint& nu1, const ProjPoint& P) {
    const Scalar& a = nu1.center();
    const Rational& q = nu1.log_radius();
    const Field& fld = a.field();
    if (P.is_infinity()) return {ComponentLabel::Kind::Outside, Scalar::zero(fld), {}};
    auto v = (P.value() - a).valuation();
    if (v && *v < q) return {ComponentLabel::Kind::Outside, Scalar::zero(fld), {}};
    // direction: the open subdisk D(P, rho), canonically centered
    Scalar dir = P.value().truncate(open_center_level(fld, q));
    std::optional<std::int64_t> digit;
    if (fld.in_value_group(q)) {
        Scalar u = (P.value() - a) * Scalar::pi_power(fld, -static_cast<long>(rat_num(q * fld.M)));
        digit = u.residue();
    }
    return {ComponentLabel::Kind::Inside, dir, digit};
}

// All components met by a disk item; nullopt means "all components".
struct ComponentSet {
    bool all = false;
    bool outside = false;
    std::vector<ComponentLabel> directions;
};

inline ComponentSet components_of_disk(const BerkPoint& nu1, const ProjDisk& W) {
    const Scalar& a = nu1.center();
    const Rational& q = nu1.log_radius();
    ProjDisk closed_disk = ProjDisk::closed_disk(a, q);
    ComponentSet out;
    if (!W.complement) {
        if (!disk_intersects(W, closed_disk)) {
            out.outside = true;
            return out;
        }
        // inside one direction?
        bool fits = detail::finite_disk_contains(W.center, q, /*openA=*/true, W.center,
                                                 W.log_radius, W.base_open()) &&
                    disk_contains(closed_disk, W);
        if (fits) {
            out.directions.push_back(label_point(nu1, ProjPoint(W.center)));
            return out;
        }
        // W meets Dbar(a, rho) but is not inside a single direction: it covers the
        // whole closed disk (so every direction) and, unless equal to it, the outside.
        out.all = true;
        return out;
    }
    // complement item: always contains infinity
    ProjDisk X{W.center, W.log_radius, W.base_open(), false};  // removed disk
    if (disk_contains(X, closed_disk)) {
        out.outside = true;  // Dbar(a, rho) entirely removed
        return out;
    }
    out.all = true;
    return out;
}

}  // namespace detail

struct SeparationReport {
    bool separates = false;
    std::vector<ComponentLabel> labels;  // one per item; Straddles for multi-component disks
};

/// Does nu1 separate the given set of points and disks? (Definition 4.1.)
inline SeparationReport separates(const BerkPoint& nu1, const std::vector<SeparationItem>& items) {
    if (!nu1.is_type2()) throw TypeMismatch("separation needs a type II point");
    SeparationReport rep;
    const Field& fld = nu1.field();
    bool any_outside = false, any_straddle = false;
    std::vector<ComponentLabel> inside;
    for (const auto& item : items) {
        ComponentLabel lab{ComponentLabel::Kind::Straddles, Scalar::zero(fld), {}};
        if (std::holds_alternative<ProjPoint>(item)) {
            lab = detail::label_point(nu1, std::get<ProjPoint>(item));
        } else {
            auto cs = detail::components_of_disk(nu1, std::get<ProjDisk>(item));
            if (cs.all)
                lab = {ComponentLabel::Kind::Straddles, Scalar::zero(fld), {}};
            else if (cs.outside)
                lab = {ComponentLabel::Kind::Outside, Scalar::zero(fld), {}};
            else
                lab = cs.directions.front();
        }
        if (lab.kind == ComponentLabel::Kind::Straddles) any_straddle = true;
        if (lab.kind == ComponentLabel::Kind::Outside) any_outside = true;
        if (lab.kind == ComponentLabel::Kind::Inside) inside.push_back(lab);
        rep.labels.push_back(std::move(lab));
    }
    int distinct = any_outside ? 1 : 0;
    std::vector<ComponentLabel> seen;
    for (const auto& l : inside) {
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == l;
        if (!dup) {
            seen.push_back(l);
            ++distinct;
        }
    }
    rep.separates = any_straddle || distinct >= 2;
    return rep;
}

}  // namespace umi
