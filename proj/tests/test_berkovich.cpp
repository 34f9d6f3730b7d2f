#include "doctest.h"

#include "test_support.hpp"
#include "umi/berkovich.hpp"

using namespace umi;
using namespace umi::testing;

namespace {

ProjPoint pt(const Field& fld, long n) { return ProjPoint(Scalar::from_int(fld, n)); }
ProjPoint pt(const Field& fld, const Rational& r) { return ProjPoint(Scalar(fld, r)); }

Mobius random_pgl2o(std::mt19937_64& rng, const Field& fld) {
    for (;;) {
        Scalar a = random_integral_scalar(rng, fld), b = random_integral_scalar(rng, fld);
        Scalar c = random_integral_scalar(rng, fld), d = random_integral_scalar(rng, fld);
        Scalar det = a * d - b * c;
        auto v = det.valuation();
        if (v && *v == 0) return Mobius(a, b, c, d);
    }
}

Mobius random_pgl2k(std::mt19937_64& rng, const Field& fld) {
    for (;;) {
        Scalar a = random_scalar(rng, fld), b = random_scalar(rng, fld);
        Scalar c = random_scalar(rng, fld), d = random_scalar(rng, fld);
        if (!(a * d - b * c).is_zero()) return Mobius(a, b, c, d);
    }
}

BerkPoint random_type2(std::mt19937_64& rng, const Field& fld, int span = 3) {
    std::uniform_int_distribution<int> qd(-span * fld.M, span * fld.M);
    return BerkPoint::type2(random_scalar(rng, fld), Rational(qd(rng), fld.M));
}

}  // namespace

TEST_CASE("spherical distance") {
    Field f3(3, 1);
    CHECK(spherical_distance(pt(f3, 0), pt(f3, 1)) == Magnitude::one());
    CHECK(spherical_distance(pt(f3, 3), pt(f3, 6)) ==
          Magnitude::from_valuation(Rational(1)));
    CHECK(spherical_distance(pt(f3, Rational(1, 3)), ProjPoint::infinity(f3)) ==
          Magnitude::from_valuation(Rational(1)));
    CHECK(spherical_distance(pt(f3, 5), pt(f3, 5)) == Magnitude::zero());
}

TEST_CASE("spherical distance: ultrametric and bounded by one") {
    Field fld(3, 2);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 120; ++i) {
        ProjPoint P(random_scalar(rng, fld)), Q(random_scalar(rng, fld)),
            R(random_scalar(rng, fld));
        Magnitude pq = spherical_distance(P, Q);
        CHECK(pq <= Magnitude::one());
        CHECK(pq == spherical_distance(Q, P));
        CHECK(spherical_distance(P, R) <=
              Magnitude::max(pq, spherical_distance(Q, R)));
    }
}

TEST_CASE("spherical radius") {
    Field f3(3, 1);
    CHECK(spherical_radius(BerkPoint::gauss(f3)) == Magnitude::one());
    // nu(0, 9): 9 / max(1, 81) = 1/9
    CHECK(spherical_radius(BerkPoint::type2(Scalar::zero(f3), Rational(-2))) ==
          Magnitude::from_valuation(Rational(2)));
    // nu(a, 1) with |a| = 3: 1 / max(1, 1, 9) = 1/9
    CHECK(spherical_radius(BerkPoint::type2(Scalar(f3, Rational(1, 3)), Rational(0))) ==
          Magnitude::from_valuation(Rational(2)));
}

TEST_CASE("type II equality is disk equality") {
    Field f3(3, 1);
    auto nu1 = BerkPoint::type2(Scalar::from_int(f3, 3), Rational(1));
    auto nu2 = BerkPoint::type2(Scalar::from_int(f3, 12), Rational(1));  // |12-3| = 1/9
    CHECK(nu1 == nu2);
    auto nu3 = BerkPoint::type2(Scalar::from_int(f3, 1), Rational(1));
    CHECK_FALSE(nu1 == nu3);
}

TEST_CASE("mobius from triples") {
    Field f3(3, 1);
    ProjPoint inf = ProjPoint::infinity(f3);
    auto id = mobius_from_triples({pt(f3, 0), pt(f3, 1), inf}, {pt(f3, 0), pt(f3, 1), inf});
    CHECK(id.apply(pt(f3, 7)) == pt(f3, 7));

    // (0, 1/9, inf) -> (0, 1, inf) is z -> 9z
    auto m9 = mobius_from_triples({pt(f3, 0), pt(f3, Rational(1, 9)), inf},
                                  {pt(f3, 0), pt(f3, 1), inf});
    CHECK(m9.apply(pt(f3, 1)) == pt(f3, 9));

    auto inv = mobius_from_triples({pt(f3, 0), pt(f3, 1), inf}, {inf, pt(f3, 1), pt(f3, 0)});
    CHECK(inv.apply(pt(f3, 3)) == pt(f3, Rational(1, 3)));

    CHECK_THROWS_AS(
        mobius_from_triples({pt(f3, 0), pt(f3, 0), inf}, {pt(f3, 0), pt(f3, 1), inf}),
        DegenerateTriple);
}

TEST_CASE("mobius from triples hits its targets, randomized") {
    Field fld(5, 1);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        std::array<ProjPoint, 3> P = {ProjPoint(random_scalar(rng, fld)),
                                      ProjPoint(random_scalar(rng, fld)),
                                      ProjPoint::infinity(fld)};
        std::array<ProjPoint, 3> Q = {ProjPoint(random_scalar(rng, fld)),
                                      ProjPoint::infinity(fld),
                                      ProjPoint(random_scalar(rng, fld))};
        if (P[0] == P[1] || Q[0] == Q[2]) continue;
        Mobius eta = mobius_from_triples(P, Q);
        for (int k = 0; k < 3; ++k) CHECK(eta.apply(P[k]) == Q[k]);
    }
}

TEST_CASE("is in PGL(2, O)") {
    Field f3(3, 1);
    Scalar z = Scalar::zero(f3), o = Scalar::one(f3);
    CHECK(Mobius(z, o, o, z).in_pgl2_o());
    CHECK(Mobius(o, Scalar::from_int(f3, 3), z, o).in_pgl2_o());
    CHECK_FALSE(Mobius(Scalar::from_int(f3, 9), z, z, o).in_pgl2_o());
    // scalar multiples do not matter
    Scalar t = Scalar(f3, Rational(1, 3));
    CHECK(Mobius(z, t, t, z).in_pgl2_o());
}

TEST_CASE("mobius push on type II points") {
    Field f3(3, 1);
    Scalar zero = Scalar::zero(f3), one = Scalar::one(f3);
    auto nu = BerkPoint::type2(zero, Rational(2));  // nu(0, 3^-2)
    // 1/z: nu(0, q) -> nu(0, -q)
    CHECK(mobius_push(Mobius::inversion(f3), nu) == BerkPoint::type2(zero, Rational(-2)));
    // z + 1: nu(0, q) -> nu(1, q)
    CHECK(mobius_push(Mobius::translation(one), nu) == BerkPoint::type2(one, Rational(2)));
    // 1/z with |a| > rho: nu(9, 3^-2) -> nu(1/9, 3^-2 / 3^-4) = nu(1/9, 3^2)
    auto nu2 = BerkPoint::type2(Scalar::from_int(f3, 9), Rational(2));
    CHECK(mobius_push(Mobius::inversion(f3), nu2) ==
          BerkPoint::type2(Scalar(f3, Rational(1, 9)), Rational(2 - 4)));
}

TEST_CASE("PGL(2,O) preserves the spherical metric and radius") {
    Field fld(3, 2);
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 110; ++i) {
        Mobius eta = random_pgl2o(rng, fld);
        ProjPoint P(random_scalar(rng, fld)), Q(random_scalar(rng, fld));
        CHECK(spherical_distance(eta.apply(P), eta.apply(Q)) == spherical_distance(P, Q));
        BerkPoint nu = random_type2(rng, fld);
        CHECK(spherical_radius(mobius_push(eta, nu)) == spherical_radius(nu));
    }
}

TEST_CASE("mobius push respects composition") {
    Field fld(5, 2);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 80; ++i) {
        Mobius e1 = random_pgl2k(rng, fld), e2 = random_pgl2k(rng, fld);
        BerkPoint nu = random_type2(rng, fld);
        CHECK(mobius_push(e1.compose(e2), nu) == mobius_push(e1, mobius_push(e2, nu)));
        ProjPoint P(random_scalar(rng, fld));
        CHECK(e1.compose(e2).apply(P) == e1.apply(e2.apply(P)));
    }
}

TEST_CASE("disk membership and relations") {
    Field f3(3, 1);
    Scalar zero = Scalar::zero(f3);
    ProjDisk unit_open = ProjDisk::open_disk(zero, Rational(0));
    CHECK(unit_open.contains(pt(f3, 3)));
    CHECK_FALSE(unit_open.contains(pt(f3, 1)));
    CHECK_FALSE(unit_open.contains(ProjPoint::infinity(f3)));

    ProjDisk unit_closed = ProjDisk::closed_disk(zero, Rational(0));
    CHECK(unit_closed.contains(pt(f3, 1)));
    CHECK(disk_contains(unit_closed, unit_open));
    CHECK_FALSE(disk_contains(unit_open, unit_closed));

    ProjDisk comp = ProjDisk::complement_of_closed(zero, Rational(-4));  // |z| > 81
    CHECK(comp.contains(ProjPoint::infinity(f3)));
    CHECK(comp.contains(pt(f3, Rational(1, 243))));
    CHECK_FALSE(comp.contains(pt(f3, 81)));
    CHECK_FALSE(disk_intersects(comp, unit_closed));

    ProjDisk d19 = ProjDisk::open_disk(Scalar(f3, Rational(1, 9)), Rational(0));
    CHECK_FALSE(disk_intersects(unit_open, d19));
    CHECK_FALSE(disk_intersects(comp, d19));
}

TEST_CASE("nested or disjoint, randomized") {
    Field fld(3, 1);
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> qd(-3, 3), coin(0, 1);
    for (int i = 0; i < 150; ++i) {
        ProjDisk A{random_scalar(rng, fld, 2), Rational(qd(rng)), coin(rng) == 1,
                   coin(rng) == 1};
        ProjDisk B{random_scalar(rng, fld, 2), Rational(qd(rng)), coin(rng) == 1,
                   coin(rng) == 1};
        // sample членство agreement on a few points
        for (int k = 0; k < 8; ++k) {
            ProjPoint P = coin(rng) ? ProjPoint(random_scalar(rng, fld, 3))
                                    : ProjPoint::infinity(fld);
            if (A.contains(P) && B.contains(P)) {
                CHECK(disk_intersects(A, B));
            }
            if (disk_contains(A, B) && B.contains(P)) CHECK(A.contains(P));
        }
    }
}

TEST_CASE("separation and component labels") {
    Field f3(3, 1);
    Scalar zero = Scalar::zero(f3);
    BerkPoint gauss = BerkPoint::gauss(f3);

    // nu(0,1) separates {0, 1}
    auto r1 = separates(gauss, {ProjPoint(zero), pt(f3, 1)});
    CHECK(r1.separates);
    CHECK(r1.labels[0].kind == ComponentLabel::Kind::Inside);
    CHECK(r1.labels[1].kind == ComponentLabel::Kind::Inside);
    CHECK(r1.labels[0].digit == 0);
    CHECK(r1.labels[1].digit == 1);

    // nu(0,1) does not separate D(0,1)
    auto r2 = separates(gauss, {ProjDisk::open_disk(zero, Rational(0))});
    CHECK_FALSE(r2.separates);

    // nu(0,9), {1/9, 2/9}: distinct directions at the boundary
    auto nu09 = BerkPoint::type2(zero, Rational(-2));
    auto r3 = separates(nu09, {pt(f3, Rational(1, 9)), pt(f3, Rational(2, 9))});
    CHECK(r3.separates);
    CHECK(r3.labels[0].digit == 1);
    CHECK(r3.labels[1].digit == 2);

    // a point outside and a disk inside
    auto r4 = separates(gauss, {ProjPoint::infinity(f3),
                                SeparationItem(ProjDisk::open_disk(zero, Rational(0)))});
    CHECK(r4.separates);
    CHECK(r4.labels[0].kind == ComponentLabel::Kind::Outside);

    CHECK_THROWS_AS(separates(BerkPoint::type1(pt(f3, 0)), {}), TypeMismatch);
}

TEST_CASE("separation is monotone under taking supersets") {
    // if nu1 separates W and W subset V then nu1 separates V
    Field fld(3, 1);
    std::mt19937_64 rng(808);
    for (int i = 0; i < 80; ++i) {
        BerkPoint nu = random_type2(rng, fld, 2);
        std::vector<SeparationItem> W, V;
        for (int k = 0; k < 3; ++k) {
            ProjPoint P(random_scalar(rng, fld, 2));
            W.emplace_back(P);
            V.emplace_back(P);
        }
        V.emplace_back(ProjPoint(random_scalar(rng, fld, 2)));
        if (separates(nu, W).separates) CHECK(separates(nu, V).separates);
    }
}

TEST_CASE("disk images under mobius maps") {
    Field f3(3, 1);
    Scalar zero = Scalar::zero(f3);
    // z -> 9z maps D(0,1) onto D(0, 1/9)... in valuation terms q=0 -> q=2
    Mobius m9 = Mobius::scaling(Scalar(f3, Rational(1, 9)));
    // wait: scaling by 1/9 has |1/9| = 9, so radii grow
    ProjDisk img = mobius_disk_image(m9, ProjDisk::open_disk(zero, Rational(0)));
    CHECK(img == ProjDisk::open_disk(zero, Rational(-2)));

    // inversion maps the complement of Dbar(0, 81) onto D(0, 1/81)
    ProjDisk comp = ProjDisk::complement_of_closed(zero, Rational(-4));
    ProjDisk inv_img = mobius_disk_image(Mobius::inversion(f3), comp);
    CHECK(inv_img == ProjDisk::open_disk(zero, Rational(4)));

    // a pole inside a closed disk: 1/(z-1) on Dbar(0,1) gives |w| >= 1
    Mobius eta(zero, Scalar::one(f3), Scalar::one(f3), -Scalar::one(f3));
    ProjDisk img2 = mobius_disk_image(eta, ProjDisk::closed_disk(zero, Rational(0)));
    CHECK(img2 == ProjDisk::complement_of_open(zero, Rational(0)));

    // membership transport, randomized
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> qd(-2, 2), coin(0, 1);
    for (int i = 0; i < 120; ++i) {
        ProjDisk U{random_scalar(rng, f3, 2), Rational(qd(rng)), coin(rng) == 1,
                   coin(rng) == 1};
        Mobius eta2 = random_pgl2k(rng, f3);
        ProjDisk V = mobius_disk_image(eta2, U);
        for (int k = 0; k < 6; ++k) {
            ProjPoint P = coin(rng) ? ProjPoint(random_scalar(rng, f3, 3))
                                    : ProjPoint::infinity(f3);
            CHECK(V.contains(eta2.apply(P)) == U.contains(P));
        }
    }
}
