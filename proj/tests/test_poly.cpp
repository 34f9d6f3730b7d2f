#include "doctest.h"

#include "test_support.hpp"
#include "umi/poly.hpp"
#include "umi/ratfunc.hpp"

using namespace umi;
using namespace umi::testing;

namespace {

Poly parse_ints(const Field& fld, std::vector<long> coeffs) {
    std::vector<Scalar> c;
    for (long x : coeffs) c.push_back(Scalar::from_int(fld, x));
    return Poly(fld, std::move(c));
}

}  // namespace

TEST_CASE("taylor shift") {
    Field f3(3, 1);
    Poly z2 = parse_ints(f3, {0, 0, 1});
    CHECK(z2.taylor_shift(Scalar::one(f3)) == parse_ints(f3, {1, 2, 1}));

    Poly f = parse_ints(f3, {7, 0, -2, 5, 1});
    CHECK(f.taylor_shift(Scalar::zero(f3)) == f);

    // z^3 - 3z at a = 3, cross-checked by synthetic division
    Poly g = parse_ints(f3, {0, -3, 0, 1});
    CHECK(g.taylor_shift(Scalar::from_int(f3, 3)) == parse_ints(f3, {18, 24, 9, 1}));
}

TEST_CASE("taylor shift round-trips") {
    Field fld(5, 2);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        Poly f = random_poly(rng, fld, 6);
        Scalar a = random_scalar(rng, fld);
        CHECK(f.taylor_shift(a).taylor_shift(-a) == f);
    }
}

TEST_CASE("newton polygon") {
    Field f3(3, 1);
    Poly f = parse_ints(f3, {27, 3, 1});  // z^2 + 3z + 27
    NewtonPolygon np = newton_polygon(f);
    REQUIRE(np.segments.size() == 2);
    CHECK(np.order_at_zero == 0);
    CHECK(np.segments[0] == NewtonSegment{Rational(-2), 1});
    CHECK(np.segments[1] == NewtonSegment{Rational(-1), 1});

    // (z-3)(z-9) = z^2 - 12z + 27: same polygon, roots of valuation 2 and 1
    Poly g = parse_ints(f3, {27, -12, 1});
    NewtonPolygon nq = newton_polygon(g);
    REQUIRE(nq.segments.size() == 2);
    CHECK(nq.segments[0] == NewtonSegment{Rational(-2), 1});
    CHECK(nq.segments[1] == NewtonSegment{Rational(-1), 1});

    NewtonPolygon nl = newton_polygon(parse_ints(f3, {3, 1}));
    REQUIRE(nl.segments.size() == 1);
    CHECK(nl.segments[0] == NewtonSegment{Rational(-1), 1});

    CHECK_THROWS_AS(newton_polygon(Poly::zero(f3)), ZeroPolynomial);
}

TEST_CASE("newton polygon lengths account for the whole degree") {
    Field fld(3, 2);
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 100; ++i) {
        Poly f = random_nonzero_poly(rng, fld, 7);
        NewtonPolygon np = newton_polygon(f);
        CHECK(np.total_length() + np.order_at_zero == f.degree());
        for (std::size_t k = 0; k + 1 < np.segments.size(); ++k)
            CHECK(np.segments[k].slope < np.segments[k + 1].slope);
    }
}

TEST_CASE("count_roots on closed and open disks") {
    Field f3(3, 1);
    Poly f = parse_ints(f3, {-81, 0, 0, 0, 1});  // z^4 - 81, all roots of valuation 1
    Scalar c0 = Scalar::zero(f3);
    CHECK(count_roots(f, c0, Rational(1), true) == 4);
    CHECK(count_roots(f, c0, Rational(1), false) == 0);
    CHECK(count_roots(f, c0, Rational(0), true) == 4);

    // (z-3)(z-9)
    Poly g = parse_ints(f3, {27, -12, 1});
    CHECK(count_roots(g, c0, Rational(1), true) == 2);
    CHECK(count_roots(g, c0, Rational(2), true) == 1);
    // from center 3: the other root 9 sits at distance |6| = 3^-1 exactly
    CHECK(count_roots(g, Scalar::from_int(f3, 3), Rational(1), true) == 2);
    CHECK(count_roots(g, Scalar::from_int(f3, 3), Rational(1), false) == 1);
}

TEST_CASE("count_roots is additive over products") {
    Field fld(3, 1);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        Poly f = random_nonzero_poly(rng, fld, 4);
        Poly g = random_nonzero_poly(rng, fld, 4);
        Scalar c = random_scalar(rng, fld, 2);
        Rational q(std::uniform_int_distribution<int>(-3, 3)(rng));
        bool closed = std::uniform_int_distribution<int>(0, 1)(rng);
        CHECK(count_roots(f * g, c, q, closed) ==
              count_roots(f, c, q, closed) + count_roots(g, c, q, closed));
    }
}

TEST_CASE("count_roots agrees with direct enumeration on split instances") {
    Field fld(3, 2);
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> nroots(1, 5);
    for (int i = 0; i < 110; ++i) {
        std::vector<Scalar> roots;
        int n = nroots(rng);
        for (int k = 0; k < n; ++k) roots.push_back(random_scalar(rng, fld, 2));
        Poly f = poly_from_roots(fld, roots);
        Scalar c = random_scalar(rng, fld, 2);
        Rational q(std::uniform_int_distribution<int>(-4, 4)(rng), 2);
        bool closed = std::uniform_int_distribution<int>(0, 1)(rng);
        long direct = 0;
        for (const auto& r : roots) {
            auto v = (r - c).valuation();
            Rational rv = v ? *v : Rational(1000000);  // exact root: everything counts
            if (!v || (closed ? rv >= q : rv > q)) ++direct;
        }
        CHECK(count_roots(f, c, q, closed) == direct);
    }
}

TEST_CASE("ratfunc normalization") {
    Field f3(3, 1);
    // (z^2 - 9)/(z - 3) = z + 3
    RatFunc f(parse_ints(f3, {-9, 0, 1}), parse_ints(f3, {-3, 1}));
    CHECK(f.num() == parse_ints(f3, {3, 1}));
    CHECK(f.den() == parse_ints(f3, {1}));

    // (z^4 - 81)/z^3 is already coprime
    RatFunc g(parse_ints(f3, {-81, 0, 0, 0, 1}), parse_ints(f3, {0, 0, 0, 1}));
    CHECK(g.num() == parse_ints(f3, {-81, 0, 0, 0, 1}));
    CHECK(g.den() == parse_ints(f3, {0, 0, 0, 1}));

    // (2z)/(2) = z
    RatFunc h(parse_ints(f3, {0, 2}), parse_ints(f3, {2}));
    CHECK(h.num() == parse_ints(f3, {0, 1}));
    CHECK(h.den() == parse_ints(f3, {1}));

    CHECK_THROWS_AS(RatFunc(parse_ints(f3, {1}), Poly::zero(f3)), ZeroDenominator);
}

TEST_CASE("wronskian") {
    Field f3(3, 1);
    RatFunc z2 = RatFunc::from_poly(parse_ints(f3, {0, 0, 1}));
    CHECK(wronskian(z2) == parse_ints(f3, {0, 2}));

    RatFunc f(parse_ints(f3, {0, 1}), parse_ints(f3, {1, -1}));  // z/(1-z)
    CHECK(wronskian(f).degree() == 0);
    Scalar w0 = wronskian(f)[0];
    CHECK(w0 * w0 == Scalar::one(f3));  // unit square: normalization rescales g,h jointly

    RatFunc c = RatFunc::from_poly(parse_ints(f3, {5}));
    CHECK(wronskian(c).is_zero());
}

TEST_CASE("wronskian vanishes exactly for constants") {
    Field fld(5, 1);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
        RatFunc f = random_ratfunc(rng, fld, 4);
        CHECK(wronskian(f).is_zero() == f.is_constant());
    }
}

TEST_CASE("reduce_ratfunc") {
    Field f3(3, 1);
    // (z^4 - 81)/z^3 reduces to z^4/z^3 = z
    RatFunc f(parse_ints(f3, {-81, 0, 0, 0, 1}), parse_ints(f3, {0, 0, 0, 1}));
    auto r = reduce_ratfunc(f);
    CHECK(r.kind == ReducedRatFunc::Kind::Nonconstant);
    CHECK(r.num.c == std::vector<std::int64_t>{0, 1});
    CHECK(r.den.c == std::vector<std::int64_t>{1});

    RatFunc g(parse_ints(f3, {3, 1}), parse_ints(f3, {1}));
    auto rg = reduce_ratfunc(g);
    CHECK(rg.kind == ReducedRatFunc::Kind::Nonconstant);
    CHECK(rg.num.c == std::vector<std::int64_t>{0, 1});

    RatFunc h(parse_ints(f3, {1, 3}), parse_ints(f3, {0, 1}));  // (3z+1)/z -> 1/z
    auto rh = reduce_ratfunc(h);
    CHECK(rh.kind == ReducedRatFunc::Kind::Nonconstant);
    CHECK(rh.num.c == std::vector<std::int64_t>{1});
    CHECK(rh.den.c == std::vector<std::int64_t>{0, 1});

    // content 1/3 in the numerator violates the precondition
    RatFunc bad(parse_ints(f3, {0, 3}), parse_ints(f3, {1}));
    CHECK_THROWS_AS(reduce_ratfunc(bad), NonUnitContent);
}

TEST_CASE("poly gcd and division") {
    Field fld(7, 1);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        Poly a = random_nonzero_poly(rng, fld, 5);
        Poly b = random_nonzero_poly(rng, fld, 3);
        auto [q, r] = a.divrem(b);
        CHECK(q * b + r == a);
        CHECK((r.is_zero() || r.degree() < b.degree()));
        Poly g = poly_gcd(a * b, b);
        CHECK(g == b.monic());
    }
}
