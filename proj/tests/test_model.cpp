#include <random>

#include "doctest.h"

#include "diopop/model.hpp"

using namespace diopop;

namespace {

FitnessParams<double> fp(double a, double b, double c, double al, double be, double ga) {
    return {a, b, c, al, be, ga};
}

FitnessParams<Rational> fq(long a, long b, long c, long al, long be, long ga) {
    return {Rational(a), Rational(b), Rational(c), Rational(al), Rational(be), Rational(ga)};
}

Rational rq(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("FitnessParams validates on construction") {
    CHECK_NOTHROW(fp(1, 1, 0, 1, 1, 0));
    CHECK_THROWS_AS(fp(-1, 1, 1, 1, 1, 1), InvalidParams);
    CHECK_THROWS_AS(fp(0, 0, 1, 1, 1, 1), InvalidParams); // a + b = 0
    CHECK_THROWS_AS(fp(1, 1, 1, 0, 0, 1), InvalidParams); // alpha + beta = 0
}

TEST_CASE("apply_W: interior step, exact") {
    const auto w = apply_W(fq(1, 1, 4, 1, 1, 4), SquareState<Rational>{rq(1, 2), rq(1, 2)});
    CHECK(w.x == rq(3, 7));
    CHECK(w.y == rq(3, 7));
}

TEST_CASE("apply_W: interior step, float") {
    const auto w = apply_W(fp(1, 1, 4, 1, 1, 4), SquareState<double>{0.5, 0.5});
    CHECK(w.x == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
    CHECK(w.y == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("apply_W: corners") {
    const auto p = fq(1, 1, 4, 1, 1, 4);
    const auto z00 = apply_W(p, SquareState<Rational>{Rational(0), Rational(0)});
    CHECK(z00.x == 0);
    CHECK(z00.y == 0);
    const auto z11 = apply_W(p, SquareState<Rational>{Rational(1), Rational(1)});
    CHECK(z11.x == 1);
    CHECK(z11.y == 1);
    // a mixed corner jumps straight to full fixation
    const auto z10 = apply_W(p, SquareState<Rational>{Rational(1), Rational(0)});
    CHECK(z10.x == 1);
    CHECK(z10.y == 1);
}

TEST_CASE("apply_W: zero denominator is an error, never NaN") {
    const auto p = fq(1, 1, 0, 1, 1, 0);
    try {
        apply_W(p, SquareState<Rational>{Rational(0), Rational(0)});
        FAIL("expected UndefinedImage");
    } catch (const UndefinedImage& e) {
        CHECK(e.coordinate == 'x');
    }
}

TEST_CASE("apply_W: image always lands in the square (float)") {
    std::mt19937_64 rng(9001);
    std::uniform_int_distribution<int> coeff(0, 9);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    int tried = 0;
    while (tried < 500) {
        const double a = coeff(rng), b = coeff(rng), c = coeff(rng);
        const double al = coeff(rng), be = coeff(rng), ga = coeff(rng);
        if (a + b == 0 || al + be == 0) continue;
        ++tried;
        const FitnessParams<double> p{a, b, c, al, be, ga};
        const SquareState<double> z{coord(rng), coord(rng)};
        try {
            const auto w = apply_W(p, z);
            CHECK(std::isfinite(w.x));
            CHECK(std::isfinite(w.y));
            CHECK(in_square(w));
        } catch (const UndefinedImage&) {
            // acceptable outcome; what must never happen is NaN
        }
    }
}

TEST_CASE("apply_W: image lands in the square (exact)") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> coeff(1, 9);
    std::uniform_int_distribution<long> num(0, 8);
    for (int i = 0; i < 200; ++i) {
        const auto p = fq(coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng));
        const SquareState<Rational> z{rq(num(rng), 8), rq(num(rng), 8)};
        const auto w = apply_W(p, z);
        CHECK(in_square(w));
    }
}

TEST_CASE("apply_f matches the diagonal of apply_W") {
    const auto p = fq(1, 1, 4, 1, 1, 4);
    CHECK(apply_f(p, rq(1, 10)) == rq(19, 343));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(0, 16);
    for (int i = 0; i < 50; ++i) {
        const Rational x = rq(num(rng), 16);
        const auto w = apply_W(p, SquareState<Rational>{x, x});
        const Rational fx = apply_f(p, x);
        CHECK(w.x == fx);
        CHECK(w.y == fx);
    }
}

TEST_CASE("apply_f rejects asymmetric parameters") {
    CHECK_THROWS_AS(apply_f(fq(1, 2, 3, 1, 2, 4), rq(1, 2)), NotSymmetric);
    CHECK_THROWS_AS(apply_f(fq(0, 2, 3, 0, 2, 3), rq(1, 2)), NotSymmetric); // needs a > 0
}

TEST_CASE("to_reduced") {
    const auto r = to_reduced(fq(3, 1, 10, 2, 1, 10));
    CHECK(r.A == rq(3, 10));
    CHECK(r.B == rq(1, 10));
    CHECK(r.C == rq(1, 5));
    CHECK(r.D == rq(1, 10));

    try {
        to_reduced(fq(1, 1, 0, 1, 1, 4));
        FAIL("expected ZeroDenominator");
    } catch (const ZeroDenominator& e) {
        CHECK(e.which == "c");
    }
    try {
        to_reduced(fq(1, 1, 4, 1, 1, 0));
        FAIL("expected ZeroDenominator");
    } catch (const ZeroDenominator& e) {
        CHECK(e.which == "gamma");
    }
}

TEST_CASE("odds transforms invert each other") {
    const QuadrantState<Rational> q = square_to_quadrant(SquareState<Rational>{rq(1, 2), rq(1, 3)});
    CHECK(q.s == 1);
    CHECK(q.t == rq(1, 2));
    const auto back = quadrant_to_square(q);
    CHECK(back.x == rq(1, 2));
    CHECK(back.y == rq(1, 3));

    CHECK_THROWS_AS(square_to_quadrant(SquareState<Rational>{Rational(1), rq(1, 2)}), BoundaryState);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(0, 15);
    for (int i = 0; i < 100; ++i) {
        const SquareState<Rational> z{rq(num(rng), 16), rq(num(rng), 16)};
        const auto round = quadrant_to_square(square_to_quadrant(z));
        CHECK(round.x == z.x);
        CHECK(round.y == z.y);
    }
}

TEST_CASE("one step of W is conjugate to one step of T (exact)") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<long> coeff(1, 9);
    std::uniform_int_distribution<long> num(0, 15);
    for (int i = 0; i < 100; ++i) {
        const auto p = fq(coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng), coeff(rng));
        const SquareState<Rational> z{rq(num(rng), 16), rq(num(rng), 16)};
        const auto lhs = square_to_quadrant(apply_W(p, z));
        const auto rhs = apply_T(to_reduced(p), square_to_quadrant(z));
        CHECK(lhs.s == rhs.s);
        CHECK(lhs.t == rhs.t);
    }
}

TEST_CASE("one step of W is conjugate to one step of T (float)") {
    std::mt19937_64 rng(4321);
    std::uniform_int_distribution<int> coeff(1, 9);
    std::uniform_real_distribution<double> coord(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        const FitnessParams<double> p{double(coeff(rng)), double(coeff(rng)), double(coeff(rng)),
                                      double(coeff(rng)), double(coeff(rng)), double(coeff(rng))};
        const SquareState<double> z{coord(rng), coord(rng)};
        const auto lhs = square_to_quadrant(apply_W(p, z));
        const auto rhs = apply_T(to_reduced(p), square_to_quadrant(z));
        CHECK(lhs.s == doctest::Approx(rhs.s).epsilon(1e-12));
        CHECK(lhs.t == doctest::Approx(rhs.t).epsilon(1e-12));
    }
}

TEST_CASE("apply_T_checked flags divergence") {
    const ReducedParams<double> r{1, 1, 1, 1};
    CHECK_NOTHROW(apply_T_checked(r, QuadrantState<double>{2.0, 3.0}, 1e12));
    CHECK_THROWS_AS(apply_T_checked(r, QuadrantState<double>{1e13, 2.0}, 1e12), OverflowError);
}

TEST_CASE("mixing_value is the x-coordinate of the image") {
    const auto p = fp(1, 1, 4, 1, 1, 4);
    const SquareState<double> z{0.8, 0.5};
    CHECK(mixing_value(p, z) == apply_W(p, z).x);
    CHECK(mixing_value(p, z) == doctest::Approx(9.0 / 13.0).epsilon(1e-15));
}
