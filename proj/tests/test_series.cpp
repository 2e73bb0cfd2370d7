#include "doctest.h"

#include "heunblocks/series.hpp"

using namespace heunblocks;

namespace {

SpacePtr sp() { return makeSpace({"a", "e"}); }
RF cst(const SpacePtr& s, long n, long d = 1) { return RF::constant(s, BigRat(n, d)); }

FormalSeries geom(const SpacePtr& s, int N) {
    // 1 - t + t^2 - ... (inverse of 1+t)
    FormalSeries f(s, SeriesVar::T, 1, 2 * N);
    for (int k = 0; k <= N; ++k) f.setCoef(2 * k, cst(s, (k % 2) ? -1 : 1));
    return f;
}

} // namespace

TEST_CASE("geometric inverse") {
    auto s = sp();
    FormalSeries onePlusT = FormalSeries::one(s, SeriesVar::T, 1, 12);
    onePlusT.setCoef(2, cst(s, 1));
    FormalSeries inv = inverse(onePlusT);
    CHECK(inv == geom(s, 6));
    FormalSeries prod = onePlusT * inv;
    CHECK(prod.coefTicks(0) == cst(s, 1));
    for (int k = 1; 2 * k <= prod.truncTicks(); ++k) CHECK(prod.coef(k).isZero());
}

TEST_CASE("offsets add under multiplication") {
    auto s = sp();
    RF a = RF::symbol(s, "a"), e = RF::symbol(s, "e");
    FormalSeries f = FormalSeries::one(s, SeriesVar::T, 1, 8);
    f.setOffset(a);
    FormalSeries g = FormalSeries::one(s, SeriesVar::T, 1, 8);
    g.setOffset(e - cst(s, 2));
    FormalSeries p = f * g;
    CHECK(*p.offset() == a + e - cst(s, 2));
}

TEST_CASE("truncation composes pessimistically") {
    auto s = sp();
    FormalSeries f(s, SeriesVar::T, 1, 10); // known through t^5
    f.setCoef(2, cst(s, 1));                // ord t
    FormalSeries g(s, SeriesVar::T, 1, 6);  // known through t^3
    g.setCoef(0, cst(s, 1));
    FormalSeries p = f * g;
    CHECK(p.truncTicks() == 8); // min(10+0, 6+2)
    FormalSeries q = f + g;
    CHECK(q.truncTicks() == 6);
}

TEST_CASE("binomial power") {
    auto s = sp();
    RF al = RF::symbol(s, "a");
    FormalSeries oneMinusX(s, SeriesVar::T, 1, 4);
    oneMinusX.setCoef(0, cst(s, 1));
    oneMinusX.setCoef(2, cst(s, -1));
    FormalSeries p = powBinomial(oneMinusX, al);
    CHECK(p.coef(0) == cst(s, 1));
    CHECK(p.coef(1) == -al);
    CHECK(p.coef(2) == al * (al - cst(s, 1)) / cst(s, 2));
    // alpha = 1 reproduces the base exactly
    FormalSeries p1 = powBinomial(oneMinusX, cst(s, 1));
    CHECK(p1 == oneMinusX);
    FormalSeries bad(s, SeriesVar::T, 1, 4);
    bad.setCoef(0, cst(s, 3));
    CHECK_THROWS_AS(powBinomial(bad, al), LeadingCoefficientNotOne);
}

TEST_CASE("sqrt agrees with half binomial and squares back") {
    auto s = sp();
    RF e = RF::symbol(s, "e");
    FormalSeries f(s, SeriesVar::T, 1, 12);
    f.setCoef(0, cst(s, 1, 4));
    f.setCoef(2, e);
    f.setCoef(4, e * e - cst(s, 1, 3));
    FormalSeries r = sqrtSeries(f);
    CHECK(r.coef(0) == cst(s, 1, 2));
    CHECK((r * r).truncated(f.truncTicks()) == f.truncated(r.truncTicks()));
    // against the binomial route: sqrt(1/4 + e t) = 1/2 (1+4e t)^(1/2)
    FormalSeries g(s, SeriesVar::T, 1, 12);
    g.setCoef(0, cst(s, 1));
    g.setCoef(2, cst(s, 4) * e);
    FormalSeries viaBinom = powBinomial(g, cst(s, 1, 2)).scaled(cst(s, 1, 2));
    FormalSeries direct(s, SeriesVar::T, 1, 12);
    direct.setCoef(0, cst(s, 1, 4));
    direct.setCoef(2, e);
    CHECK(sqrtSeries(direct) == viaBinom);
    FormalSeries notSquare(s, SeriesVar::T, 1, 4);
    notSquare.setCoef(0, cst(s, 3));
    CHECK_THROWS_AS(sqrtSeries(notSquare), NonSquareLeadingCoefficient);
}

TEST_CASE("log and exp") {
    auto s = sp();
    FormalSeries onePlusT = FormalSeries::one(s, SeriesVar::T, 1, 10);
    onePlusT.setCoef(2, cst(s, 1));
    FormalSeries l = logSeries(onePlusT);
    CHECK(l.coef(1) == cst(s, 1));
    CHECK(l.coef(2) == cst(s, -1, 2));
    CHECK(l.coef(3) == cst(s, 1, 3));
    CHECK(!l.logCoef());
    CHECK(expSeries(l) == onePlusT);

    // prefactor rule: log(t^Delta (1+...)) carries logCoef Delta
    RF delta = RF::symbol(s, "a");
    FormalSeries withOffset = onePlusT;
    withOffset.setOffset(delta);
    FormalSeries lo = logSeries(withOffset);
    REQUIRE(lo.logCoef().has_value());
    CHECK(*lo.logCoef() == delta);
}

TEST_CASE("exp-log round trip on half grid") {
    auto s = sp();
    RF e = RF::symbol(s, "e");
    FormalSeries a = FormalSeries::one(s, SeriesVar::InvT, 2, 9);
    a.setCoef(1, 2, e);               // invt^(1/2)
    a.setCoef(3, 2, cst(s, -2, 7));   // invt^(3/2)
    a.setCoef(2, 1, e * e);
    CHECK(expSeries(logSeries(a)) == a);
}

TEST_CASE("grid and variable mismatches are rejected") {
    auto s = sp();
    FormalSeries t1 = FormalSeries::one(s, SeriesVar::T, 1, 4);
    FormalSeries h1 = FormalSeries::one(s, SeriesVar::Hbar, 1, 4);
    CHECK_THROWS_AS(t1 + h1, GridMismatch);
    FormalSeries g1(s, SeriesVar::T, 1, 4);
    CHECK_THROWS_AS(g1.setCoef(1, cst(s, 1)), GridMismatch);
    FormalSeries f = FormalSeries::one(s, SeriesVar::T, 1, 8);
    FormalSeries off = FormalSeries::one(s, SeriesVar::T, 1, 8);
    off.setOffset(RF::symbol(s, "a"));
    CHECK_THROWS_AS(f + off, OffsetMismatch);
}

TEST_CASE("laurent residue") {
    auto s = makeSpace({"z", "k"});
    RF z = RF::symbol(s, "z"), k = RF::symbol(s, "k");
    CHECK(residueAtOrigin(z * z + cst(s, 5), 0).isZero());
    CHECK(residueAtOrigin((k + cst(s, 2)) / z, 0) == k + cst(s, 2));
    RF f = (k / (z * z * z)) + (k * k) / z + z * k;
    CHECK(residueAtOrigin(f, 0) == k * k);
    CHECK(residueAtInfinity(f, 0) == -(k * k));
    CHECK_THROWS_AS(residueAtOrigin(cst(s, 1) / (z + cst(s, 1)), 0), NotLaurent);

    // residue of an exact derivative vanishes
    LaurentObject l(s, 0);
    l.setCoef(-3, k);
    l.setCoef(-1, k * k + cst(s, 1));
    l.setCoef(2, k - cst(s, 4));
    CHECK(l.derivative().residue().isZero());
    CHECK(residueAtOrigin(l.toRational(), 0) == k * k + cst(s, 1));
}

TEST_CASE("rescale variable") {
    auto s = makeSpace({"L"});
    RF L = RF::symbol(s, "L");
    FormalSeries f(s, SeriesVar::T, 1, 6);
    f.setCoef(0, cst(s, 1));
    f.setCoef(2, L);
    f.setCoef(4, L * L);
    FormalSeries g = rescaleVariable(f, cst(s, 1) / L); // t -> t/L
    CHECK(g.coef(1) == cst(s, 1));
    CHECK(g.coef(2) == cst(s, 1));
    CHECK(g.coef(0) == cst(s, 1));
}
