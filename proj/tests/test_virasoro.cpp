#include "doctest.h"

#include <random>

#include "heunblocks/virasoro.hpp"
#include "oracles.hpp"

using namespace heunblocks;

namespace {

SpacePtr naturalSpace() {
    return makeSpace({"c", "Delta0", "Delta1", "Deltat", "Deltainf", "Deltasigma"});
}

RF cst(const SpacePtr& s, long n, long d = 1) { return RF::constant(s, BigRat(n, d)); }

struct Syms {
    SpacePtr sp = naturalSpace();
    RF c = RF::symbol(sp, "c");
    RF d0 = RF::symbol(sp, "Delta0");
    RF d1 = RF::symbol(sp, "Delta1");
    RF dt = RF::symbol(sp, "Deltat");
    RF dinf = RF::symbol(sp, "Deltainf");
    RF ds = RF::symbol(sp, "Deltasigma");
};

BigRat rat(long n, long d = 1) { return frac(n, d); }

} // namespace

TEST_CASE("partitions are enumerated smallest leading part first") {
    auto p2 = partitionsOf(2);
    REQUIRE(p2.size() == 2);
    CHECK(p2[0].parts == std::vector<int>{1, 1});
    CHECK(p2[1].parts == std::vector<int>{2});
    auto p4 = partitionsOf(4);
    CHECK(p4.size() == 5);
    CHECK(p4[0].parts == std::vector<int>{1, 1, 1, 1});
    CHECK(p4[4].parts == std::vector<int>{4});
    for (const auto& p : p4) CHECK(p.weight() == 4);
}

TEST_CASE("single commutators on descendants") {
    Syms s;
    VermaContext ctx(s.ds, s.c);
    // L_1 L_{-1}|D> = 2D |D>
    VermaState st = ctx.apply(1, Partition{{1}});
    CHECK(ctx.vacuumCoefficient(st) == cst(s.sp, 2) * s.ds);
    // L_2 L_{-2}|D> = (4D + c/2)|D>
    st = ctx.apply(2, Partition{{2}});
    CHECK(ctx.vacuumCoefficient(st) == cst(s.sp, 4) * s.ds + s.c / cst(s.sp, 2));
    // L_1 L_{-1}^2 |D> = (4D+2) L_{-1}|D>
    st = ctx.apply(1, Partition{{1, 1}});
    REQUIRE(st.size() == 1);
    CHECK(st.begin()->first.parts == std::vector<int>{1});
    CHECK(st.begin()->second == cst(s.sp, 4) * s.ds + cst(s.sp, 2));
}

TEST_CASE("level-2 gram matrix matches the resolution-of-identity display") {
    Syms s;
    VermaContext ctx(s.ds, s.c);
    auto g = gramMatrix(2, ctx);
    CHECK(g[0][0] == cst(s.sp, 4) * s.ds * (cst(s.sp, 2) * s.ds + cst(s.sp, 1)));
    CHECK(g[0][1] == cst(s.sp, 6) * s.ds);
    CHECK(g[1][0] == cst(s.sp, 6) * s.ds);
    CHECK(g[1][1] == cst(s.sp, 4) * s.ds + s.c / cst(s.sp, 2));
}

TEST_CASE("gram matrices are symmetric and match the word oracle") {
    Syms s;
    VermaContext ctx(s.ds, s.c);
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> dist(2, 23);
    for (int level = 1; level <= 4; ++level) {
        auto g = gramMatrix(level, ctx);
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = 0; j < i; ++j) CHECK(g[i][j] == g[j][i]);
        // numeric cross-check against the independent word evaluator
        for (int rep = 0; rep < 3; ++rep) {
            oracle::Rat c(dist(rng), dist(rng)), d(dist(rng), dist(rng));
            c.canonicalize();
            d.canonicalize();
            std::vector<BigRat> pt{BigRat(c.get_str()), BigRat(0), BigRat(0),
                                   BigRat(0), BigRat(0), BigRat(d.get_str())};
            auto parts = partitionsOf(level);
            for (size_t i = 0; i < parts.size(); ++i)
                for (size_t j = 0; j < parts.size(); ++j) {
                    oracle::Word w(parts[i].parts.rbegin(), parts[i].parts.rend());
                    for (int p : parts[j].parts) w.push_back(-p);
                    oracle::Rat expect = oracle::vacuumExpectation(w, c, d);
                    BigRat got = evaluateRational(g[i][j], pt);
                    CHECK(got == BigRat(expect.get_str()));
                }
        }
    }
}

TEST_CASE("kac degenerate dimensions annihilate the gram determinant") {
    // det G_n vanishes at Delta_{p,q} for p*q <= n; check numerically at b = 2
    // and b = 3/5 through level 3 via the linear solver raising GramSingular.
    auto sp = naturalSpace();
    for (BigRat b : {BigRat(2), BigRat(3, 5)}) {
        BigRat binv = 1 / b;
        BigRat cval = 1 + 6 * (b + binv) * (b + binv);
        for (int p = 1; p <= 3; ++p)
            for (int q = 1; p * q <= 3; ++q) {
                BigRat pq = (b + binv) * (b + binv) - (p * b + q * binv) * (p * b + q * binv);
                BigRat dpq = pq / 4;
                int level = p * q;
                VermaContext ctx(RF::constant(sp, dpq), RF::constant(sp, cval));
                auto g = gramMatrix(level, ctx);
                // determinant via fraction-free elimination on constants
                size_t n = g.size();
                std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) m[i][j] = g[i][j].constantValue();
                BigRat det(1);
                bool zero = false;
                for (size_t col = 0; col < n && !zero; ++col) {
                    size_t piv = col;
                    while (piv < n && m[piv][col] == 0) ++piv;
                    if (piv == n) { zero = true; break; }
                    if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
                    det *= m[col][col];
                    for (size_t r = col + 1; r < n; ++r) {
                        BigRat f = m[r][col] / m[col][col];
                        for (size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
                    }
                }
                if (!zero) zero = (det == 0);
                CHECK(zero);
            }
    }
}

TEST_CASE("vertex overlaps: normalization and one-generator cases") {
    Syms s;
    VertexContext vc(s.dinf, s.d1, s.ds, s.c);
    CHECK(vc.overlap(Partition{}, Partition{}) == cst(s.sp, 1));
    // <dinf| V L_{-1} |ds> = ds + d1 - dinf (one-step commutator oracle)
    CHECK(vc.overlap(Partition{}, Partition{{1}}) == s.ds + s.d1 - s.dinf);
    VertexContext in(s.ds, s.dt, s.d0, s.c);
    CHECK(in.overlap(Partition{{1}}, Partition{}) == s.ds - s.d0 + s.dt);
}

TEST_CASE("vertex overlaps match the independent word oracle") {
    Syms s;
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> dist(2, 19);
    auto draw = [&]() { return frac(dist(rng), dist(rng)); };
    for (int rep = 0; rep < 4; ++rep) {
        BigRat c = draw(), d3 = draw(), d2 = draw(), d1v = draw();
        VertexContext vc(RF::constant(s.sp, d3), RF::constant(s.sp, d2),
                         RF::constant(s.sp, d1v), RF::constant(s.sp, c));
        oracle::Rat oc(c.get_str()), o3(d3.get_str()), o2(d2.get_str()), o1(d1v.get_str());
        for (int nb = 0; nb <= 3; ++nb)
            for (int nk = 0; nk <= 3; ++nk)
                for (const auto& bra : partitionsOf(nb))
                    for (const auto& ket : partitionsOf(nk)) {
                        oracle::Word braW(bra.parts.rbegin(), bra.parts.rend());
                        oracle::Word ketW;
                        for (int p : ket.parts) ketW.push_back(-p);
                        oracle::Rat expect = oracle::vertexWord(braW, ketW, o3, o2, o1, oc);
                        BigRat got = vc.overlap(bra, ket).constantValue();
                        CHECK(got == BigRat(expect.get_str()));
                    }
    }
}

TEST_CASE("whittaker overlaps follow the eigenvalue rule") {
    auto sp = makeSpace({"Pstar"});
    RF p = RF::symbol(sp, "Pstar");
    RF quarter = RF::constant(sp, BigRat(1, 4));
    CHECK(whittakerOverlap(Partition{{1, 1}}, p, quarter) == p * p);
    CHECK(whittakerOverlap(Partition{{2}}, p, quarter) == quarter);
    CHECK(whittakerOverlap(Partition{{3}}, p, quarter).isZero());
    CHECK(whittakerOverlap(Partition{{2, 1, 1}}, p, quarter) == quarter * p * p);
}

TEST_CASE("regular block reproduces the printed F1 and F2") {
    Syms s;
    BlockSeries blk = regularBlock(2, RegularBlockDims{s.c, s.d0, s.d1, s.dt, s.dinf, s.ds});
    REQUIRE(blk.series.offset().has_value());
    CHECK(*blk.series.offset() == s.ds - s.d0 - s.dt);
    RF f1 = (s.ds - s.d0 + s.dt) * (s.ds - s.dinf + s.d1) / (cst(s.sp, 2) * s.ds);
    CHECK(blk.series.coef(1) == f1);
    RF one = cst(s.sp, 1), two = cst(s.sp, 2), three = cst(s.sp, 3), four = cst(s.sp, 4);
    RF f2 = (s.ds - s.d0 + s.dt) * (s.ds - s.d0 + s.dt + one) * (s.ds - s.dinf + s.d1) *
                (s.ds - s.dinf + s.d1 + one) / (four * s.ds * (one + two * s.ds)) +
            (one + two * s.ds) *
                (s.d0 + s.dt + (s.ds * (s.ds - one) - three * (s.d0 - s.dt).pow(2)) / (one + two * s.ds)) *
                (s.dinf + s.d1 + (s.ds * (s.ds - one) - three * (s.dinf - s.d1).pow(2)) / (one + two * s.ds)) /
                (two * (one - four * s.ds).pow(2) + two * (s.c - one) * (one + two * s.ds));
    CHECK(blk.series.coef(2) == f2);
    // specialization: dt = 0, ds = d0 makes F1 vanish
    auto pt = std::vector<BigRat>{rat(7), rat(3), rat(5), rat(0), rat(11), rat(3)};
    CHECK(evaluateRational(blk.series.coef(1), pt) == 0);
}

TEST_CASE("F3 and F4 agree with the brute-force word oracle at random points") {
    Syms s;
    BlockSeries blk = regularBlock(4, RegularBlockDims{s.c, s.d0, s.d1, s.dt, s.dinf, s.ds});
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> dist(2, 13);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<BigRat> pt;
        std::vector<oracle::Rat> opt;
        for (int i = 0; i < 6; ++i) {
            BigRat v = frac(dist(rng), dist(rng));
            pt.push_back(v);
            opt.emplace_back(v.get_str());
        }
        for (int n = 3; n <= 4; ++n) {
            oracle::Rat expect =
                oracle::regularBlockCoefOracle(n, opt[0], opt[1], opt[2], opt[3], opt[4], opt[5]);
            CHECK(evaluateRational(blk.series.coef(n), pt) == BigRat(expect.get_str()));
        }
    }
}

TEST_CASE("block coefficients are invariant under the (0,t)<->(inf,1) swap") {
    Syms s;
    BlockSeries blk = regularBlock(4, RegularBlockDims{s.c, s.d0, s.d1, s.dt, s.dinf, s.ds});
    BlockSeries swapped = regularBlock(4, RegularBlockDims{s.c, s.dinf, s.dt, s.d1, s.d0, s.ds});
    for (int n = 1; n <= 4; ++n) CHECK(blk.series.coef(n) == swapped.series.coef(n));
}

TEST_CASE("Nf=3 block matches the printed expansion") {
    auto sp = makeSpace({"c", "Delta0", "Deltat", "Deltasigma", "Pstar"});
    RF c = RF::symbol(sp, "c"), d0 = RF::symbol(sp, "Delta0"), dt = RF::symbol(sp, "Deltat");
    RF ds = RF::symbol(sp, "Deltasigma"), ps = RF::symbol(sp, "Pstar");
    auto k = [&](long n, long d = 1) { return RF::constant(sp, BigRat(n, d)); };
    BlockSeries blk = confluentFirstKind(3, 2, FirstKindDims{c, ds, ps, RF(sp), d0, dt});
    CHECK(*blk.series.offset() == ds - d0 - dt);
    CHECK(blk.series.coef(1) == (ds - d0 + dt) * ps / (k(2) * ds));
    RF t2 = ((ds - d0 + dt) * (ds - d0 + dt + k(1)) * ps * ps / (ds * (k(1) + k(2) * ds)) +
             (d0 + dt + (ds * (ds - k(1)) - k(3) * (d0 - dt).pow(2)) / (k(1) + k(2) * ds)) *
                 (k(1) + k(2) * ds - k(6) * ps * ps) /
                 (k(16) * ds * ds - k(10) * ds + c * (k(1) + k(2) * ds))) /
            k(4);
    CHECK(blk.series.coef(2) == t2);
}

TEST_CASE("Nf=2,1,0 blocks match the printed expansions") {
    auto sp = makeSpace({"c", "Deltasigma", "Pstar", "Pstar2"});
    RF c = RF::symbol(sp, "c"), ds = RF::symbol(sp, "Deltasigma");
    RF p = RF::symbol(sp, "Pstar"), p2 = RF::symbol(sp, "Pstar2");
    auto k = [&](long n, long d = 1) { return RF::constant(sp, BigRat(n, d)); };
    RF denom = k(16) * ds * ds - k(10) * ds + c * (k(1) + k(2) * ds);

    BlockSeries nf2 = confluentFirstKind(2, 2, FirstKindDims{c, ds, p, p2, RF(sp), RF(sp)});
    CHECK(*nf2.series.offset() == ds);
    CHECK(nf2.series.coef(1) == p * p2 / (k(2) * ds));
    RF nf2t2 = (p2 * p2 * p * p * (c / (k(4) * ds) + k(2)) - k(3, 4) * (p2 * p2 + p * p) +
                k(1, 8) * (k(1) + k(2) * ds)) /
               denom;
    CHECK(nf2.series.coef(2) == nf2t2);

    BlockSeries nf1 = confluentFirstKind(1, 2, FirstKindDims{c, ds, p, RF(sp), RF(sp), RF(sp)});
    CHECK(nf1.series.coef(1) == p / (k(2) * ds));
    CHECK(nf1.series.coef(2) == (p * p * (c / (k(4) * ds) + k(2)) - k(3, 4)) / denom);

    BlockSeries nf0 = confluentFirstKind(0, 2, FirstKindDims{c, ds, RF(sp), RF(sp), RF(sp), RF(sp)});
    CHECK(nf0.series.coef(1) == k(1) / (k(2) * ds));
    CHECK(nf0.series.coef(2) == (c / (k(4) * ds) + k(2)) / denom);
}

TEST_CASE("Nf=3 coefficients have P* parity matching the order") {
    auto sp = makeSpace({"c", "Delta0", "Deltat", "Deltasigma", "Pstar"});
    RF c = RF::symbol(sp, "c"), d0 = RF::symbol(sp, "Delta0"), dt = RF::symbol(sp, "Deltat");
    RF ds = RF::symbol(sp, "Deltasigma"), ps = RF::symbol(sp, "Pstar");
    BlockSeries blk = confluentFirstKind(3, 4, FirstKindDims{c, ds, ps, RF(sp), d0, dt});
    int pstar = sp->index("Pstar");
    for (int n = 1; n <= 4; ++n) {
        RF fn = blk.series.coef(n);
        CHECK(fn.den().degreeIn(pstar) == 0);
        CHECK(fn.num().degreeIn(pstar) <= n);
        for (const auto& [m, coef] : fn.num().terms())
            CHECK((m.e[pstar] - n) % 2 == 0);
    }
}

TEST_CASE("first-kind confluence chain verifies exactly through t^3") {
    for (int nf = 3; nf >= 1; --nf) {
        SeriesReport rep = checkBlockConfluence(nf, 3);
        INFO(rep.lhsLabel, " vs ", rep.rhsLabel);
        if (rep.firstMismatch)
            INFO(rep.firstMismatch->order, ": ", rep.firstMismatch->lhs, " != ",
                 rep.firstMismatch->rhs);
        CHECK(rep.exactEqual);
        CHECK(rep.ordersChecked.size() == 3);
    }
}

TEST_CASE("type D block reproduces the printed D1, D2, D3") {
    auto sp = makeSpace({"c", "Delta0", "Deltat", "Pstar", "Pnu", "Lambda"});
    RF c = RF::symbol(sp, "c"), d0 = RF::symbol(sp, "Delta0"), dt = RF::symbol(sp, "Deltat");
    RF ps = RF::symbol(sp, "Pstar"), pn = RF::symbol(sp, "Pnu");
    auto k = [&](long n, long d = 1) { return RF::constant(sp, BigRat(n, d)); };
    BlockSeries blk = typeDBlock(3, TypeDDims{c, d0, dt, ps, pn, sp->index("Lambda")});

    RF d1 = k(-4) * pn.pow(3) + k(6) * pn.pow(2) * ps + k(2) * pn * (d0 + dt - ps * ps) -
            k(2) * d0 * ps;
    CHECK(blk.series.coef(1) == d1);

    RF d2 = d1 * d1 / k(2) +
            k(2) * (d0 + (ps - k(3) * pn) * pn) * (dt - (k(2) * ps - k(3) * pn) * (ps - pn)) +
            (k(2) * (ps - k(2) * pn).pow(2) + (c - k(1)) / k(3)) * pn * (ps - pn);
    CHECK(blk.series.coef(2) == d2);

    RF d3 = d1 * d2 - d1.pow(3) / k(3) -
            (k(11) * pn * (ps - pn) - k(5, 3) * ps * ps + k(13, 6) * (d0 + dt)) * d1 +
            k(11, 3) * (dt - d0 - k(2) * ps * (ps - k(2) * pn)) *
                ((ps - pn) * d0 + pn * dt + ps * pn * (ps - pn)) +
            k(2, 3) * (c - k(2)) * ((ps - pn) * d0 - pn * dt) +
            k(1, 9) * (k(66) * ps * ps + k(17) * c - k(23)) * (ps - k(2) * pn) * (ps - pn) * pn;
    CHECK(blk.series.coef(3) == d3);

    // specialization Pnu = 0: D1 -> -2 Delta0 P*
    std::vector<BigRat> pt{rat(7), rat(2), rat(3), rat(5), rat(0), rat(1)};
    CHECK(evaluateRational(blk.series.coef(1), pt) == rat(-2) * rat(2) * rat(5));

    // prefactor data: t-power 2 Pnu (P* - Pnu), exponential (P* - Pnu) t
    CHECK(*blk.series.offset() == -(k(2) * pn * (ps - pn)));
    REQUIRE(blk.expLog.count(-2) == 1);
    CHECK(blk.expLog.at(-2) == ps - pn);
}

TEST_CASE("type G published coefficients and specialization") {
    auto sp = makeSpace({"c", "Delta0", "Pbullet", "Pnu"});
    auto [g1, g2] = typeGPublishedCoefficients(sp);
    RF c = RF::symbol(sp, "c"), d0 = RF::symbol(sp, "Delta0");
    RF pb = RF::symbol(sp, "Pbullet"), pn = RF::symbol(sp, "Pnu");
    auto k = [&](long n, long d = 1) { return RF::constant(sp, BigRat(n, d)); };
    CHECK(g1 == k(6) * pn.pow(3) - k(6) * pb * pn.pow(2) +
                    (pb * pb - k(3) * d0 - (c - k(1)) / k(8)) * pn + k(2) * pb * d0);
    // G2 - G1^2/2 as printed
    RF rem = g2 - g1 * g1 / k(2);
    RF expected = k(105, 4) * pn.pow(4) - k(35) * pb * pn.pow(3) +
                  (k(12) * pb * pb - k(33, 2) * d0 - (k(13) * c - k(19)) / k(8)) * pn.pow(2) +
                  (-pb * pb + k(18) * d0 + (k(19) * c - k(31)) / k(24)) * pb * pn +
                  (k(-16) * pb * pb + d0 + c - k(2)) * d0 / k(4);
    CHECK(rem == expected);
    // Pnu = 0 specialization: G1 -> 2 Pbullet Delta0
    std::vector<BigRat> pt{rat(3), rat(5), rat(7), rat(0)};
    CHECK(evaluateRational(g1, pt) == rat(2) * rat(7) * rat(5));

    BlockSeries blk = typeGBlock(sp);
    CHECK(blk.series.coef(2) == g1);
    CHECK(blk.series.coef(4) == g2);
    CHECK(*blk.series.offset() == -(d0 - k(3) * pn * pn + k(2) * pb * pn));
}

TEST_CASE("gram solve raises GramSingular on degenerate numeric input") {
    auto sp = naturalSpace();
    std::vector<std::vector<RF>> m{{RF(sp), RF(sp)}, {RF(sp), RF::constant(sp, BigRat(1))}};
    CHECK_THROWS_AS(solveLinear(m, {RF::constant(sp, BigRat(1)), RF(sp)}), GramSingular);
}
