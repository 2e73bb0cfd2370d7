#include "heunblocks/virasoro.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

namespace heunblocks {

std::string Partition::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    os << "]";
    return os.str();
}

std::vector<Partition> partitionsOf(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    // parts are listed descending inside each partition; partitions ordered by
    // ascending leading part: [1,1,...], [2,1,...], ..., [n]
    std::function<void(int, int)> gen = [&](int rem, int maxPart) {
        if (rem == 0) {
            Partition p;
            p.parts.assign(cur.rbegin(), cur.rend());
            out.push_back(std::move(p));
            return;
        }
        for (int first = 1; first <= std::min(rem, maxPart); ++first) {
            cur.push_back(first);
            gen(rem - first, first);
            cur.pop_back();
        }
    };
    if (n == 0) out.push_back(Partition{});
    if (n > 0) gen(n, n);
    return out;
}

namespace {

void addInto(VermaState& dst, const Partition& p, const RF& v) {
    if (v.isZero()) return;
    auto [it, fresh] = dst.emplace(p, v);
    if (!fresh) {
        it->second += v;
        if (it->second.isZero()) dst.erase(it);
    }
}

void addScaled(VermaState& dst, const VermaState& src, const RF& scale) {
    if (scale.isZero()) return;
    for (const auto& [p, v] : src) addInto(dst, p, v * scale);
}

} // namespace

const VermaState& VermaContext::apply(int m, const Partition& p) const {
    auto key = std::make_pair(m, p);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    VermaState out;
    const SpacePtr& sp = space();
    RF one = RF::constant(sp, BigRat(1));
    if (p.empty()) {
        if (m == 0) {
            addInto(out, p, delta_);
        } else if (m < 0) {
            addInto(out, Partition{{-m}}, one);
        } // m > 0 annihilates
    } else if (m == 0) {
        addInto(out, p, delta_ + RF::constant(sp, BigRat(p.weight())));
    } else {
        int a = p.parts.front();
        Partition rest = p.rest();
        if (m < 0 && -m >= a) {
            Partition sorted;
            sorted.parts.reserve(p.parts.size() + 1);
            sorted.parts.push_back(-m);
            sorted.parts.insert(sorted.parts.end(), p.parts.begin(), p.parts.end());
            addInto(out, sorted, one);
        } else {
            // L_m L_{-a} = L_{-a} L_m + (m+a) L_{m-a} + (c/12) m(m^2-1) delta_{m,a}
            VermaState inner = apply(m, rest);
            for (const auto& [q, v] : inner) {
                const VermaState& pre = apply(-a, q);
                addScaled(out, pre, v);
            }
            addScaled(out, apply(m - a, rest), RF::constant(sp, BigRat(m) + BigRat(a)));
            if (m == a) {
                RF central = c_ * RF::constant(sp, BigRat(static_cast<long>(m) *
                                                          (static_cast<long>(m) * m - 1), 12));
                addInto(out, rest, central);
            }
        }
    }
    auto [stored, fresh] = memo_.emplace(std::move(key), std::move(out));
    return stored->second;
}

VermaState VermaContext::apply(int m, const VermaState& s) const {
    VermaState out;
    for (const auto& [p, v] : s) addScaled(out, apply(m, p), v);
    return out;
}

RF VermaContext::vacuumCoefficient(const VermaState& s) const {
    auto it = s.find(Partition{});
    return it == s.end() ? RF(space()) : it->second;
}

std::vector<std::vector<RF>> gramMatrix(int level, const VermaContext& ctx) {
    auto parts = partitionsOf(level);
    size_t n = parts.size();
    std::vector<std::vector<RF>> g(n, std::vector<RF>(n, RF(ctx.space())));
    for (size_t j = 0; j < n; ++j) {
        VermaState ket{{parts[j], RF::constant(ctx.space(), BigRat(1))}};
        for (size_t i = 0; i <= j; ++i) {
            VermaState state = ket;
            for (int part : parts[i].parts) state = ctx.apply(part, state);
            RF v = ctx.vacuumCoefficient(state);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    return g;
}

RF VertexContext::overlap(const Partition& bra, const Partition& ket) const {
    auto key = std::make_pair(bra, ket);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const SpacePtr& sp = d3_.space();
    RF out(sp);
    if (bra.empty() && ket.empty()) {
        out = RF::constant(sp, BigRat(1));
    } else if (!bra.empty()) {
        int p = bra.parts.front();
        Partition rest = bra.rest();
        // t d/dt acts as (bra dim + bra level) - vertex dim - (ket dim + ket
        // level); the commutator adds (p+1) * vertex dim
        RF grade = d3_ - d2_ - d1_ +
                   RF::constant(sp, BigRat(bra.weight() - p)) -
                   RF::constant(sp, BigRat(ket.weight())) +
                   d2_ * RF::constant(sp, BigRat(p + 1));
        out = grade * overlap(rest, ket);
        VermaState lowered = ket_.apply(p, ket);
        for (const auto& [q, v] : lowered) out += v * overlap(rest, q);
    } else {
        int q0 = ket.parts.front();
        Partition rest = ket.rest();
        RF grade = d3_ - d2_ - d1_ -
                   RF::constant(sp, BigRat(ket.weight() - q0)) +
                   d2_ * RF::constant(sp, BigRat(1 - q0));
        out = -grade * overlap(bra, rest);
    }
    memo_.emplace(std::move(key), out);
    return out;
}

RF whittakerOverlap(const Partition& p, const RF& l1, const RF& l2) {
    RF out = RF::constant(l1.space(), BigRat(1));
    for (int part : p.parts) {
        if (part == 1)
            out *= l1;
        else if (part == 2)
            out *= l2;
        else
            return RF(l1.space()); // L_n kills the rank-1 Whittaker vector for n > 2
    }
    return out;
}

std::vector<RF> solveLinear(std::vector<std::vector<RF>> a, std::vector<RF> rhs) {
    size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].isZero()) ++piv;
        if (piv == n) throw GramSingular("matrix is singular as a rational function");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].isZero()) continue;
            RF f = a[row][col] / a[col][col];
            for (size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<RF> x;
    x.reserve(n);
    for (size_t i = 0; i < n; ++i) x.push_back(rhs[i] / a[i][i]);
    return x;
}

std::string blockKindName(BlockKind k) {
    switch (k) {
        case BlockKind::Regular4pt: return "regular4pt";
        case BlockKind::Nf3: return "Nf3";
        case BlockKind::Nf2: return "Nf2";
        case BlockKind::Nf1: return "Nf1";
        case BlockKind::Nf0: return "Nf0";
        case BlockKind::TypeD: return "typeD";
        case BlockKind::TypeG: return "typeG";
    }
    return "?";
}

BlockKind blockKindFromName(const std::string& s) {
    for (BlockKind k : {BlockKind::Regular4pt, BlockKind::Nf3, BlockKind::Nf2, BlockKind::Nf1,
                        BlockKind::Nf0, BlockKind::TypeD, BlockKind::TypeG})
        if (blockKindName(k) == s) return k;
    throw ParseError("unknown block kind '" + s + "'");
}

namespace {

// fraction-free Bareiss determinant of a polynomial matrix
Poly detBareiss(std::vector<std::vector<Poly>> m, const SpacePtr& sp) {
    size_t n = m.size();
    if (n == 0) return Poly::constant(sp, 1);
    Poly prev = Poly::constant(sp, 1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].isZero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].isZero()) ++piv;
            if (piv == n) return Poly(sp);
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = divExact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    Poly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

// out^T G^{-1} in by Cramer's rule on the polynomial Gram matrix: one
// rational-function normalization per level instead of one per pivot.
RF quadraticFormViaCramer(const std::vector<std::vector<RF>>& g, const std::vector<RF>& in,
                          const std::vector<RF>& out, const SpacePtr& sp) {
    size_t n = in.size();
    bool polynomial = true;
    for (const auto& row : g)
        for (const auto& e : row) polynomial = polynomial && e.isPolynomial();
    for (const auto& e : in) polynomial = polynomial && e.isPolynomial();
    for (const auto& e : out) polynomial = polynomial && e.isPolynomial();
    if (!polynomial) {
        auto gc = g;
        std::vector<RF> x = solveLinear(std::move(gc), in);
        RF fn(sp);
        for (size_t i = 0; i < n; ++i) fn += out[i] * x[i];
        return fn;
    }
    std::vector<std::vector<Poly>> gp(n, std::vector<Poly>(n, Poly(sp)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) gp[i][j] = g[i][j].num();
    Poly det = detBareiss(gp, sp);
    if (det.isZero()) throw GramSingular("gram matrix is singular as a rational function");
    Poly acc(sp);
    for (size_t i = 0; i < n; ++i) {
        if (out[i].isZero()) continue;
        auto replaced = gp;
        for (size_t r = 0; r < n; ++r) replaced[r][i] = in[r].num();
        acc += out[i].num() * detBareiss(replaced, sp);
    }
    return RF(std::move(acc), std::move(det));
}

// sum over partitions of each level of out^T G^{-1} in
FormalSeries assembleBracket(int order, const SpacePtr& sp, const VermaContext& gramCtx,
                             const std::function<RF(const Partition&)>& outVec,
                             const std::function<RF(const Partition&)>& inVec) {
    FormalSeries bracket = FormalSeries::one(sp, SeriesVar::T, 1, 2 * order);
    for (int n = 1; n <= order; ++n) {
        auto parts = partitionsOf(n);
        auto g = gramMatrix(n, gramCtx);
        std::vector<RF> in, out;
        in.reserve(parts.size());
        out.reserve(parts.size());
        for (const auto& mu : parts) in.push_back(inVec(mu));
        for (const auto& lam : parts) out.push_back(outVec(lam));
        bracket.setCoef(2 * n, quadraticFormViaCramer(g, in, out, sp));
    }
    return bracket;
}

} // namespace

BlockSeries regularBlock(int order, const RegularBlockDims& d) {
    const SpacePtr& sp = d.c.space();
    VermaContext gramCtx(d.dimSigma, d.c);
    VertexContext out(d.dimInf, d.dim1, d.dimSigma, d.c);
    VertexContext in(d.dimSigma, d.dimT, d.dim0, d.c);
    FormalSeries bracket = assembleBracket(
        order, sp, gramCtx,
        [&](const Partition& lam) { return out.overlap(Partition{}, lam); },
        [&](const Partition& mu) { return in.overlap(mu, Partition{}); });
    bracket.setOffset(d.dimSigma - d.dim0 - d.dimT);
    return BlockSeries{BlockKind::Regular4pt, std::move(bracket), {}};
}

BlockSeries confluentFirstKind(int nf, int order, const FirstKindDims& d) {
    const SpacePtr& sp = d.c.space();
    VermaContext gramCtx(d.dimSigma, d.c);
    RF one = RF::constant(sp, BigRat(1));
    RF quarter = RF::constant(sp, BigRat(1, 4));
    RF zero(sp);

    std::function<RF(const Partition&)> outVec, inVec;
    RF offset = d.dimSigma;
    BlockKind kind;
    std::unique_ptr<VertexContext> vtx;
    switch (nf) {
        case 3:
            kind = BlockKind::Nf3;
            vtx = std::make_unique<VertexContext>(d.dimSigma, d.dimT, d.dim0, d.c);
            outVec = [&, q = quarter](const Partition& lam) { return whittakerOverlap(lam, d.pstar, q); };
            inVec = [&](const Partition& mu) { return vtx->overlap(mu, Partition{}); };
            offset = d.dimSigma - d.dim0 - d.dimT;
            break;
        case 2:
            kind = BlockKind::Nf2;
            outVec = [&, q = quarter](const Partition& lam) { return whittakerOverlap(lam, d.pstar, q); };
            inVec = [&, q = quarter](const Partition& mu) { return whittakerOverlap(mu, d.pstar2, q); };
            break;
        case 1:
            kind = BlockKind::Nf1;
            outVec = [&, q = quarter](const Partition& lam) { return whittakerOverlap(lam, d.pstar, q); };
            inVec = [&, o = one, z = zero](const Partition& mu) { return whittakerOverlap(mu, o, z); };
            break;
        case 0:
            kind = BlockKind::Nf0;
            outVec = [&, o = one, z = zero](const Partition& lam) { return whittakerOverlap(lam, o, z); };
            inVec = [&, o = one, z = zero](const Partition& mu) { return whittakerOverlap(mu, o, z); };
            break;
        default:
            throw UnsupportedEquation("first-kind blocks exist for Nf = 0..3");
    }
    FormalSeries bracket = assembleBracket(order, sp, gramCtx, outVec, inVec);
    bracket.setOffset(offset);
    return BlockSeries{kind, std::move(bracket), {}};
}

BlockSeries typeDBlock(int order, const TypeDDims& d) {
    const SpacePtr& sp = d.c.space();
    RF lambda = RF::symbol(sp, sp->name(d.lambdaSym));
    RF half = RF::constant(sp, BigRat(1, 2));
    RF c24 = (d.c - RF::constant(sp, BigRat(1))) / RF::constant(sp, BigRat(24));
    auto dimOf = [&](const RF& p) { return c24 + p * p; };

    RegularBlockDims reg{
        d.c,
        dimOf((lambda - d.pstar) * half),          // ket-end dimension
        dimOf((lambda + d.pstar) * half),          // vertex at 1
        d.dimT,                                    // vertex at t
        d.dim0,                                    // bra-end dimension
        dimOf((lambda + d.pstar) * half - d.pnu),  // intermediate
    };
    BlockSeries regular = regularBlock(order, reg);

    // bracket of F(Lambda/t) as a series in 1/t
    FormalSeries blockPart(sp, SeriesVar::InvT, 1, 2 * order);
    for (int n = 0; n <= order; ++n)
        blockPart.setCoef(2 * n, regular.series.coef(n) * lambda.pow(n));

    // (1 - Lambda/t)^alpha with alpha = (P*-Pnu)(Lambda+Pnu) + Deltat
    RF alpha = (d.pstar - d.pnu) * (lambda + d.pnu) + d.dimT;
    FormalSeries base = FormalSeries::one(sp, SeriesVar::InvT, 1, 2 * order);
    base.setCoef(2, -lambda);
    FormalSeries prefactor = powBinomial(base, alpha);

    FormalSeries product = prefactor * blockPart;
    FormalSeries bracket(sp, SeriesVar::InvT, 1, 2 * order);
    for (int n = 0; n <= order; ++n) {
        RF dn = limitAtInfinity(product.coef(n), d.lambdaSym);
        bracket.setCoef(2 * n, dn);
    }
    if (!(bracket.coef(0).isConstant() && bracket.coef(0).constantValue() == 1))
        throw DivergentLimit("collision limit lost the unit leading coefficient");

    // prefactor t^{2 Pnu (P*-Pnu)} e^{(P*-Pnu) t}: offset carries the power in
    // invt units, expLog the exponential part (t^1 = invt^-1, ticks -2)
    RF tPower = RF::constant(sp, BigRat(2)) * d.pnu * (d.pstar - d.pnu);
    bracket.setOffset(-tPower);
    std::map<int64_t, RF> expLog;
    expLog.emplace(-2, d.pstar - d.pnu);
    return BlockSeries{BlockKind::TypeD, std::move(bracket), std::move(expLog)};
}

std::pair<RF, RF> typeGPublishedCoefficients(const SpacePtr& sp) {
    RF c = RF::symbol(sp, "c");
    RF d0 = RF::symbol(sp, "Delta0");
    RF pb = RF::symbol(sp, "Pbullet");
    RF pn = RF::symbol(sp, "Pnu");
    auto k = [&](long n, long d = 1) { return RF::constant(sp, BigRat(n, d)); };
    RF g1 = k(6) * pn.pow(3) - k(6) * pb * pn.pow(2) +
            (pb * pb - k(3) * d0 - (c - k(1)) / k(8)) * pn + k(2) * pb * d0;
    RF g2 = g1 * g1 / k(2) + k(105, 4) * pn.pow(4) - k(35) * pb * pn.pow(3) +
            (k(12) * pb * pb - k(33, 2) * d0 - (k(13) * c - k(19)) / k(8)) * pn.pow(2) +
            (-pb * pb + k(18) * d0 + (k(19) * c - k(31)) / k(24)) * pb * pn +
            (k(-16) * pb * pb + d0 + c - k(2)) * d0 / k(4);
    return {g1, g2};
}

BlockSeries typeGBlock(const SpacePtr& sp) {
    auto [g1, g2] = typeGPublishedCoefficients(sp);
    RF d0 = RF::symbol(sp, "Delta0");
    RF pb = RF::symbol(sp, "Pbullet");
    RF pn = RF::symbol(sp, "Pnu");
    auto k = [&](long n, long d = 1) { return RF::constant(sp, BigRat(n, d)); };
    FormalSeries bracket = FormalSeries::one(sp, SeriesVar::InvT, 1, 8);
    bracket.setCoef(4, g1); // invt^2
    bracket.setCoef(8, g2); // invt^4
    RF tPower = d0 - k(3) * pn * pn + k(2) * pb * pn;
    bracket.setOffset(-tPower);
    std::map<int64_t, RF> expLog;
    expLog.emplace(-4, pn / k(2)); // exp(Pnu t^2 / 2)
    return BlockSeries{BlockKind::TypeG, std::move(bracket), std::move(expLog)};
}

SeriesReport checkBlockConfluence(int nfFrom, int order) {
    SeriesReport report;
    if (nfFrom < 1 || nfFrom > 3)
        throw UnsupportedEquation("confluence links run 3->2, 2->1, 1->0");
    report.lhsLabel = "termwise limit of Nf=" + std::to_string(nfFrom) + " block";
    report.rhsLabel = "Nf=" + std::to_string(nfFrom - 1) + " block";

    if (nfFrom == 3) {
        auto sp = makeSpace({"c", "Deltasigma", "Pstar", "Pstar2", "Lambda"});
        RF c = RF::symbol(sp, "c"), ds = RF::symbol(sp, "Deltasigma");
        RF p1 = RF::symbol(sp, "Pstar"), p2 = RF::symbol(sp, "Pstar2");
        RF lam = RF::symbol(sp, "Lambda");
        RF half = RF::constant(sp, BigRat(1, 2));
        RF c24 = (c - RF::constant(sp, BigRat(1))) / RF::constant(sp, BigRat(24));
        FirstKindDims upper{c, ds, p1, RF(sp), c24 + ((lam - p2) * half).pow(2),
                            c24 + ((lam + p2) * half).pow(2)};
        BlockSeries up = confluentFirstKind(3, order, upper);
        FirstKindDims lower{c, ds, p1, p2, RF(sp), RF(sp)};
        BlockSeries low = confluentFirstKind(2, order, lower);
        int lamSym = sp->index("Lambda");
        for (int n = 1; n <= order; ++n) {
            RF rhs = low.series.coef(n);
            try {
                RF lhs = limitAtInfinity(up.series.coef(n) / lam.pow(n), lamSym);
                report.record("t^" + std::to_string(n), lhs == rhs, lhs.str(), rhs.str());
            } catch (const DivergentLimit& e) {
                report.record("t^" + std::to_string(n), false, e.what(), rhs.str());
            }
        }
        return report;
    }

    // 2->1 and 1->0 send one Whittaker eigenvalue to infinity with t rescaled
    auto sp = makeSpace({"c", "Deltasigma", "Pstar", "Pstar2"});
    RF c = RF::symbol(sp, "c"), ds = RF::symbol(sp, "Deltasigma");
    RF p1 = RF::symbol(sp, "Pstar"), p2 = RF::symbol(sp, "Pstar2");
    const bool from2 = nfFrom == 2;
    BlockSeries up = from2
        ? confluentFirstKind(2, order, FirstKindDims{c, ds, p1, p2, RF(sp), RF(sp)})
        : confluentFirstKind(1, order, FirstKindDims{c, ds, p1, RF(sp), RF(sp), RF(sp)});
    BlockSeries low = from2
        ? confluentFirstKind(1, order, FirstKindDims{c, ds, p1, RF(sp), RF(sp), RF(sp)})
        : confluentFirstKind(0, order, FirstKindDims{c, ds, RF(sp), RF(sp), RF(sp), RF(sp)});
    int limSym = sp->index(from2 ? "Pstar2" : "Pstar");
    RF lim = RF::symbol(sp, sp->name(limSym));
    for (int n = 1; n <= order; ++n) {
        RF rhs = low.series.coef(n);
        try {
            RF lhs = limitAtInfinity(up.series.coef(n) / lim.pow(n), limSym);
            report.record("t^" + std::to_string(n), lhs == rhs, lhs.str(), rhs.str());
        } catch (const DivergentLimit& e) {
            report.record("t^" + std::to_string(n), false, e.what(), rhs.str());
        }
    }
    return report;
}

} // namespace heunblocks
