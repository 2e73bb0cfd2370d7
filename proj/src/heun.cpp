#include "heunblocks/heun.hpp"

#include <cmath>

namespace heunblocks {

std::string heunEquationName(HeunEquation e) {
    switch (e) {
        case HeunEquation::HVI: return "HVI";
        case HeunEquation::HV: return "HV";
        case HeunEquation::HIII1: return "HIII1";
        case HeunEquation::HIII2: return "HIII2";
        case HeunEquation::HIII3: return "HIII3";
        case HeunEquation::HIV: return "HIV";
        case HeunEquation::HII: return "HII";
        case HeunEquation::HI: return "HI";
        case HeunEquation::HIII1p: return "HIII1p";
        case HeunEquation::HIIp: return "HIIp";
    }
    return "?";
}

HeunEquation heunEquationFromName(const std::string& s) {
    for (HeunEquation e : {HeunEquation::HVI, HeunEquation::HV, HeunEquation::HIII1,
                           HeunEquation::HIII2, HeunEquation::HIII3, HeunEquation::HIV,
                           HeunEquation::HII, HeunEquation::HI, HeunEquation::HIII1p,
                           HeunEquation::HIIp})
        if (heunEquationName(e) == s) return e;
    throw ParseError("unknown equation '" + s + "'");
}

RF CFFamily::dict(const std::string& name) const {
    for (const auto& [k, v] : dictionary)
        if (k == name) return v;
    throw UnknownSymbol("no dictionary entry '" + name + "' for " + heunEquationName(equation));
}

namespace {
RF shiftArg(const RF& base, int n) {
    return base + RF::constant(base.space(), BigRat(n));
}
} // namespace

RF CFFamily::A(int n) const {
    const SpacePtr& sp = space;
    RF one = RF::constant(sp, BigRat(1));
    RF half = RF::constant(sp, frac(1, 2));
    switch (equation) {
        case HeunEquation::HVI:
            return (shiftArg(omega, n - 1) + dict("alpha")) * (shiftArg(omega, n - 1) + dict("beta"));
        case HeunEquation::HV:
            return shiftArg(omega, n - 1) + dict("alpha");
        case HeunEquation::HIII1:
        case HeunEquation::HIII2:
            return RF::symbol(sp, "thetastar") - shiftArg(omega, n) + half;
        case HeunEquation::HIII3:
            return one;
        default:
            throw UnsupportedEquation(heunEquationName(equation) + " has no Floquet recurrence");
    }
}

RF CFFamily::C(int n) const {
    const SpacePtr& sp = space;
    RF one = RF::constant(sp, BigRat(1));
    RF half = RF::constant(sp, frac(1, 2));
    switch (equation) {
        case HeunEquation::HVI:
            return shiftArg(omega, n + 1) * (shiftArg(omega, n) + dict("gamma"));
        case HeunEquation::HV:
            return -shiftArg(omega, n + 1) * (shiftArg(omega, n) + dict("beta"));
        case HeunEquation::HIII1:
            return RF::symbol(sp, "thetastar2") + shiftArg(omega, n) + half;
        case HeunEquation::HIII2:
        case HeunEquation::HIII3:
            return one;
        default:
            throw UnsupportedEquation(heunEquationName(equation) + " has no Floquet recurrence");
    }
}

RF CFFamily::B(int n) const {
    const SpacePtr& sp = space;
    RF u = RF::symbol(sp, sp->name(unknownSym));
    RF t = RF::symbol(sp, sp->name(tSym));
    RF one = RF::constant(sp, BigRat(1));
    RF quarter = RF::constant(sp, frac(1, 4));
    switch (equation) {
        case HeunEquation::HVI:
            return u + shiftArg(omega, n) *
                           (dict("epsilon") + dict("delta") * t +
                            (shiftArg(omega, n - 1) + dict("gamma")) * (one + t));
        case HeunEquation::HV:
            return u - shiftArg(omega, n) * (shiftArg(omega, n - 1) + dict("beta") + dict("gamma") - t);
        case HeunEquation::HIII1:
            return u - t / RF::constant(sp, BigRat(2)) - quarter + shiftArg(omega, n).pow(2);
        case HeunEquation::HIII2:
        case HeunEquation::HIII3:
            return u - quarter + shiftArg(omega, n).pow(2);
        default:
            throw UnsupportedEquation(heunEquationName(equation) + " has no Floquet recurrence");
    }
}

CFFamily cfFamily(HeunEquation eq) {
    CFFamily f;
    f.equation = eq;
    auto half = [](const SpacePtr& sp) { return RF::constant(sp, frac(1, 2)); };
    auto one = [](const SpacePtr& sp) { return RF::constant(sp, BigRat(1)); };
    auto two = [](const SpacePtr& sp) { return RF::constant(sp, BigRat(2)); };
    switch (eq) {
        case HeunEquation::HVI: {
            f.space = makeSpace({"sigma", "theta0", "theta1", "thetat", "thetainf", "q", "t"});
            f.unknownIsQ = true;
            RF th0 = RF::symbol(f.space, "theta0"), th1 = RF::symbol(f.space, "theta1");
            RF tht = RF::symbol(f.space, "thetat"), thi = RF::symbol(f.space, "thetainf");
            RF sg = RF::symbol(f.space, "sigma");
            f.omega = sg + th0 + tht - half(f.space);
            f.dictionary = {
                {"alpha", one(f.space) - th0 - th1 - tht - thi},
                {"beta", one(f.space) - th0 - th1 - tht + thi},
                {"gamma", one(f.space) - two(f.space) * th0},
                {"delta", one(f.space) - two(f.space) * th1},
                {"epsilon", one(f.space) - two(f.space) * tht},
            };
            break;
        }
        case HeunEquation::HV: {
            f.space = makeSpace({"sigma", "theta0", "thetat", "thetastar", "q", "t"});
            f.unknownIsQ = true;
            RF th0 = RF::symbol(f.space, "theta0"), tht = RF::symbol(f.space, "thetat");
            RF ths = RF::symbol(f.space, "thetastar"), sg = RF::symbol(f.space, "sigma");
            f.omega = sg + th0 + tht - half(f.space);
            f.dictionary = {
                {"alpha", one(f.space) - th0 - tht - ths},
                {"beta", one(f.space) - two(f.space) * th0},
                {"gamma", one(f.space) - two(f.space) * tht},
            };
            break;
        }
        case HeunEquation::HIII1:
            f.space = makeSpace({"sigma", "thetastar", "thetastar2", "E", "t"});
            f.unknownIsQ = false;
            f.omega = RF::symbol(f.space, "sigma");
            break;
        case HeunEquation::HIII2:
            f.space = makeSpace({"sigma", "thetastar", "E", "t"});
            f.unknownIsQ = false;
            f.omega = RF::symbol(f.space, "sigma");
            break;
        case HeunEquation::HIII3:
            f.space = makeSpace({"sigma", "E", "t"});
            f.unknownIsQ = false;
            f.omega = RF::symbol(f.space, "sigma");
            break;
        default:
            throw UnsupportedEquation(heunEquationName(eq) +
                                      " has no Floquet characteristic in this catalog");
    }
    f.unknownSym = f.space->index(f.unknownIsQ ? "q" : "E");
    f.tSym = f.space->index("t");
    return f;
}

namespace {

// B(n) decomposed as unknown + b0 + b1*t over the reduced space
struct AffineB {
    RF b0, b1;
};

struct SolverSetup {
    CFFamily family;
    SpacePtr reduced;   // sigma + thetas
    SpacePtr solve;     // reduced + "_x"
    std::vector<RF> familyToSolve; // evaluate() values
    int xSym;

    RF toSolve(const RF& f) const { return evaluate(f, familyToSolve); }

    AffineB affineB(int n) const {
        RF b = family.B(n);
        int u = family.unknownSym, t = family.tSym;
        Poly num = b.num();
        if (!b.den().isOne() || num.degreeIn(u) != 1 || num.degreeIn(t) > 1)
            throw NonlinearOrderEquation("B(n) must be unknown + affine in t");
        Poly b0 = num.coefficientOf(u, 0).coefficientOf(t, 0);
        Poly b1 = num.coefficientOf(u, 0).coefficientOf(t, 1);
        Poly ucoef = num.coefficientOf(u, 1);
        if (!(ucoef.isConstant() && ucoef.constantValue() == 1) || ucoef.degreeIn(t) != 0)
            throw NonlinearOrderEquation("the unknown must enter B(n) with unit coefficient");
        return AffineB{toSolve(RF(b0)), toSolve(RF(b1))};
    }

    RF constA(int n) const { return checkedConst(family.A(n), "A"); }
    RF constC(int n) const { return checkedConst(family.C(n), "C"); }

private:
    RF checkedConst(const RF& f, const char* which) const {
        if (f.num().degreeIn(family.unknownSym) > 0 || f.num().degreeIn(family.tSym) > 0 ||
            f.den().degreeIn(family.unknownSym) > 0 || f.den().degreeIn(family.tSym) > 0)
            throw NonlinearOrderEquation(std::string(which) + "(n) must not involve the unknown or t");
        return toSolve(f);
    }
};

SolverSetup makeSetup(HeunEquation eq) {
    SolverSetup s{cfFamily(eq), nullptr, nullptr, {}, 0};
    std::vector<std::string> names;
    for (int i = 0; i < s.family.space->size(); ++i) {
        if (i == s.family.unknownSym || i == s.family.tSym) continue;
        names.push_back(s.family.space->name(i));
    }
    s.reduced = makeSpace(names);
    names.push_back("_x");
    s.solve = makeSpace(names);
    for (int i = 0; i < s.family.space->size(); ++i) {
        if (i == s.family.unknownSym || i == s.family.tSym)
            s.familyToSolve.push_back(RF(s.solve)); // never consumed after the affine split
        else
            s.familyToSolve.push_back(RF::symbol(s.solve, s.family.space->name(i)));
    }
    s.xSym = s.solve->index("_x");
    return s;
}

FormalSeries shiftedByT(const FormalSeries& s) {
    FormalSeries r(s.space(), s.var(), s.gridDen(), s.truncTicks() + 2);
    for (const auto& [k, v] : s.coefs()) r.setCoef(k + 2, v);
    return r;
}

} // namespace

AccessoryExpansion floquetExpansion(HeunEquation eq, int order, int depth) {
    SolverSetup setup = makeSetup(eq);
    if (depth < 0) depth = order + 1;
    const SpacePtr& sp = setup.solve;
    RF x = RF::symbol(sp, "_x");
    RF one = RF::constant(sp, BigRat(1));

    // affine B data for every ladder shift
    std::map<int, AffineB> bData;
    for (int n = -depth; n <= depth; ++n) bData.emplace(n, setup.affineB(n));

    std::vector<RF> known; // solved q_k in the solve space (x-free)
    for (int k = 0; k <= order; ++k) {
        auto bSeries = [&](int n) {
            FormalSeries f(sp, SeriesVar::T, 1, 2 * k);
            const AffineB& ab = bData.at(n);
            for (int j = 0; j <= k; ++j) {
                RF cj = j < k ? known[static_cast<size_t>(j)] : x;
                if (j == 0) cj += ab.b0;
                if (j == 1) cj += ab.b1;
                f.setCoef(2 * j, cj);
            }
            return f;
        };
        RF coefK(sp);
        if (k == 0) {
            coefK = -bSeries(0).coef(0);
        } else {
            FormalSeries up = bSeries(depth);
            for (int j = depth - 1; j >= 1; --j) {
                FormalSeries ratio(sp, SeriesVar::T, 1, 2 * k);
                ratio.setCoef(0, setup.constC(j) * setup.constA(j + 1));
                up = bSeries(j) - shiftedByT(ratio / up).truncated(2 * k);
            }
            {
                FormalSeries ratio(sp, SeriesVar::T, 1, 2 * k);
                ratio.setCoef(0, setup.constC(0) * setup.constA(1));
                up = shiftedByT(ratio / up).truncated(2 * k);
            }
            FormalSeries down = bSeries(-depth);
            for (int j = depth - 1; j >= 1; --j) {
                FormalSeries ratio(sp, SeriesVar::T, 1, 2 * k);
                ratio.setCoef(0, setup.constA(-j) * setup.constC(-j - 1));
                down = bSeries(-j) - shiftedByT(ratio / down).truncated(2 * k);
            }
            {
                FormalSeries ratio(sp, SeriesVar::T, 1, 2 * k);
                ratio.setCoef(0, setup.constA(0) * setup.constC(-1));
                down = shiftedByT(ratio / down).truncated(2 * k);
            }
            coefK = (up + down - bSeries(0)).coef(k);
        }
        // the order-k equation must be linear in the new unknown
        Poly num = coefK.num();
        if (num.degreeIn(setup.xSym) != 1 || coefK.den().degreeIn(setup.xSym) != 0)
            throw NonlinearOrderEquation("order-" + std::to_string(k) +
                                         " equation is not linear in the unknown");
        RF c1(num.coefficientOf(setup.xSym, 1));
        RF c0(num.coefficientOf(setup.xSym, 0));
        known.push_back(-(c0 / c1));
    }

    // project down to the reduced space
    AccessoryExpansion out{eq, setup.reduced, std::nullopt,
                           FormalSeries(setup.reduced, SeriesVar::T, 1, 2 * order)};
    FormalSeries unknownSeries(setup.reduced, SeriesVar::T, 1, 2 * order);
    for (int k = 0; k <= order; ++k)
        unknownSeries.setCoef(2 * k, project(known[static_cast<size_t>(k)], setup.reduced));
    if (setup.family.unknownIsQ) {
        out.qSeries = unknownSeries;
        out.eSeries = qToAccessory(eq, unknownSeries);
    } else {
        out.eSeries = unknownSeries;
    }
    return out;
}

FormalSeries qToAccessory(HeunEquation eq, const FormalSeries& q) {
    if (eq != HeunEquation::HVI && eq != HeunEquation::HV)
        throw UnsupportedEquation(heunEquationName(eq) +
                                  " expands the accessory parameter directly (identity map)");
    CFFamily fam = cfFamily(eq);
    const SpacePtr& sp = q.space();
    auto d = [&](const char* name) { return project(fam.dict(name), sp); };
    RF half = RF::constant(sp, frac(1, 2));
    if (eq == HeunEquation::HVI) {
        // q = (1-t) E + (gamma eps + 2 alpha beta t - (gamma+delta) eps t)/2
        RF s0 = d("gamma") * d("epsilon") * half;
        RF s1 = d("alpha") * d("beta") - (d("gamma") + d("delta")) * d("epsilon") * half;
        FormalSeries shifted = q;
        shifted.setCoef(0, q.coef(0) - s0);
        shifted.setCoef(2, q.coef(1) - s1);
        FormalSeries oneMinusT = FormalSeries::one(sp, SeriesVar::T, 1, q.truncTicks());
        oneMinusT.setCoef(2, RF::constant(sp, BigRat(-1)));
        return shifted / oneMinusT;
    }
    // HV: q = -E + alpha t - (beta + t) gamma / 2
    FormalSeries e = -q;
    e.setCoef(0, e.coef(0) - d("beta") * d("gamma") * half);
    e.setCoef(2, e.coef(1) + d("alpha") - d("gamma") * half);
    return e;
}

SeriesReport checkFloquetConfluence(FloquetChainLink link, int order) {
    SeriesReport report;
    auto orderLabel = [](int k) { return "t^" + std::to_string(k); };

    if (link == FloquetChainLink::VItoV) {
        report.lhsLabel = "limit of HVI Floquet characteristic";
        report.rhsLabel = "HV Floquet characteristic";
        AccessoryExpansion upper = floquetExpansion(HeunEquation::HVI, order);
        AccessoryExpansion lower = floquetExpansion(HeunEquation::HV, order);
        auto tgt = makeSpace({"sigma", "theta0", "thetat", "thetastar", "Lambda"});
        RF lam = RF::symbol(tgt, "Lambda"), ths = RF::symbol(tgt, "thetastar");
        RF half = RF::constant(tgt, frac(1, 2));
        auto binding = bindingByName(upper.space, tgt,
                                     {{"theta1", (lam + ths) * half}, {"thetainf", (lam - ths) * half}});
        int lamSym = tgt->index("Lambda");
        for (int k = 0; k <= order; ++k) {
            RF rhs = project(lower.eSeries.coef(k), tgt);
            try {
                RF lhs = limitAtInfinity(evaluate(upper.eSeries.coef(k), binding) / lam.pow(k), lamSym);
                report.record(orderLabel(k), lhs == rhs, lhs.str(), rhs.str());
            } catch (const DivergentLimit& e) {
                report.record(orderLabel(k), false, e.what(), rhs.str());
            }
        }
        return report;
    }

    if (link == FloquetChainLink::VtoIII1) {
        report.lhsLabel = "limit of HV Floquet characteristic";
        report.rhsLabel = "HIII1 Floquet characteristic";
        AccessoryExpansion upper = floquetExpansion(HeunEquation::HV, order);
        AccessoryExpansion lower = floquetExpansion(HeunEquation::HIII1, order);
        auto tgt = makeSpace({"sigma", "thetastar", "thetastar2", "Lambda"});
        RF lam = RF::symbol(tgt, "Lambda"), th2 = RF::symbol(tgt, "thetastar2");
        RF half = RF::constant(tgt, frac(1, 2));
        auto binding = bindingByName(upper.space, tgt,
                                     {{"theta0", (lam - th2) * half}, {"thetat", (lam + th2) * half}});
        int lamSym = tgt->index("Lambda");
        // shift: E_V - theta0^2 - thetat^2 + 1/2 before the limit
        RF shift = -((lam - th2) * half).pow(2) - ((lam + th2) * half).pow(2) +
                   RF::constant(tgt, frac(1, 2));
        for (int k = 0; k <= order; ++k) {
            RF rhs = project(lower.eSeries.coef(k), tgt);
            try {
                RF val = evaluate(upper.eSeries.coef(k), binding);
                if (k == 0) val += shift;
                RF lhs = limitAtInfinity(val / lam.pow(k), lamSym);
                report.record(orderLabel(k), lhs == rhs, lhs.str(), rhs.str());
            } catch (const DivergentLimit& e) {
                report.record(orderLabel(k), false, e.what(), rhs.str());
            }
        }
        return report;
    }

    // III1 -> III2 (thetastar2 -> inf) and III2 -> III3 (thetastar -> inf)
    bool first = link == FloquetChainLink::III1toIII2;
    report.lhsLabel = first ? "limit of HIII1 Floquet characteristic"
                            : "limit of HIII2 Floquet characteristic";
    report.rhsLabel = first ? "HIII2 Floquet characteristic" : "HIII3 Floquet characteristic";
    AccessoryExpansion upper = floquetExpansion(first ? HeunEquation::HIII1 : HeunEquation::HIII2, order);
    AccessoryExpansion lower = floquetExpansion(first ? HeunEquation::HIII2 : HeunEquation::HIII3, order);
    const SpacePtr& sp = upper.space;
    int limSym = sp->index(first ? "thetastar2" : "thetastar");
    RF lim = RF::symbol(sp, sp->name(limSym));
    for (int k = 0; k <= order; ++k) {
        RF rhs = project(lower.eSeries.coef(k), sp);
        try {
            RF lhs = limitAtInfinity(upper.eSeries.coef(k) / lim.pow(k), limSym);
            report.record(orderLabel(k), lhs == rhs, lhs.str(), rhs.str());
        } catch (const DivergentLimit& e) {
            report.record(orderLabel(k), false, e.what(), rhs.str());
        }
    }
    return report;
}

MathieuDictionary mathieuDictionary(const BigRat& sigma, const BigRat& t) {
    MathieuDictionary d;
    d.nu = 2 * sigma;
    d.qSquared = 16 * t;
    d.deltaSigma = frac(1, 4) - sigma * sigma;
    return d;
}

double MathieuDictionary::q() const { return 4.0 * std::sqrt(mpq_class(qSquared / 16).get_d()); }

FormalSeries bindSeries(const FormalSeries& s,
                        const std::vector<std::pair<std::string, BigRat>>& binds) {
    const SpacePtr& sp = s.space();
    std::vector<std::string> keep;
    for (int i = 0; i < sp->size(); ++i) {
        bool bound = false;
        for (const auto& [k, v] : binds) bound = bound || k == sp->name(i);
        if (!bound) keep.push_back(sp->name(i));
    }
    SpacePtr tgt = makeSpace(keep.empty() ? std::vector<std::string>{"_unit"} : keep);
    std::vector<std::pair<std::string, RF>> overrides;
    for (const auto& [k, v] : binds) overrides.emplace_back(k, RF::constant(tgt, v));
    auto values = bindingByName(sp, tgt, overrides);
    try {
        return s.mapCoefficients([&](const RF& f) { return evaluate(f, values); }, tgt);
    } catch (const DivisionByZero&) {
        throw ResonantDenominator("numeric binding hits a pole of the expansion");
    }
}

} // namespace heunblocks
