#include "heunblocks/rational_function.hpp"

#include <algorithm>

namespace heunblocks {

RationalFunction::RationalFunction(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
    requireSameSpace(num_.space(), den_.space());
    normalize();
}

RationalFunction::RationalFunction(Poly num)
    : num_(std::move(num)), den_(Poly::constant(num_.space(), 1)) {}

void RationalFunction::normalize() {
    if (den_.isZero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.isZero()) {
        den_ = Poly::constant(space(), 1);
        return;
    }
    if (den_.isConstant()) {
        BigRat d = den_.constantValue();
        if (d != 1) num_ = num_.scaled(BigRat(1) / d);
        den_ = Poly::constant(space(), 1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (!g.isConstant()) {
        num_ = divExact(num_, g);
        den_ = divExact(den_, g);
    }
    if (den_.isConstant()) {
        BigRat d = den_.constantValue();
        if (d != 1) num_ = num_.scaled(BigRat(1) / d);
        den_ = Poly::constant(space(), 1);
        return;
    }
    BigRat c = den_.content();
    if (c != 1) {
        den_ = den_.scaled(BigRat(1) / c);
        num_ = num_.scaled(BigRat(1) / c);
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    requireSameSpace(space(), o.space());
    if (isZero()) return o;
    if (o.isZero()) return *this;
    if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
    Poly g = gcd(den_, o.den_);
    if (g.isConstant()) return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    Poly lb = divExact(den_, g);
    Poly rb = divExact(o.den_, g);
    return RationalFunction(num_ * rb + o.num_ * lb, den_ * rb);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    requireSameSpace(space(), o.space());
    if (isZero() || o.isZero()) return RationalFunction(space());
    // cross-cancel before multiplying
    Poly g1 = gcd(num_, o.den_);
    Poly g2 = gcd(o.num_, den_);
    Poly n1 = g1.isConstant() ? num_ : divExact(num_, g1);
    Poly d2 = g1.isConstant() ? o.den_ : divExact(o.den_, g1);
    Poly n2 = g2.isConstant() ? o.num_ : divExact(o.num_, g2);
    Poly d1 = g2.isConstant() ? den_ : divExact(den_, g2);
    return RationalFunction(n1 * n2, d1 * d2);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.isZero()) throw DivisionByZero("division by zero rational function");
    RationalFunction inv = o;
    std::swap(inv.num_, inv.den_);
    inv.normalize();
    return *this * inv;
}

RationalFunction RationalFunction::scaled(const BigRat& v) const {
    if (v == 0) return RationalFunction(space());
    RationalFunction r = *this;
    r.num_ = r.num_.scaled(v);
    return r;
}

RationalFunction RationalFunction::pow(int64_t n) const {
    if (n < 0) {
        if (isZero()) throw DivisionByZero("negative power of zero");
        RationalFunction inv = RationalFunction(den_, num_);
        return inv.pow(-n);
    }
    return RationalFunction(num_.pow(n), den_.pow(n));
}

RationalFunction RationalFunction::derivative(int sym) const {
    Poly n = num_.derivative(sym) * den_ - num_ * den_.derivative(sym);
    return RationalFunction(std::move(n), den_ * den_);
}

std::string RationalFunction::str() const {
    if (den_.isOne()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------------------

RF evaluatePoly(const Poly& p, const std::vector<RF>& values) {
    if (static_cast<int>(values.size()) != p.space()->size())
        throw ParameterSpaceMismatch("evaluate: wrong number of values");
    SpacePtr target = values.empty() ? p.space() : values.front().space();
    for (const auto& v : values) requireSameSpace(v.space(), target);
    if (p.isZero()) return RF(target);

    int n = p.space()->size();
    std::vector<int> maxDeg(static_cast<size_t>(n), 0);
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < n; ++i)
            maxDeg[static_cast<size_t>(i)] = std::max(maxDeg[static_cast<size_t>(i)], static_cast<int>(m.e[i]));

    // power tables for numerators and denominators
    std::vector<std::vector<Poly>> np, dp;
    np.reserve(static_cast<size_t>(n));
    dp.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int d = maxDeg[static_cast<size_t>(i)];
        std::vector<Poly> ns{Poly::constant(target, 1)}, ds{Poly::constant(target, 1)};
        for (int k = 1; k <= d; ++k) {
            ns.push_back(ns.back() * values[static_cast<size_t>(i)].num());
            ds.push_back(ds.back() * values[static_cast<size_t>(i)].den());
        }
        np.push_back(std::move(ns));
        dp.push_back(std::move(ds));
    }

    Poly acc(target);
    for (const auto& [m, c] : p.terms()) {
        Poly term = Poly::constant(target, c);
        for (int i = 0; i < n; ++i) {
            int e = m.e[i];
            int d = maxDeg[static_cast<size_t>(i)];
            if (e > 0) term = term * np[static_cast<size_t>(i)][static_cast<size_t>(e)];
            if (d - e > 0) term = term * dp[static_cast<size_t>(i)][static_cast<size_t>(d - e)];
        }
        acc += term;
    }
    Poly wholeDen = Poly::constant(target, 1);
    for (int i = 0; i < n; ++i)
        wholeDen = wholeDen * dp[static_cast<size_t>(i)].back();
    return RF(std::move(acc), std::move(wholeDen));
}

RF evaluate(const RF& f, const std::vector<RF>& values) {
    RF dn = evaluatePoly(f.den(), values);
    if (dn.isZero()) throw DivisionByZero("substitution hit a pole of the rational function");
    return evaluatePoly(f.num(), values) / dn;
}

std::vector<RF> bindingByName(const SpacePtr& from, const SpacePtr& to,
                              const std::vector<std::pair<std::string, RF>>& overrides) {
    std::vector<RF> values;
    values.reserve(static_cast<size_t>(from->size()));
    for (int i = 0; i < from->size(); ++i) {
        const std::string& nm = from->name(i);
        const RF* found = nullptr;
        for (const auto& [k, v] : overrides)
            if (k == nm) found = &v;
        if (found) {
            requireSameSpace(found->space(), to);
            values.push_back(*found);
        } else {
            values.push_back(RF::symbol(to, nm));
        }
    }
    return values;
}

RF project(const RF& f, const SpacePtr& target) {
    std::vector<RF> values;
    values.reserve(static_cast<size_t>(f.space()->size()));
    for (int i = 0; i < f.space()->size(); ++i) {
        const std::string& nm = f.space()->name(i);
        if (target->has(nm)) {
            values.push_back(RF::symbol(target, nm));
        } else {
            if (f.num().degreeIn(i) > 0 || f.den().degreeIn(i) > 0)
                throw UnknownSymbol("projection drops symbol '" + nm + "' still present in value");
            values.push_back(RF(target));
        }
    }
    return evaluate(f, values);
}

RF limitAtInfinity(const RF& f, int sym) {
    int dn = f.num().degreeIn(sym);
    int dd = f.den().degreeIn(sym);
    if (f.isZero()) return f;
    if (dn > dd)
        throw DivergentLimit("limit " + f.space()->name(sym) + "->infinity diverges (degree " +
                             std::to_string(dn) + " over " + std::to_string(dd) + ")");
    if (dn < dd) return RF(f.space());
    return RF(f.num().coefficientOf(sym, dn), f.den().coefficientOf(sym, dd));
}

int poleOrderAtZero(const RF& f, int sym) {
    if (f.isZero()) return 0;
    int low = f.den().lowestDegreeIn(sym);
    return low > 0 ? low : 0;
}

RF limitAtZero(const RF& f, int sym) {
    if (f.isZero()) return f;
    int p = poleOrderAtZero(f, sym);
    if (p > 0)
        throw PoleInClassicalLimit("pole of order " + std::to_string(p) + " in " +
                                   f.space()->name(sym) + " at 0");
    return RF(f.num().atZero(sym), f.den().atZero(sym));
}

BigRat evaluateRational(const RF& f, const std::vector<BigRat>& point) {
    auto evalP = [&](const Poly& p) {
        BigRat acc(0);
        for (const auto& [m, c] : p.terms()) {
            BigRat term = c;
            for (size_t i = 0; i < point.size(); ++i)
                for (int k = 0; k < m.e[i]; ++k) term *= point[i];
            acc += term;
        }
        return acc;
    };
    BigRat d = evalP(f.den());
    if (d == 0) throw DivisionByZero("rational evaluation hit a pole");
    return evalP(f.num()) / d;
}

GaussianRF evaluateGaussian(const RF& f, const std::vector<GaussianRF>& values) {
    if (static_cast<int>(values.size()) != f.space()->size())
        throw ParameterSpaceMismatch("evaluateGaussian: wrong number of values");
    SpacePtr target = values.empty() ? f.space() : values.front().re.space();

    auto evalP = [&](const Poly& p) -> GaussianRF {
        GaussianRF acc(target);
        if (p.isZero()) return acc;
        int n = p.space()->size();
        std::vector<std::vector<GaussianRF>> pows(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            pows[static_cast<size_t>(i)].push_back(GaussianRF::real(RF::constant(target, BigRat(1))));
        auto powOf = [&](int i, int e) -> const GaussianRF& {
            auto& tab = pows[static_cast<size_t>(i)];
            while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * values[static_cast<size_t>(i)]);
            return tab[static_cast<size_t>(e)];
        };
        for (const auto& [m, c] : p.terms()) {
            GaussianRF term = GaussianRF::real(RF::constant(target, c));
            for (int i = 0; i < n; ++i)
                if (m.e[i] > 0) term = term * powOf(i, m.e[i]);
            acc = acc + term;
        }
        return acc;
    };

    GaussianRF dn = evalP(f.den());
    if (dn.re.isZero() && dn.im.isZero())
        throw DivisionByZero("gaussian substitution hit a pole");
    return evalP(f.num()) / dn;
}

} // namespace heunblocks
