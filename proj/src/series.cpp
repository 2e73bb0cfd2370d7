#include "heunblocks/series.hpp"

#include <algorithm>

namespace heunblocks {

std::string seriesVarName(SeriesVar v) {
    switch (v) {
        case SeriesVar::T: return "t";
        case SeriesVar::InvT: return "invt";
        case SeriesVar::Hbar: return "hbar";
        case SeriesVar::B: return "b";
        case SeriesVar::Z: return "z";
        case SeriesVar::Lambda: return "lambda";
    }
    return "?";
}

SeriesVar seriesVarFromName(const std::string& s) {
    if (s == "t") return SeriesVar::T;
    if (s == "invt") return SeriesVar::InvT;
    if (s == "hbar") return SeriesVar::Hbar;
    if (s == "b") return SeriesVar::B;
    if (s == "z") return SeriesVar::Z;
    if (s == "lambda") return SeriesVar::Lambda;
    throw ParseError("unknown series variable '" + s + "'");
}

void FormalSeries::setCoef(int64_t ticks, RF v) {
    if (grid_ == 1 && (ticks % 2) != 0)
        throw GridMismatch("half-integer exponent on an integer grid");
    if (ticks > trunc_) return; // beyond guaranteed order: drop
    if (v.isZero())
        coef_.erase(ticks);
    else
        coef_.insert_or_assign(ticks, std::move(v));
}

RF FormalSeries::coefTicks(int64_t ticks) const {
    auto it = coef_.find(ticks);
    if (it != coef_.end()) return it->second;
    return RF(space_);
}

RF FormalSeries::coef(int64_t n, int64_t d) const {
    if (d != 1 && d != 2) throw GridMismatch("exponent denominator must be 1 or 2");
    int64_t ticks = d == 1 ? 2 * n : n;
    return coefTicks(ticks);
}

int64_t FormalSeries::ordTicks() const {
    if (!coef_.empty()) return coef_.begin()->first;
    return trunc_ + stepTicks();
}

namespace {
void requireCompatible(const FormalSeries& a, const FormalSeries& b) {
    requireSameSpace(a.space(), b.space());
    if (a.var() != b.var()) throw GridMismatch("series in different variables");
}
bool sameOptional(const std::optional<RF>& x, const std::optional<RF>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x.has_value() || *x == *y;
}
} // namespace

FormalSeries FormalSeries::operator-() const {
    FormalSeries r = *this;
    for (auto& [k, v] : r.coef_) v = -v;
    return r;
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    requireCompatible(*this, o);
    if (!sameOptional(offset_, o.offset_))
        throw OffsetMismatch("adding series with different prefactor exponents");
    FormalSeries r(space_, var_, std::max(grid_, o.grid_), std::min(trunc_, o.trunc_));
    r.offset_ = offset_;
    if (logCoef_ || o.logCoef_) {
        RF l = logCoef_ ? *logCoef_ : RF(space_);
        if (o.logCoef_) l += *o.logCoef_;
        if (!l.isZero()) r.logCoef_ = l;
    }
    for (const auto& [k, v] : coef_)
        if (k <= r.trunc_) r.setCoef(k, v);
    for (const auto& [k, v] : o.coef_)
        if (k <= r.trunc_) r.setCoef(k, r.coefTicks(k) + v);
    return r;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const { return *this + (-o); }

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
    requireCompatible(*this, o);
    if (logCoef_ || o.logCoef_)
        throw GridMismatch("cannot multiply series carrying a log term");
    int64_t tr = std::min(trunc_ + o.ordTicks(), o.trunc_ + ordTicks());
    FormalSeries r(space_, var_, std::max(grid_, o.grid_), tr);
    if (offset_ || o.offset_) { // offsets add under multiplication
        RF off = offset_ ? *offset_ : RF(space_);
        if (o.offset_) off += *o.offset_;
        r.offset_ = off;
    }
    for (const auto& [ka, va] : coef_) {
        for (const auto& [kb, vb] : o.coef_) {
            if (ka + kb > tr) break;
            r.setCoef(ka + kb, r.coefTicks(ka + kb) + va * vb);
        }
    }
    return r;
}

FormalSeries inverse(const FormalSeries& a) {
    if (a.coefs().empty()) throw LeadingCoefficientZero("inverting a series with no known terms");
    int64_t o = a.ordTicks();
    const RF lead = a.coefTicks(o);
    // 1/a = var^-o * lead^-1 * (1 + r)^-1
    int64_t tr = a.truncTicks() - 2 * o;
    FormalSeries inv(a.space(), a.var(), a.gridDen(), tr);
    if (a.offset()) inv.setOffset(-*a.offset());
    RF invLead = RF::constant(a.space(), BigRat(1)) / lead;
    inv.setCoef(-o, invLead);
    // b_m solves b_m a_o + sum_{j<m} b_j a_{m+o-j} = 0
    for (int64_t m = -o + inv.stepTicks(); m <= tr; m += inv.stepTicks()) {
        RF acc(a.space());
        for (const auto& [j, bj] : inv.coefs()) {
            if (j >= m) break;
            RF am = a.coefTicks(m + o - j);
            if (!am.isZero()) acc += bj * am;
        }
        if (!acc.isZero()) inv.setCoef(m, -(acc / lead));
    }
    return inv;
}

FormalSeries FormalSeries::operator/(const FormalSeries& o) const {
    return *this * inverse(o);
}

bool FormalSeries::operator==(const FormalSeries& o) const {
    return var_ == o.var_ && grid_ == o.grid_ && trunc_ == o.trunc_ && coef_ == o.coef_ &&
           sameOptional(offset_, o.offset_) && sameOptional(logCoef_, o.logCoef_);
}

FormalSeries FormalSeries::scaled(const RF& v) const {
    FormalSeries r(space_, var_, grid_, trunc_);
    r.offset_ = offset_;
    if (v.isZero()) return r;
    if (logCoef_) r.logCoef_ = *logCoef_ * v;
    for (const auto& [k, c] : coef_) r.setCoef(k, c * v);
    return r;
}

FormalSeries FormalSeries::truncated(int64_t newTrunc) const {
    FormalSeries r(space_, var_, grid_, std::min(trunc_, newTrunc));
    r.offset_ = offset_;
    r.logCoef_ = logCoef_;
    for (const auto& [k, c] : coef_) {
        if (k > r.trunc_) break;
        r.coef_.emplace(k, c);
    }
    return r;
}

FormalSeries FormalSeries::mapCoefficients(const std::function<RF(const RF&)>& f, SpacePtr ns) const {
    FormalSeries r(ns, var_, grid_, trunc_);
    if (offset_) r.offset_ = f(*offset_);
    if (logCoef_) r.logCoef_ = f(*logCoef_);
    for (const auto& [k, c] : coef_) r.setCoef(k, f(c));
    return r;
}

FormalSeries powBinomial(const FormalSeries& a, const RF& alpha) {
    if (a.offset() || a.logCoef())
        throw LeadingCoefficientNotOne("binomial power needs a bare series");
    RF lead = a.coefTicks(0);
    if (lead.isZero() || !(lead.isConstant() && lead.constantValue() == 1) || a.ordTicks() != 0)
        throw LeadingCoefficientNotOne("binomial power needs leading coefficient 1 at order 0");
    FormalSeries w = a;
    w.setCoef(0, RF(a.space()));
    int64_t wOrd = w.ordTicks();
    FormalSeries acc = FormalSeries::one(a.space(), a.var(), a.gridDen(), a.truncTicks());
    if (w.coefs().empty()) return acc;
    FormalSeries wpow = FormalSeries::one(a.space(), a.var(), a.gridDen(), a.truncTicks());
    RF binom = RF::constant(a.space(), BigRat(1));
    const SpacePtr& sp = a.space();
    for (int64_t k = 1; k * wOrd <= a.truncTicks(); ++k) {
        wpow = wpow * w;
        wpow = wpow.truncated(a.truncTicks());
        binom = binom * (alpha - RF::constant(sp, BigRat(k - 1))) / RF::constant(sp, BigRat(k));
        acc = acc + wpow.scaled(binom);
    }
    return acc;
}

FormalSeries sqrtSeries(const FormalSeries& a) {
    if (a.coefs().empty())
        throw NonSquareLeadingCoefficient("sqrt of a series with no known terms");
    int64_t o = a.ordTicks();
    if (o % 2 != 0) throw NonSquareLeadingCoefficient("odd leading exponent under sqrt");
    RF lead = a.coefTicks(o);
    if (!lead.isConstant())
        throw NonSquareLeadingCoefficient("leading coefficient must be a constant perfect square");
    bool ok = false;
    BigRat root = ratSqrt(lead.constantValue(), ok);
    if (!ok) throw NonSquareLeadingCoefficient("leading coefficient " + lead.str() + " is not a perfect square");
    // a = lead*var^o*(1+w); sqrt = root*var^(o/2)*(1+w)^(1/2)
    FormalSeries unitized(a.space(), a.var(), a.gridDen(), a.truncTicks() - o);
    RF invLead = RF::constant(a.space(), BigRat(1)) / lead;
    for (const auto& [k, c] : a.coefs()) unitized.setCoef(k - o, c * invLead);
    FormalSeries half = powBinomial(unitized, RF::constant(a.space(), BigRat(1, 2)));
    FormalSeries r(a.space(), a.var(), a.gridDen(), half.truncTicks() + o / 2);
    if (a.offset()) throw NonSquareLeadingCoefficient("sqrt of a series with symbolic offset");
    for (const auto& [k, c] : half.coefs()) r.setCoef(k + o / 2, c.scaled(root));
    return r;
}

FormalSeries logSeries(const FormalSeries& a) {
    if (a.logCoef()) throw LeadingCoefficientZero("log of a series already carrying a log term");
    if (a.coefs().empty()) throw LeadingCoefficientZero("log of a series with no known terms");
    int64_t o = a.ordTicks();
    RF lead = a.coefTicks(o);
    if (!(lead.isConstant() && lead.constantValue() == 1))
        throw LeadingCoefficientNotOne("log needs leading coefficient exactly 1");
    FormalSeries w(a.space(), a.var(), a.gridDen(), a.truncTicks() - o);
    for (const auto& [k, c] : a.coefs())
        if (k != o) w.setCoef(k - o, c);
    // log(1+w) = sum (-1)^(k+1) w^k / k
    FormalSeries acc = FormalSeries::zero(a.space(), a.var(), a.gridDen(), w.truncTicks());
    int64_t wOrd = w.ordTicks();
    FormalSeries wpow = FormalSeries::one(a.space(), a.var(), a.gridDen(), w.truncTicks());
    for (int64_t k = 1; !w.coefs().empty() && k * wOrd <= w.truncTicks(); ++k) {
        wpow = (wpow * w).truncated(w.truncTicks());
        acc = acc + wpow.scaled(RF::constant(a.space(), BigRat((k % 2) ? 1 : -1, k)));
    }
    // prefactor rule: var^offset * var^(o/2 grid units) contributes to logCoef
    RF logc = RF::constant(a.space(), BigRat(o, 2));
    if (a.offset()) logc += *a.offset();
    if (!logc.isZero()) acc.setLogCoef(logc);
    return acc;
}

FormalSeries expSeries(const FormalSeries& a) {
    if (a.offset() || a.logCoef()) throw LeadingCoefficientZero("exp of a series with prefactor data");
    if (!a.coefs().empty() && a.ordTicks() <= 0)
        throw LeadingCoefficientZero("exp needs a series vanishing at the origin");
    FormalSeries acc = FormalSeries::one(a.space(), a.var(), a.gridDen(), a.truncTicks());
    FormalSeries apow = FormalSeries::one(a.space(), a.var(), a.gridDen(), a.truncTicks());
    BigRat fact(1);
    int64_t aOrd = a.ordTicks();
    for (int64_t k = 1; !a.coefs().empty() && k * aOrd <= a.truncTicks(); ++k) {
        apow = (apow * a).truncated(a.truncTicks());
        fact *= k;
        acc = acc + apow.scaled(RF::constant(a.space(), BigRat(1) / fact));
    }
    return acc;
}

FormalSeries rescaleVariable(const FormalSeries& a, const RF& factor) {
    if (a.gridDen() != 1) throw GridMismatch("variable rescaling needs an integer grid");
    FormalSeries r(a.space(), a.var(), a.gridDen(), a.truncTicks());
    if (a.offset()) r.setOffset(*a.offset());
    if (a.logCoef()) r.setLogCoef(*a.logCoef());
    for (const auto& [ticks, c] : a.coefs()) r.setCoef(ticks, c * factor.pow(ticks / 2));
    return r;
}

// ---------------------------------------------------------------------------

LaurentObject LaurentObject::fromRational(const RF& f, int sym) {
    LaurentObject out(f.space(), sym);
    if (f.isZero()) return out;
    const Poly& den = f.den();
    int low = den.lowestDegreeIn(sym);
    // den = sym^low * rest, rest free of sym
    Poly rest(f.space());
    for (const auto& [m, c] : den.terms()) {
        Monomial r = m;
        r.e[sym] -= low;
        r.deg -= low;
        rest.addTerm(r, c);
    }
    if (rest.degreeIn(sym) > 0)
        throw NotLaurent("denominator is not a monomial in " + f.space()->name(sym) +
                         " times a free factor");
    RF invRest = RF::constant(f.space(), BigRat(1)) / RF(rest);
    int top = f.num().degreeIn(sym);
    for (int k = 0; k <= top; ++k) {
        Poly ck = f.num().coefficientOf(sym, k);
        if (ck.isZero()) continue;
        out.setCoef(k - low, RF(ck) * invRest);
    }
    return out;
}

void LaurentObject::setCoef(int k, RF v) {
    if (v.isZero())
        coef_.erase(k);
    else
        coef_.insert_or_assign(k, std::move(v));
}

RF LaurentObject::residue() const { return coef(-1); }

RF LaurentObject::coef(int k) const {
    auto it = coef_.find(k);
    return it == coef_.end() ? RF(space_) : it->second;
}

LaurentObject LaurentObject::derivative() const {
    LaurentObject out(space_, sym_);
    for (const auto& [k, c] : coef_)
        if (k != 0) out.setCoef(k - 1, c.scaled(BigRat(k)));
    return out;
}

RF LaurentObject::toRational() const {
    RF acc(space_);
    RF z = RF::symbol(space_, space_->name(sym_));
    for (const auto& [k, c] : coef_) acc += c * z.pow(k);
    return acc;
}

RF residueAtOrigin(const RF& f, int sym) {
    return LaurentObject::fromRational(f, sym).residue();
}

RF residueAtInfinity(const RF& f, int sym) {
    LaurentObject l = LaurentObject::fromRational(f, sym);
    // z -> 1/z maps coefficient of z^k to z^-k; dz picks up -z^-2
    // Res_inf f = -[coefficient of z^{-1}] of f(1/z) * z^{-2} = -coef_{1}(f)... keep it literal:
    RF acc(f.space());
    for (const auto& [k, c] : l.coefs())
        if (-k - 2 == -1) acc += c;
    return -acc;
}

} // namespace heunblocks
