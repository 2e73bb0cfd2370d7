#ifndef HEUNBLOCKS_SERIES_HPP
#define HEUNBLOCKS_SERIES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "heunblocks/rational_function.hpp"

namespace heunblocks {

enum class SeriesVar { T, InvT, Hbar, B, Z, Lambda };

std::string seriesVarName(SeriesVar v);
SeriesVar seriesVarFromName(const std::string& s);

// Truncated formal series on an integer or half-integer exponent grid.
// Exponents are stored internally as "ticks" (exponent * 2); gridDen 1 keeps
// even ticks only, gridDen 2 allows every tick. `offset` is a symbolic
// exponent shift (prefactors like t^(ds-d0-dt)), `logCoef` an optional
// coefficient of log(var). truncTicks is the highest tick guaranteed correct;
// arithmetic composes truncations pessimistically.
class FormalSeries {
public:
    FormalSeries(SpacePtr space, SeriesVar var, int gridDen, int64_t truncTicks)
        : space_(std::move(space)), var_(var), grid_(gridDen), trunc_(truncTicks) {
        if (gridDen != 1 && gridDen != 2) throw GridMismatch("grid step must be 1 or 1/2");
    }

    static FormalSeries zero(const SpacePtr& s, SeriesVar v, int gridDen, int64_t truncTicks) {
        return FormalSeries(s, v, gridDen, truncTicks);
    }
    static FormalSeries one(const SpacePtr& s, SeriesVar v, int gridDen, int64_t truncTicks) {
        FormalSeries f(s, v, gridDen, truncTicks);
        f.setCoef(0, RF::constant(s, BigRat(1)));
        return f;
    }

    const SpacePtr& space() const { return space_; }
    SeriesVar var() const { return var_; }
    int gridDen() const { return grid_; }
    int64_t truncTicks() const { return trunc_; }
    const std::map<int64_t, RF>& coefs() const { return coef_; }

    const std::optional<RF>& offset() const { return offset_; }
    const std::optional<RF>& logCoef() const { return logCoef_; }
    void setOffset(RF v) { offset_ = std::move(v); }
    void setLogCoef(RF v) { logCoef_ = std::move(v); }

    void setCoef(int64_t ticks, RF v);
    void setCoef(int64_t n, int64_t d, RF v) {
        if (d != 1 && d != 2) throw GridMismatch("exponent denominator must be 1 or 2");
        setCoef(d == 1 ? 2 * n : n, std::move(v));
    }
    // coefficient of var^(n/d); d must divide the grid
    RF coef(int64_t n, int64_t d = 1) const;
    RF coefTicks(int64_t ticks) const;

    // lowest tick carrying a nonzero coefficient; trunc+step when none is
    // stored (the first possibly-nonzero exponent beyond the known range)
    int64_t ordTicks() const;
    int64_t stepTicks() const { return grid_ == 2 ? 1 : 2; }
    bool sameShape(const FormalSeries& o) const { return var_ == o.var_ && grid_ == o.grid_; }

    FormalSeries operator-() const;
    FormalSeries operator+(const FormalSeries& o) const;
    FormalSeries operator-(const FormalSeries& o) const;
    FormalSeries operator*(const FormalSeries& o) const;
    FormalSeries operator/(const FormalSeries& o) const;
    bool operator==(const FormalSeries& o) const;

    FormalSeries scaled(const RF& v) const;
    FormalSeries truncated(int64_t newTruncTicks) const;
    FormalSeries mapCoefficients(const std::function<RF(const RF&)>& f, SpacePtr newSpace) const;

private:
    SpacePtr space_;
    SeriesVar var_;
    int grid_;
    int64_t trunc_;
    std::map<int64_t, RF> coef_;
    std::optional<RF> offset_;
    std::optional<RF> logCoef_;
};

FormalSeries inverse(const FormalSeries& a);
// (1 + w)^alpha for series with unit leading coefficient at exponent 0;
// alpha may be any rational function (symbolic exponents included).
FormalSeries powBinomial(const FormalSeries& a, const RF& alpha);
FormalSeries sqrtSeries(const FormalSeries& a);
// log of c0=1-normalized series; offset and leading exponent land in the
// result's logCoef, per the prefactor rule.
FormalSeries logSeries(const FormalSeries& a);
FormalSeries expSeries(const FormalSeries& a);

// coefficient of var^n multiplied by factor^n (t -> factor*t reparametrization;
// integer grid only)
FormalSeries rescaleVariable(const FormalSeries& a, const RF& factor);

// Finite Laurent expansion in one symbol, extracted from a rational function
// whose denominator factors as sym^k * (sym-free part).
class LaurentObject {
public:
    LaurentObject(SpacePtr space, int sym) : space_(std::move(space)), sym_(sym) {}
    static LaurentObject fromRational(const RF& f, int sym);

    const std::map<int, RF>& coefs() const { return coef_; }
    int sym() const { return sym_; }
    int minExponent() const { return coef_.empty() ? 0 : coef_.begin()->first; }
    int maxExponent() const { return coef_.empty() ? 0 : coef_.rbegin()->first; }

    RF residue() const; // coefficient of sym^-1
    RF coef(int k) const;
    LaurentObject derivative() const;
    RF toRational() const;

    void setCoef(int k, RF v);

private:
    SpacePtr space_;
    int sym_;
    std::map<int, RF> coef_;
};

// residue at the origin of a Laurent-type rational function
RF residueAtOrigin(const RF& f, int sym);
// residue at infinity = -[coefficient of sym^-1 after sym -> 1/sym]
RF residueAtInfinity(const RF& f, int sym);

} // namespace heunblocks

#endif
