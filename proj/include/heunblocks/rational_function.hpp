#ifndef HEUNBLOCKS_RATIONAL_FUNCTION_HPP
#define HEUNBLOCKS_RATIONAL_FUNCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "heunblocks/polynomial.hpp"

namespace heunblocks {

// num/den in canonical form: gcd(num, den) is a unit, den has coprime
// integer coefficients with positive leading term, zero is 0/1. Equal values
// have identical representations, so operator== is exact value equality.
class RationalFunction {
public:
    explicit RationalFunction(SpacePtr space)
        : num_(Poly(space)), den_(Poly::constant(space, 1)) {}
    RationalFunction(Poly num, Poly den);
    explicit RationalFunction(Poly num);

    static RationalFunction constant(const SpacePtr& s, const BigRat& v) {
        return RationalFunction(Poly::constant(s, v));
    }
    static RationalFunction symbol(const SpacePtr& s, const std::string& name) {
        return RationalFunction(Poly::symbol(s, name));
    }

    const SpacePtr& space() const { return num_.space(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    bool isPolynomial() const { return den_.isConstant(); }
    BigRat constantValue() const { return num_.constantValue() / den_.constantValue(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
    bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction scaled(const BigRat& v) const;
    RationalFunction pow(int64_t n) const;
    RationalFunction derivative(int sym) const;

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

using RF = RationalFunction;

// Substitutes a value for every symbol of `f.space()`; `values[i]` replaces
// symbol i and must all live in one common target space. Assembled as a
// single fraction so only one gcd normalization runs per call.
RF evaluate(const RF& f, const std::vector<RF>& values);
RF evaluatePoly(const Poly& p, const std::vector<RF>& values);

// Builds the values vector for evaluate() by symbol name. Unlisted symbols
// map to the same-named symbol of the target space.
std::vector<RF> bindingByName(const SpacePtr& from, const SpacePtr& to,
                              const std::vector<std::pair<std::string, RF>>& overrides);

// Rebuilds f over `target`; every symbol f actually uses must exist there.
RF project(const RF& f, const SpacePtr& target);

// Value of f as sym -> infinity, viewing f as rational in sym over the other
// symbols. Throws DivergentLimit when the numerator degree exceeds the
// denominator degree; returns 0 when it is strictly smaller.
RF limitAtInfinity(const RF& f, int sym);

// Value of f at sym = 0. Throws PoleInClassicalLimit (reporting the pole
// order) when the denominator vanishes there.
RF limitAtZero(const RF& f, int sym);
int poleOrderAtZero(const RF& f, int sym);

// Numeric specialization at exact rational points (for --bind and oracles).
BigRat evaluateRational(const RF& f, const std::vector<BigRat>& point);

// a + i*b with exact rational-function parts; division goes through the
// conjugate so everything stays over the rationals. This is how the i-laden
// substitutions P = i*theta/b are tracked without a complex coefficient type.
struct GaussianRF {
    RF re, im;

    explicit GaussianRF(SpacePtr s) : re(RF(s)), im(RF(std::move(s))) {}
    GaussianRF(RF r, RF i) : re(std::move(r)), im(std::move(i)) {}
    static GaussianRF real(RF r) {
        RF z(r.space());
        return GaussianRF(std::move(r), std::move(z));
    }
    static GaussianRF imag(RF i) {
        RF z(i.space());
        return GaussianRF(std::move(z), std::move(i));
    }
    bool isReal() const { return im.isZero(); }

    GaussianRF operator+(const GaussianRF& o) const { return {re + o.re, im + o.im}; }
    GaussianRF operator-(const GaussianRF& o) const { return {re - o.re, im - o.im}; }
    GaussianRF operator*(const GaussianRF& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRF operator/(const GaussianRF& o) const {
        RF n = o.re * o.re + o.im * o.im;
        if (n.isZero()) throw DivisionByZero("gaussian division by zero");
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
};

GaussianRF evaluateGaussian(const RF& f, const std::vector<GaussianRF>& values);

} // namespace heunblocks

#endif
