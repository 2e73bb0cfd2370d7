#ifndef HEUNBLOCKS_POLYNOMIAL_HPP
#define HEUNBLOCKS_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heunblocks/space.hpp"

namespace heunblocks {

// Exponent vector over a fixed ParameterSpace, with cached total degree.
struct Monomial {
    std::vector<int32_t> e;
    int64_t deg = 0;

    static Monomial unit(int n) { return Monomial{std::vector<int32_t>(n, 0), 0}; }
    bool isUnit() const { return deg == 0; }
    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        r.deg += o.deg;
        return r;
    }
};

// Graded lexicographic, highest first: map iteration visits the leading
// monomial at begin(). This ordering is the cross-module canonical form.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.deg != b.deg) return a.deg > b.deg;
        for (size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
        return false;
    }
};

// Multivariate polynomial with exact rational coefficients. Zero coefficients
// are never stored, so equal values have identical term maps.
class Poly {
public:
    using TermMap = std::map<Monomial, BigRat, GradedLexGreater>;

    explicit Poly(SpacePtr space) : space_(std::move(space)) {}

    static Poly constant(const SpacePtr& s, const BigRat& v);
    static Poly symbol(const SpacePtr& s, int idx);
    static Poly symbol(const SpacePtr& s, const std::string& name) { return symbol(s, s->index(name)); }

    const SpacePtr& space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.isUnit()); }
    BigRat constantValue() const;
    bool isOne() const { return isConstant() && constantValue() == 1; }
    bool isMonomial() const { return terms_.size() == 1; }

    int64_t totalDegree() const { return terms_.empty() ? -1 : terms_.begin()->first.deg; }
    int degreeIn(int sym) const;
    bool contains(int sym) const { return degreeIn(sym) > 0; }
    const BigRat& leadingCoef() const;
    const Monomial& leadingMonomial() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const BigRat& v) const;
    Poly mulMonomial(const Monomial& m, const BigRat& v) const;
    Poly pow(int64_t n) const;

    Poly derivative(int sym) const;
    // Coefficient of sym^k, with that symbol's exponent set to zero.
    Poly coefficientOf(int sym, int k) const;
    int lowestDegreeIn(int sym) const;
    Poly atZero(int sym) const { return coefficientOf(sym, 0); }

    // Rational content (carries the sign of the leading coefficient); the
    // primitive part has coprime integer coefficients and positive leading.
    BigRat content() const;
    Poly primitivePart() const;

    std::string str() const;

    void addTerm(const Monomial& m, const BigRat& v);

private:
    SpacePtr space_;
    TermMap terms_;
};

Poly gcd(const Poly& a, const Poly& b);
// Exact division; throws DivisionByZero if b == 0 and ParseError-free
// asserts exactness (remainder must vanish).
Poly divExact(const Poly& a, const Poly& b);

// Single-fraction evaluation helpers live in rational_function.hpp.

} // namespace heunblocks

#endif
