#ifndef HEUNBLOCKS_SPACE_HPP
#define HEUNBLOCKS_SPACE_HPP

#include <gmpxx.h>

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "heunblocks/errors.hpp"

namespace heunblocks {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Ordered symbol inventory. The order is fixed at construction and defines
// the canonical (graded-lex) monomial ordering of every polynomial built on
// this space. Spaces are immutable and shared by pointer.
class ParameterSpace {
public:
    explicit ParameterSpace(std::vector<std::string> names) : names_(std::move(names)) {
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            auto [it, fresh] = index_.emplace(names_[i], i);
            if (!fresh) throw UnknownSymbol("duplicate symbol '" + names_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    int index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownSymbol("no symbol '" + name + "' in parameter space");
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) != 0; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const ParameterSpace>;

inline SpacePtr makeSpace(std::vector<std::string> names) {
    return std::make_shared<const ParameterSpace>(std::move(names));
}

inline void requireSameSpace(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return;
    if (a && b && a->names() == b->names()) return;
    throw ParameterSpaceMismatch("operands live in different parameter spaces");
}

// mpq_class(n, d) does not canonicalize; every in-code fraction goes
// through here.
inline BigRat frac(long n, long d = 1) {
    BigRat r(n, d);
    r.canonicalize();
    return r;
}

// Exact rational square root; `ok` reports whether r is a perfect square.
inline BigRat ratSqrt(const BigRat& r, bool& ok) {
    ok = false;
    if (sgn(r) < 0) return BigRat(0);
    BigInt num = r.get_num(), den = r.get_den();
    BigInt sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    if (sn * sn != num || sd * sd != den) return BigRat(0);
    ok = true;
    BigRat out(sn, sd);
    out.canonicalize();
    return out;
}

// Parses "a", "-a", "a/b". Used by the CLI --bind option and the JSON reader.
inline BigRat parseRational(const std::string& s) {
    try {
        BigRat r(s);
        r.canonicalize();
        if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid rational literal '" + s + "'");
    }
}

} // namespace heunblocks

#endif
