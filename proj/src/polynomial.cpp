#include "heunblocks/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace heunblocks {

Poly Poly::constant(const SpacePtr& s, const BigRat& v) {
    Poly p(s);
    BigRat c = v;
    c.canonicalize(); // two-argument mpq_class construction skips this
    if (c != 0) p.terms_.emplace(Monomial::unit(s->size()), std::move(c));
    return p;
}

Poly Poly::symbol(const SpacePtr& s, int idx) {
    Poly p(s);
    Monomial m = Monomial::unit(s->size());
    m.e.at(idx) = 1;
    m.deg = 1;
    p.terms_.emplace(std::move(m), BigRat(1));
    return p;
}

BigRat Poly::constantValue() const {
    if (terms_.empty()) return BigRat(0);
    return terms_.begin()->second;
}

int Poly::degreeIn(int sym) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[sym]));
    return d;
}

const BigRat& Poly::leadingCoef() const {
    static const BigRat zero(0);
    return terms_.empty() ? zero : terms_.begin()->second;
}

const Monomial& Poly::leadingMonomial() const {
    if (terms_.empty()) throw DivisionByZero("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

void Poly::addTerm(const Monomial& m, const BigRat& v) {
    if (v == 0) return;
    auto [it, fresh] = terms_.emplace(m, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(space_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    requireSameSpace(space_, o.space_);
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    requireSameSpace(space_, o.space_);
    for (const auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    requireSameSpace(space_, o.space_);
    Poly r(space_);
    if (terms_.empty() || o.terms_.empty()) return r;
    // iterate the smaller operand outermost
    const Poly& a = terms_.size() <= o.terms_.size() ? *this : o;
    const Poly& b = terms_.size() <= o.terms_.size() ? o : *this;
    BigRat tmp;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            tmp = ca * cb;
            r.addTerm(ma * mb, tmp);
        }
    }
    return r;
}

Poly Poly::scaled(const BigRat& v) const {
    Poly r(space_);
    if (v == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * v);
    return r;
}

Poly Poly::mulMonomial(const Monomial& mono, const BigRat& v) const {
    Poly r(space_);
    if (v == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m * mono, c * v);
    return r;
}

Poly Poly::pow(int64_t n) const {
    if (n < 0) throw DivisionByZero("negative power of a polynomial");
    Poly r = constant(space_, 1);
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

Poly Poly::derivative(int sym) const {
    Poly r(space_);
    for (const auto& [m, c] : terms_) {
        int32_t k = m.e[sym];
        if (k == 0) continue;
        Monomial d = m;
        d.e[sym] = k - 1;
        d.deg -= 1;
        r.addTerm(d, c * k);
    }
    return r;
}

Poly Poly::coefficientOf(int sym, int k) const {
    Poly r(space_);
    for (const auto& [m, c] : terms_) {
        if (m.e[sym] != k) continue;
        Monomial d = m;
        d.e[sym] = 0;
        d.deg -= k;
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

int Poly::lowestDegreeIn(int sym) const {
    int low = -1;
    for (const auto& [m, c] : terms_) {
        int k = m.e[sym];
        if (low < 0 || k < low) low = k;
        if (low == 0) break;
    }
    return low;
}

BigRat Poly::content() const {
    if (terms_.empty()) return BigRat(0);
    BigInt gnum(0), lden(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(lden.get_mpz_t(), lden.get_mpz_t(), c.get_den().get_mpz_t());
    }
    BigRat r(gnum, lden);
    r.canonicalize();
    if (sgn(leadingCoef()) < 0) r = -r;
    return r;
}

Poly Poly::primitivePart() const {
    if (terms_.empty()) return *this;
    return scaled(BigRat(1) / content());
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        BigRat a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? "-" : "+");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool needCoef = (a != 1) || m.isUnit();
        if (needCoef) os << a.get_str();
        bool needStar = needCoef;
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (needStar) os << "*";
            os << space_->name(static_cast<int>(i));
            if (m.e[i] > 1) os << "^" << m.e[i];
            needStar = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd: content / primitive-part recursion over one variable at a time, with a
// primitive pseudo-remainder sequence. Adequate at the sizes this library
// produces (series orders <= 8, spaces <= 10 symbols).

namespace {

// view of p as a univariate polynomial in `sym` with Poly coefficients
std::vector<Poly> univariateView(const Poly& p, int sym) {
    int d = p.degreeIn(sym);
    std::vector<Poly> out(static_cast<size_t>(d) + 1, Poly(p.space()));
    for (const auto& [m, c] : p.terms()) {
        Monomial r = m;
        int k = r.e[sym];
        r.e[sym] = 0;
        r.deg -= k;
        out[static_cast<size_t>(k)].addTerm(r, c);
    }
    return out;
}

Poly assemble(const std::vector<Poly>& coefs, int sym, const SpacePtr& space) {
    Poly out(space);
    for (size_t k = 0; k < coefs.size(); ++k) {
        if (coefs[k].isZero()) continue;
        Monomial shift = Monomial::unit(space->size());
        shift.e[sym] = static_cast<int32_t>(k);
        shift.deg = static_cast<int64_t>(k);
        out += coefs[k].mulMonomial(shift, BigRat(1));
    }
    return out;
}

int degOf(const std::vector<Poly>& u) {
    for (int k = static_cast<int>(u.size()) - 1; k >= 0; --k)
        if (!u[static_cast<size_t>(k)].isZero()) return k;
    return -1;
}

// pseudo-remainder of A by B in the main variable (both as views)
std::vector<Poly> prem(std::vector<Poly> A, const std::vector<Poly>& B) {
    int db = degOf(B);
    const Poly& lb = B[static_cast<size_t>(db)];
    int da = degOf(A);
    while (da >= db && da >= 0) {
        Poly la = A[static_cast<size_t>(da)];
        int shift = da - db;
        // A = lb*A - la*x^shift*B
        for (int k = 0; k <= da; ++k)
            if (!A[static_cast<size_t>(k)].isZero()) A[static_cast<size_t>(k)] = lb * A[static_cast<size_t>(k)];
        for (int k = 0; k <= db; ++k) {
            if (B[static_cast<size_t>(k)].isZero()) continue;
            A[static_cast<size_t>(k + shift)] -= la * B[static_cast<size_t>(k)];
        }
        int nda = -1;
        for (int k = da; k >= 0; --k)
            if (!A[static_cast<size_t>(k)].isZero()) { nda = k; break; }
        da = nda;
    }
    A.resize(static_cast<size_t>(std::max(da, 0)) + 1, Poly(lb.space()));
    return A;
}

Poly contentIn(const std::vector<Poly>& view) {
    Poly c(view.front().space());
    for (const auto& q : view) {
        if (q.isZero()) continue;
        c = c.isZero() ? q : gcd(c, q);
        if (c.isConstant() && !c.isZero()) break;
    }
    return c;
}

bool disjointSupport(const Poly& a, const Poly& b) {
    int n = a.space()->size();
    for (int i = 0; i < n; ++i)
        if (a.degreeIn(i) > 0 && b.degreeIn(i) > 0) return false;
    return true;
}

} // namespace

namespace {

// gcd of the coefficient polynomials of p grouped by its exponents in the
// `outside` variables; any common divisor of two polynomials can only involve
// their shared variables, so this projects p onto the common-variable ring.
Poly contentOutside(const Poly& p, const std::vector<bool>& outside) {
    std::map<std::vector<int32_t>, Poly> groups;
    int n = p.space()->size();
    for (const auto& [m, c] : p.terms()) {
        std::vector<int32_t> key(static_cast<size_t>(n), 0);
        Monomial inner = m;
        for (int i = 0; i < n; ++i) {
            if (!outside[static_cast<size_t>(i)]) continue;
            key[static_cast<size_t>(i)] = m.e[i];
            inner.deg -= inner.e[i];
            inner.e[i] = 0;
        }
        auto [it, fresh] = groups.emplace(std::move(key), Poly(p.space()));
        it->second.addTerm(inner, c);
    }
    Poly c(p.space());
    for (const auto& [k, q] : groups) {
        c = c.isZero() ? q : gcd(c, q);
        if (c.isConstant()) break;
    }
    return c;
}

} // namespace

Poly gcd(const Poly& a, const Poly& b) {
    requireSameSpace(a.space(), b.space());
    const SpacePtr& sp = a.space();
    if (a.isZero()) return b.isZero() ? b : b.primitivePart();
    if (b.isZero()) return a.primitivePart();
    if (a.isConstant() || b.isConstant()) return Poly::constant(sp, 1);
    if (disjointSupport(a, b)) return Poly::constant(sp, 1);

    // monomial fast path (covers the Laurent denominators z^k)
    if (a.isMonomial() || b.isMonomial()) {
        const Poly& mono = a.isMonomial() ? a : b;
        const Poly& other = a.isMonomial() ? b : a;
        Monomial g = mono.leadingMonomial();
        for (int i = 0; i < sp->size(); ++i) {
            if (g.e[i] == 0) continue;
            int low = other.lowestDegreeIn(i);
            g.e[i] = std::min(g.e[i], static_cast<int32_t>(low));
        }
        g.deg = 0;
        for (int32_t e : g.e) g.deg += e;
        Poly out(sp);
        out.addTerm(g, BigRat(1));
        return out;
    }

    // restrict both operands to their common variables first
    std::vector<int> degA(static_cast<size_t>(sp->size())), degB(static_cast<size_t>(sp->size()));
    for (int i = 0; i < sp->size(); ++i) {
        degA[static_cast<size_t>(i)] = a.degreeIn(i);
        degB[static_cast<size_t>(i)] = b.degreeIn(i);
    }
    std::vector<bool> onlyA(static_cast<size_t>(sp->size()), false),
        onlyB(static_cast<size_t>(sp->size()), false);
    bool splitA = false, splitB = false;
    for (int i = 0; i < sp->size(); ++i) {
        if (degA[static_cast<size_t>(i)] > 0 && degB[static_cast<size_t>(i)] == 0) {
            onlyA[static_cast<size_t>(i)] = true;
            splitA = true;
        }
        if (degB[static_cast<size_t>(i)] > 0 && degA[static_cast<size_t>(i)] == 0) {
            onlyB[static_cast<size_t>(i)] = true;
            splitB = true;
        }
    }
    if (splitA || splitB) {
        Poly ra = splitA ? contentOutside(a, onlyA) : a;
        Poly rb = splitB ? contentOutside(b, onlyB) : b;
        return gcd(ra, rb);
    }

    // main variable: smallest joint degree keeps the remainder sequence short
    int main = -1;
    long best = 0;
    for (int i = 0; i < sp->size(); ++i) {
        int da = degA[static_cast<size_t>(i)], db = degB[static_cast<size_t>(i)];
        if (da == 0 && db == 0) continue;
        long score = static_cast<long>(std::min(da, db));
        if (main < 0 || score < best) {
            main = i;
            best = score;
        }
    }
    if (main < 0) return Poly::constant(sp, 1);

    auto av = univariateView(a, main);
    auto bv = univariateView(b, main);
    Poly ca = contentIn(av);
    Poly cb = contentIn(bv);
    Poly c = gcd(ca, cb);
    for (auto& q : av) if (!q.isZero()) q = divExact(q, ca);
    for (auto& q : bv) if (!q.isZero()) q = divExact(q, cb);

    std::vector<Poly>* A = &av;
    std::vector<Poly>* B = &bv;
    if (degOf(*A) < degOf(*B)) std::swap(A, B);
    std::vector<Poly> R;
    while (true) {
        R = prem(*A, *B);
        if (degOf(R) < 0) break;
        if (degOf(R) == 0) {
            // coprime primitive parts
            return c.primitivePart();
        }
        Poly cr = contentIn(R);
        for (auto& q : R) if (!q.isZero()) q = divExact(q, cr);
        *A = std::move(*B);
        *B = std::move(R);
    }
    Poly g = assemble(*B, main, sp);
    g = c * g.primitivePart();
    return g.primitivePart();
}

Poly divExact(const Poly& a, const Poly& b) {
    requireSameSpace(a.space(), b.space());
    if (b.isZero()) throw DivisionByZero("exact division by zero polynomial");
    Poly q(a.space());
    if (a.isZero()) return q;
    if (b.isConstant()) return a.scaled(BigRat(1) / b.constantValue());
    Poly r = a;
    const Monomial lbm = b.leadingMonomial();
    const BigRat lbc = b.leadingCoef();
    GradedLexGreater cmp;
    while (!r.isZero()) {
        const Monomial lrm = r.leadingMonomial();
        Monomial m = lrm;
        bool divisible = true;
        for (size_t i = 0; i < m.e.size(); ++i) {
            m.e[i] -= lbm.e[i];
            if (m.e[i] < 0) { divisible = false; break; }
        }
        if (!divisible) throw DivisionByZero("division is not exact");
        m.deg = lrm.deg - lbm.deg;
        BigRat coef = r.leadingCoef() / lbc;
        q.addTerm(m, coef);
        r -= b.mulMonomial(m, coef);
        if (!r.isZero() && !cmp(lrm, r.leadingMonomial()))
            throw DivisionByZero("division is not exact");
    }
    return q;
}

} // namespace heunblocks
