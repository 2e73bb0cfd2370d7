#ifndef HEUNBLOCKS_HEUN_HPP
#define HEUNBLOCKS_HEUN_HPP

#include <optional>

#include "heunblocks/report.hpp"
#include "heunblocks/series.hpp"

namespace heunblocks {

// The ten equations of the degeneration diagram. Floquet expansions exist
// for the first five; the rest are catalog-only potentials.
enum class HeunEquation { HVI, HV, HIII1, HIII2, HIII3, HIV, HII, HI, HIII1p, HIIp };

std::string heunEquationName(HeunEquation e);
HeunEquation heunEquationFromName(const std::string& s);

// Coefficient family of the 3-term recurrence A_n c_{n-1} - B_n c_n +
// C_n t c_{n+1} = 0. A and C are monodromy constants; the unknown (q or E)
// and t enter only through B, affinely.
class CFFamily {
public:
    HeunEquation equation;
    SpacePtr space;     // sigma, equation thetas, unknown, t
    int unknownSym, tSym;
    bool unknownIsQ;    // q needs the q->E dictionary; the III family expands E directly
    RF omega;           // Floquet convention: sigma+theta0+thetat-1/2 or sigma
    std::vector<std::pair<std::string, RF>> dictionary; // alpha, beta, ... where applicable

    RF A(int n) const;
    RF B(int n) const;
    RF C(int n) const;

    RF dict(const std::string& name) const;
};

CFFamily cfFamily(HeunEquation eq);

struct AccessoryExpansion {
    HeunEquation equation;
    SpacePtr space; // sigma and equation thetas
    std::optional<FormalSeries> qSeries; // HVI, HV only
    FormalSeries eSeries;
};

// Solves the continued-fraction equation order by order in t; ladders are
// truncated at depth order+1 (or `depth` when nonnegative, for the
// depth-stability check).
AccessoryExpansion floquetExpansion(HeunEquation eq, int order, int depth = -1);

// E-series from the q-series via the canonical-form dictionary; the III
// family has no q and rejects this call.
FormalSeries qToAccessory(HeunEquation eq, const FormalSeries& qSeries);

enum class FloquetChainLink { VItoV, VtoIII1, III1toIII2, III2toIII3 };

SeriesReport checkFloquetConfluence(FloquetChainLink link, int order);

struct MathieuDictionary {
    BigRat nu;        // DLMF nu = 2 sigma
    BigRat qSquared;  // (4 sqrt t)^2 = 16 t
    BigRat deltaSigma;
    double q() const;
};

MathieuDictionary mathieuDictionary(const BigRat& sigma, const BigRat& t);

// Numeric specialization of a series; a vanishing denominator is reported as
// a resonant parameter choice.
FormalSeries bindSeries(const FormalSeries& s,
                        const std::vector<std::pair<std::string, BigRat>>& binds);

} // namespace heunblocks

#endif
