#ifndef HEUNBLOCKS_VIRASORO_HPP
#define HEUNBLOCKS_VIRASORO_HPP

#include <map>
#include <utility>
#include <vector>

#include "heunblocks/report.hpp"
#include "heunblocks/series.hpp"

namespace heunblocks {

// Weakly decreasing list of positive integers labelling a Virasoro
// descendant L_{-p1} L_{-p2} ... |Delta>.
struct Partition {
    std::vector<int> parts;

    int weight() const {
        int w = 0;
        for (int p : parts) w += p;
        return w;
    }
    bool empty() const { return parts.empty(); }
    Partition rest() const { return Partition{{parts.begin() + 1, parts.end()}}; }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
    std::string str() const;
};

// All partitions of n, smallest leading part first: [1,1,..], [2,1,..], ..., [n].
std::vector<Partition> partitionsOf(int n);

// Finite linear combination of descendants with rational-function
// coefficients; the Virasoro action is computed by PBW straightening.
using VermaState = std::map<Partition, RF>;

class VermaContext {
public:
    VermaContext(RF delta, RF c) : delta_(std::move(delta)), c_(std::move(c)) {
        requireSameSpace(delta_.space(), c_.space());
    }

    const RF& delta() const { return delta_; }
    const RF& centralCharge() const { return c_; }
    const SpacePtr& space() const { return delta_.space(); }

    // L_m acting on a descendant monomial / state, expanded in the
    // descendant basis.
    const VermaState& apply(int m, const Partition& p) const;
    VermaState apply(int m, const VermaState& s) const;

    RF vacuumCoefficient(const VermaState& s) const;

private:
    RF delta_, c_;
    mutable std::map<std::pair<int, Partition>, VermaState> memo_;
};

// <Delta| L_mu(reversed) L_{-lambda} |Delta> for all partitions of `level`,
// indexed in partitionsOf order.
std::vector<std::vector<RF>> gramMatrix(int level, const VermaContext& ctx);

// Matrix elements <braDim, lambda| V(1) |ketDim, mu> of the primary vertex
// operator normalized by <braDim|V|ketDim> = 1, computed by commuting
// generators across V. The largest bra part is eliminated first; the value
// does not depend on that choice.
class VertexContext {
public:
    VertexContext(RF braDim, RF vertexDim, RF ketDim, RF c)
        : d3_(std::move(braDim)), d2_(std::move(vertexDim)), d1_(std::move(ketDim)),
          ket_(d1_, std::move(c)) {}

    RF overlap(const Partition& bra, const Partition& ket) const;

private:
    RF d3_, d2_, d1_;
    VermaContext ket_;
    mutable std::map<std::pair<Partition, Partition>, RF> memo_;
};

// <l1,l2| L_{-lambda} |Delta>: one eigenvalue factor per part, zero when any
// part exceeds 2 (rank-1 Whittaker vector).
RF whittakerOverlap(const Partition& p, const RF& l1, const RF& l2);

// Exact linear solve A x = rhs; throws GramSingular when A is singular as a
// rational-function matrix.
std::vector<RF> solveLinear(std::vector<std::vector<RF>> a, std::vector<RF> rhs);

enum class BlockKind { Regular4pt, Nf3, Nf2, Nf1, Nf0, TypeD, TypeG };

std::string blockKindName(BlockKind k);
BlockKind blockKindFromName(const std::string& s);

// A block expansion: `series` is the bracket [1 + sum c_k var^k] whose offset
// field holds the prefactor exponent (in units of the series variable);
// expLog holds the log of an exponential prefactor as {ticks -> coefficient}.
struct BlockSeries {
    BlockKind kind;
    FormalSeries series;
    std::map<int64_t, RF> expLog;
};

struct RegularBlockDims {
    RF c, dim0, dim1, dimT, dimInf, dimSigma;
};

BlockSeries regularBlock(int order, const RegularBlockDims& dims);

// Whittaker eigenvalues: pstar pairs with the fixed 1/4, the lower blocks use
// the (1, 0) vector.
struct FirstKindDims {
    RF c, dimSigma;
    RF pstar;  // Nf >= 1
    RF pstar2; // Nf = 2 only
    RF dim0, dimT; // Nf = 3 only
};

BlockSeries confluentFirstKind(int nf, int order, const FirstKindDims& dims);

// Collision limit of the regular block: the two 1/t-prefactor series are
// multiplied before the termwise Lambda -> infinity limit (only the product
// has finite coefficients).
struct TypeDDims {
    RF c, dim0, dimT, pstar, pnu;
    int lambdaSym;
};

BlockSeries typeDBlock(int order, const TypeDDims& dims);

// Published coefficients of the rank-2 irregular block; consumed as fixed
// data, no derivation performed here. Space must carry c, Delta0, Pbullet, Pnu.
std::pair<RF, RF> typeGPublishedCoefficients(const SpacePtr& space);
BlockSeries typeGBlock(const SpacePtr& space);

// Termwise confluent-limit checks between first-kind blocks (3->2, 2->1,
// 1->0), compared against the directly computed lower block.
SeriesReport checkBlockConfluence(int nfFrom, int order);

} // namespace heunblocks

#endif
