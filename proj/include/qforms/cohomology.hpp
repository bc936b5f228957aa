#pragma once

#include "qforms/derivation.hpp"

#include <gmpxx.h>
#include <Eigen/Core>

#include <map>
#include <optional>
#include <vector>

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};
} // namespace Eigen

namespace qforms {

using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// A finite cochain problem: a degree-1 homological derivation on a graded
// algebra, a degree window, and an optional weight truncation making the
// per-degree bases finite.
struct ComplexSpec {
    TablePtr table;
    Derivation differential;
    int lo = 0;
    int hi = 0;
    std::optional<WeightSpec> weight;

    std::vector<Monomial> basis_at(long degree) const;
};

// --- exact linear algebra (deterministic lexicographically-first pivots) ---

// Reduced row echelon form in place; returns the pivot columns in order.
std::vector<long> rref_in_place(Mat& a);
long rank_of(Mat a);
// Columns span the kernel; deterministic (free columns in increasing order).
Mat kernel_basis(const Mat& a);
// Solves A X = B exactly.  Returns nullopt when inconsistent.
std::optional<Mat> solve_exact(const Mat& a, const Mat& b);

// Matrix of the differential C^n -> C^{n+1} in the deterministic monomial
// bases.  Checks weight preservation when a weight truncation is present.
Mat differential_matrix(const ComplexSpec& spec, int n);

// Matrix of an arbitrary operator between the enumerated bases of its source
// and target degrees (adjusting weight by the operator's weight shift 0).
Mat operator_matrix(const ComplexSpec& spec, const Derivation& op, int n);

struct DegreeStats {
    long dim = 0;    // dim C^n
    long rank = 0;   // rank of d_n
    long kernel = 0; // dim ker d_n
    long h = 0;      // dim H^n
};

struct BettiTable {
    std::map<int, DegreeStats> rows;
    std::vector<long> dims(int lo, int hi) const;
};

// Cohomology of the full complex over the window.
BettiTable betti(const ComplexSpec& spec);

// Cohomology of the differential restricted to the joint kernel of the given
// operators (degree-homogeneous, weight-preserving).  Verifies closure of the
// differential on the subcomplex and its exactness there; throws NotClosed.
BettiTable invariant_betti(const ComplexSpec& spec, const std::vector<Derivation>& ops);

// Basic subcomplex: joint kernel of the contractions I_b and of
// L_b = [I_b, d].  Each contraction must be odd of degree -1.
BettiTable basic_betti(const ComplexSpec& spec, const std::vector<Derivation>& contractions);

// Cocycles spanning H^n modulo coboundaries, with deterministic pivots.
// When `ops` is nonempty the quotient is taken inside the joint kernel.
std::vector<Element> representatives(const ComplexSpec& spec, int n,
                                     const std::vector<Derivation>& ops = {});

} // namespace qforms
