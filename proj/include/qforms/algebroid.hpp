#pragma once

#include "qforms/derivation.hpp"

#include <vector>

namespace qforms {

// A Lie (super)algebra or polynomial Lie algebroid presented by structure
// data: base coordinates x^i (degree 0), a frame with degrees p_alpha,
// anchor polynomials rho_alpha^i and structure functions c_{alpha beta}^gamma
// over the base ring.  The fibre coordinate dual to frame element alpha has
// degree p_alpha + 1 and inherits the frame name.
struct StructureData {
    std::vector<std::string> base_names;
    std::vector<std::string> frame_names;
    std::vector<int> frame_degrees;
    TablePtr base_table; // generators base_names, all of degree 0

    std::vector<std::vector<Element>> anchor;                 // [alpha][i]
    std::vector<std::vector<std::vector<Element>>> structure; // [alpha][beta][gamma]

    static StructureData make(std::vector<std::string> base,
                              std::vector<std::string> frame,
                              std::vector<int> degrees,
                              std::vector<std::vector<Element>> anchor,
                              std::vector<std::vector<std::vector<Element>>> structure);

    // Constant-coefficient Lie (super)algebra over a point.
    static StructureData lie_algebra(std::vector<std::string> names,
                                     std::vector<int> degrees,
                                     const std::vector<std::vector<std::vector<Rat>>>& c);

    std::size_t base_size() const { return base_names.size(); }
    std::size_t frame_size() const { return frame_names.size(); }
    bool constant_coefficients() const;
    Rat constant_structure(std::size_t a, std::size_t b, std::size_t g) const;

    // Graded antisymmetry and degree bookkeeping; throws on violation.
    void validate() const;

    // Generators x^i (degree 0) followed by the fibre duals (degree p+1).
    TablePtr cochain_table() const;
};

// The algebroid differential in its local description
//   d_A = lambda^a rho_a^i d/dx^i
//         - (-1)^{p_a (p_b - 1)} 1/2 lambda^a lambda^b c_{ab}^g d/dlambda^g.
Derivation build_differential(const StructureData& s);

// True iff d_A squares to zero, which is equivalent to the Jacobi identity.
bool check_jacobi(const StructureData& s);

// Reads the anchor and structure functions back from a degree-1 derivation of
// anti-algebroid shape on a table laid out as [base x frame].  Inverse of
// build_differential.
StructureData extract_structure(const Derivation& d, std::size_t frame_size,
                                std::size_t base_size);

// X = f^alpha X_alpha with polynomial coefficients over the base.
struct Section {
    std::vector<Element> coeffs; // over base_table, one per frame element
};

// iota_X = f^alpha d/dlambda^alpha on the cochain algebra.
Derivation section_contraction(const Section& x, const StructureData& s);

// Lie bracket of sections, computed through iota_{[X,Y]} = [[iota_X, d_A], iota_Y].
Section section_bracket(const Section& x, const Section& y, const StructureData& s);

// D_Xi X, read off from iota_{D_Xi X} = [Xi, iota_X].  Xi must commute with
// d_A (NotMorphic otherwise) and the commutator must have contraction shape.
Section morphic_action(const Derivation& xi, const Section& x, const StructureData& s);

// Writes an element of the cochain algebra containing only base generators
// back over the base table.
Element lower_to_base(const Element& e, const StructureData& s);

} // namespace qforms
