#pragma once

#include "qforms/derivation.hpp"

#include <vector>

namespace qforms {

// Odd tangent structure on a generator table: a pairing between base
// generators x and their dotted partners x' with |x'| = |x| + 1, together
// with the de Rham derivation d(x) = x', d(x') = 0.  Generators outside the
// pairing are spectators killed by d.
struct OddTangentAlgebra {
    TablePtr table;
    std::vector<std::size_t> base; // indices of undotted generators
    std::vector<std::size_t> dot;  // dot[k] pairs with base[k]

    // Doubles the given table, appending the dotted generators after all base
    // generators in declaration order; dotting appends a prime to the name.
    static OddTangentAlgebra doubled(const TablePtr& base_table);
    // Wraps an existing layout.
    static OddTangentAlgebra over(TablePtr table, std::vector<std::size_t> base,
                                  std::vector<std::size_t> dot);

    // The de Rham differential.
    Derivation d() const;

    std::optional<std::size_t> dot_of(std::size_t idx) const;
    bool is_base(std::size_t idx) const;
};

// Lifts a derivation of the undotted subalgebra to the full table (dotted
// generators and spectators go to zero).  X may be given over the undotted
// table produced by `doubled`, or over the full table with images in the
// undotted subalgebra.
Derivation lift_base_derivation(const OddTangentAlgebra& ot, const Derivation& x);

// iota_X: x -> 0, x' -> X(x); degree |X| - 1.
Derivation contraction(const OddTangentAlgebra& ot, const Derivation& x);

// L_X = [iota_X, d]; degree |X|.
Derivation lie_derivative(const OddTangentAlgebra& ot, const Derivation& x);

// Pass/fail report for the five commutation relations of the Cartan
// calculus, with a witness generator on failure.
struct CartanReport {
    struct Line {
        std::string relation;
        bool pass = false;
        std::string witness; // empty when pass
    };
    std::vector<Line> lines;
    bool all_pass = true;
};

CartanReport cartan_suite(const OddTangentAlgebra& ot, const Derivation& x,
                          const Derivation& y);

} // namespace qforms
