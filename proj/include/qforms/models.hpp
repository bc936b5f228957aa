#pragma once

#include "qforms/algebroid.hpp"
#include "qforms/cartan.hpp"
#include "qforms/cohomology.hpp"

#include <vector>

namespace qforms {

// Weil algebra of a constant-coefficient Lie (super)algebra: generators
// theta^i of degree 1 and theta'^i of degree 2, the Koszul differential
// d_K = theta' d/dtheta, the lifted algebra differential, and their sum d_W.
struct WeilAlgebra {
    StructureData g;
    OddTangentAlgebra ot;          // table: theta then theta'
    Derivation d_ce;               // Lie-derivative lift of the CE differential
    Derivation d_k;                // Koszul operator
    Derivation d_w;                // d_ce + d_k
    std::vector<Derivation> contractions; // I_{v_i} = d/dtheta^i
    std::vector<Derivation> lie_ops;      // L_{v_i} = [I_{v_i}, d_w]
};

WeilAlgebra weil(const StructureData& g);

// BRST model of a Lie algebra action on R^m: the algebra
// Omega(M) (x) W(g) on generators x, x', theta, theta' and the total
// differential D_B = d_M + d_W + theta^i L_{rho(v_i)} - theta'^i iota_{rho(v_i)}.
struct BRSTComplex {
    StructureData g;
    TablePtr table;                   // x, x', theta, theta'
    OddTangentAlgebra ot;             // base {x, theta}, dots {x', theta'}
    std::vector<Derivation> action;   // rho(v_i) lifted to the table
    Derivation d_m;                   // de Rham on the x-part
    Derivation d_k;                   // Koszul on the theta-part
    Derivation d_w;                   // Weil differential on the theta-part
    Derivation d_a;                   // action-algebroid differential on (x, theta)
    Derivation total;                 // D_B
    std::optional<std::vector<long>> weights; // w(x) = w(x') = 1, w(th) = w(th') = 0

    std::size_t base_dim = 0;
    std::size_t fibre_dim = 0;
};

// action: one derivation of the base polynomial ring R[x] per basis element.
// base_override supplies the base ring when the action list is empty.
BRSTComplex brst(const StructureData& g, const std::vector<Derivation>& action,
                 const std::optional<TablePtr>& base_override = std::nullopt);

// Generalized Mathai-Quillen-Kalkman conjugation: returns
// (Ad_{exp iota_{d_A}}(d), d + L_{d_A}); the two must agree.
std::pair<Derivation, Derivation> mqk(const BRSTComplex& b, int cap = 64);

// Cartan model: the theta-free subalgebra with differential
// d_C = d_M - theta'^i iota_{rho(v_i)} and invariance operators
// L_i = -theta'^j c_{ij}^k d/dtheta'^k + L_{rho(v_i)}.
struct CartanModel {
    TablePtr table; // x, x', theta'
    Derivation d_c;
    std::vector<Derivation> invariance;
    std::optional<std::vector<long>> weights;
};

CartanModel cartan_model(const BRSTComplex& b);

// Chevalley-Eilenberg data of a Lie bialgebra: d from the structure
// constants of g, Xi from those of g*, on odd generators v_i, theta^i.
struct BialgebraDouble {
    TablePtr table; // v_1..v_n then theta^1..theta^n, all of degree 1
    Derivation d;
    Derivation xi;
    Derivation total;        // d + xi
    bool compatible = false; // [d, xi] = 0
    bool total_homological = false;
    std::string witness;     // first generator where [d, xi] fails, if any
};

BialgebraDouble bialgebra_double(const std::vector<std::vector<std::vector<Rat>>>& c,
                                 const std::vector<std::vector<std::vector<Rat>>>& gamma);

// Equivariant algebroid (Ginzburg) complex of an algebroid A with a
// pre-moment lift of a g-action: table x, lambda, theta, theta'.
struct GinzburgComplex {
    StructureData algebroid;
    StructureData g;
    TablePtr table;
    Derivation d_a;             // lifted algebroid differential
    Derivation d_k;             // Koszul on the theta-part
    Derivation coboundary;      // theta^b L_b - theta'^b iota_b + d_{[-1]Tg}
    Derivation morphic;         // d_A + d_K
    Derivation total;           // coboundary + morphic
    Derivation mqk_twist;       // Q = theta^b iota_b - 1/2 theta^a theta^b c_ab^e d/dtheta'^e
    std::vector<Derivation> contractions; // I_b = d/dtheta^b on the full table

    TablePtr horizontal_table;  // x, lambda, theta'
    Derivation d_c;             // d_A - theta'^b iota_b on the horizontal table
    std::vector<Derivation> invariance; // L_b restricted to horizontals
};

GinzburgComplex ginzburg(const StructureData& algebroid, const StructureData& g,
                         const std::vector<Section>& premoment);

// Twisted differential d_A + gamma * Xi for a morphic homological degree-1
// field Xi; homological for every rational gamma.
Derivation twisted(const StructureData& s, const Derivation& xi, const Rat& gamma);

} // namespace qforms
