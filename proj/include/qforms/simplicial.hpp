#pragma once

#include "qforms/algebroid.hpp"

#include <vector>

namespace qforms {

// Finite groupoid given by explicit tables.  Arrows compose as m(a, b) with
// s(a) = t(b), matching the nerve convention for composable tuples
// (g_1, ..., g_q) with s(g_i) = t(g_{i+1}).
struct FiniteGroupoid {
    std::size_t n_objects = 0;
    std::vector<std::size_t> src, tgt;      // per arrow
    std::vector<std::size_t> identity;      // per object
    std::vector<std::size_t> inverse;       // per arrow
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mult;

    std::size_t n_arrows() const { return src.size(); }
    std::size_t compose(std::size_t a, std::size_t b) const;
    bool composable(std::size_t a, std::size_t b) const { return src[a] == tgt[b]; }

    // Exhaustive check of the groupoid axioms.
    void validate() const;

    // Composable q-tuples in deterministic lexicographic order; q = 0 gives
    // one entry per object.
    std::vector<std::vector<std::size_t>> tuples(int q) const;

    static FiniteGroupoid cyclic_group(std::size_t n);
};

// Rational cochain on G^(q), stored per composable tuple.
struct FiniteCochain {
    int level = 0;
    std::vector<Rat> values; // indexed like tuples(level)
};

FiniteCochain face_pullback(const FiniteGroupoid& g, int i, int q, const FiniteCochain& f);
FiniteCochain degeneracy_pullback(const FiniteGroupoid& g, int i, int q,
                                  const FiniteCochain& f);
FiniteCochain delta(const FiniteGroupoid& g, const FiniteCochain& f);
FiniteCochain cup(const FiniteGroupoid& g, const FiniteCochain& f, const FiniteCochain& h);
bool normalize_check(const FiniteGroupoid& g, const FiniteCochain& f);

// Betti numbers of the normalized cochain complex over degrees 0..q_max.
std::vector<long> finite_normalized_betti(const FiniteGroupoid& g, int q_max);

// Polynomial action groupoid G = M x Gamma over M = R^m: a polynomial group
// law mu on Gamma = R^n with identity 0 and a polynomial right action
// s: M x Gamma -> M.  Cochains are polynomials on G^(q) = M x Gamma^q.
struct PolyActionGroupoid {
    std::vector<std::string> base_names;  // x^i
    std::vector<std::string> group_names; // g^a
    TablePtr mu_table;                    // g^a then h^a
    std::vector<Element> mu;              // n components mu^a(g, h)
    TablePtr act_table;                   // x^i then g^a
    std::vector<Element> act;             // m components s^i(x, g)

    std::size_t base_dim() const { return base_names.size(); }
    std::size_t group_dim() const { return group_names.size(); }

    static PolyActionGroupoid make(std::vector<std::string> base,
                                   std::vector<std::string> group,
                                   std::vector<Element> mu, std::vector<Element> act);

    // Symbolic verification of mu(g,0) = mu(0,g) = g, associativity of mu,
    // s(x,0) = x, s(s(x,g),h) = s(x, mu(g,h)), and closure of the
    // left-invariant frame with constant structure constants.
    void validate() const;

    // Coordinate ring of G^(q): x^1..x^m, g_1^1..g_1^n, ..., g_q^1..g_q^n.
    TablePtr level_table(int q) const;

    // Left-invariant frame J_a^i(g) = d mu^i / d h^a (g, 0) over the group ring.
    std::vector<std::vector<Element>> frame() const;
    // Structure constants c_ab^e with [X_a, X_b] = c_ab^e X_e.
    std::vector<std::vector<std::vector<Rat>>> structure_constants() const;
    // Anchor rho_a^i(x) = d s^i / d g^a (x, 0) over the base ring.
    std::vector<std::vector<Element>> anchor() const;
    // The induced algebroid data (base, frame duals of degree 1).
    StructureData algebroid() const;
};

struct PolyCochain {
    int level = 0;
    Element value; // over level_table(level)
};

PolyCochain face_pullback(const PolyActionGroupoid& g, int i, int q, const PolyCochain& f);
PolyCochain degeneracy_pullback(const PolyActionGroupoid& g, int i, int q,
                                const PolyCochain& f);
PolyCochain delta(const PolyActionGroupoid& g, const PolyCochain& f);
PolyCochain cup(const PolyActionGroupoid& g, const PolyCochain& f, const PolyCochain& h);
bool normalize_check(const PolyActionGroupoid& g, const PolyCochain& f);

// The van Est map: antisymmetrized differentiation along the left-invariant
// frame in the last slot, evaluated at the identity.  Returns an algebroid
// q-cochain over the table of `g.algebroid()`.
Element van_est(const PolyActionGroupoid& g, const PolyCochain& f);

} // namespace qforms
