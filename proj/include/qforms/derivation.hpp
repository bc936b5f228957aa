#pragma once

#include "qforms/algebra.hpp"

#include <vector>

namespace qforms {

// Graded derivation of a free graded-commutative algebra, stored
// extensionally by its generator images and extended by the Leibniz rule
//   D(fg) = D(f) g + (-1)^{|D||f|} f D(g).
// Two derivations are equal iff all generator images are equal.
class Derivation {
public:
    Derivation() = default; // placeholder shell; assign before use
    Derivation(TablePtr table, int degree, std::vector<Element> images);
    static Derivation zero(TablePtr table, int degree);
    // d/d(gen i); its degree is -degree(i).
    static Derivation partial(const TablePtr& table, std::size_t index);
    static Derivation from_images(const TablePtr& table, int degree,
                                  const std::map<std::size_t, Element>& images);

    const TablePtr& table() const { return table_; }
    int degree() const { return degree_; }
    const Element& image(std::size_t i) const { return images_.at(i); }
    const std::vector<Element>& images() const { return images_; }
    bool is_zero() const;

    // Leibniz extension applied to an element.
    Element operator()(const Element& a) const;

    Derivation operator+(const Derivation& other) const;
    Derivation operator-(const Derivation& other) const;
    Derivation operator-() const;
    Derivation operator*(const Rat& c) const;
    bool operator==(const Derivation& other) const;
    bool operator!=(const Derivation& other) const { return !(*this == other); }

    std::string str() const;

private:
    TablePtr table_;
    int degree_ = 0;
    std::vector<Element> images_;

    Element apply_monomial(const Monomial& m) const;
};

// Left multiplication by a homogeneous element: (f*D)(a) = f * D(a).
Derivation operator*(const Element& f, const Derivation& D);

// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba, returned through its
// generator images.
Derivation bracket(const Derivation& a, const Derivation& b);

// True iff |D| = 1 and [D, D] = 0.
bool is_homological(const Derivation& d);

// exp(N) applied to `a` for a degree-0 derivation N that is nilpotent on a;
// throws NotNilpotent when the series has not terminated after `cap` terms.
Element exp_nilpotent(const Derivation& n, const Element& a, int cap = 64);

// Ad_{exp(N)}(D) = exp(ad_N)(D) via iterated brackets.
Derivation conjugate(const Derivation& d, const Derivation& n, int cap = 64);

// Transports a derivation to another table by generator name; target
// generators without a counterpart get a zero image.
Derivation transport(const Derivation& d, const TablePtr& target);

} // namespace qforms
