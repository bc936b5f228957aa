#pragma once

#include "qforms/errors.hpp"
#include "qforms/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qforms {

// Ordered sequence of named integer-graded generators.  Parity is degree
// mod 2 and is never stored separately: odd generators anticommute and
// square to zero, even generators commute.
class GeneratorTable {
public:
    struct Generator {
        std::string name;
        int degree = 0;
    };

    static std::shared_ptr<const GeneratorTable> make(std::vector<Generator> gens);

    std::size_t size() const { return gens_.size(); }
    const std::string& name(std::size_t i) const { return gens_.at(i).name; }
    int degree(std::size_t i) const { return gens_.at(i).degree; }
    bool odd(std::size_t i) const { return gens_.at(i).degree % 2 != 0; }
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index_of(const std::string& name) const; // throws EngineError

    bool operator==(const GeneratorTable& other) const { return gens_ == other.gens_; }

private:
    std::vector<Generator> gens_;
    std::map<std::string, std::size_t> index_;

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.name == b.name && a.degree == b.degree;
    }
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

inline bool same_table(const TablePtr& a, const TablePtr& b) {
    return a == b || (a && b && *a == *b);
}

// Sparse exponent vector with strictly increasing generator indices.  Odd
// generators carry exponent exactly 1.
class Monomial {
public:
    using Factor = std::pair<std::size_t, int>; // (generator index, exponent)

    Monomial() = default; // the unit monomial
    static Monomial generator(std::size_t index) { return Monomial({{index, 1}}); }
    explicit Monomial(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int exponent(std::size_t index) const;

    long degree(const GeneratorTable& t) const;
    long weight(const std::vector<long>& weights) const;
    // Number of odd-generator factors (each odd exponent is 1).
    long odd_count(const GeneratorTable& t) const;

    bool operator==(const Monomial&) const = default;
    // Lexicographic order on dense exponent vectors; the unit sorts first.
    bool operator<(const Monomial& other) const;

    std::string str(const GeneratorTable& t) const;

private:
    std::vector<Factor> factors_;
};

// Product of two canonical monomials over `t`.  Returns the canonical result
// and the Koszul sign, or nullopt when an odd generator squares to zero.
std::optional<std::pair<Monomial, int>> monomial_mul(const GeneratorTable& t,
                                                     const Monomial& a,
                                                     const Monomial& b);

// Finite rational-linear combination of monomials in canonical form (no zero
// coefficients, deterministically ordered terms).  Immutable value type.
class Element {
public:
    Element() = default; // over no table; only valid as a moved-from shell
    explicit Element(TablePtr table) : table_(std::move(table)) {}

    static Element zero(TablePtr table) { return Element(std::move(table)); }
    static Element constant(TablePtr table, const Rat& c);
    static Element generator(const TablePtr& table, std::size_t index);
    static Element from_monomial(TablePtr table, const Monomial& m, const Rat& c);

    const TablePtr& table() const { return table_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coefficient(const Monomial& m) const;
    // Coefficient of the unit monomial.
    Rat constant_term() const { return coefficient(Monomial()); }

    Element operator-() const;
    Element operator+(const Element& other) const;
    Element operator-(const Element& other) const;
    Element operator*(const Element& other) const;
    Element operator*(const Rat& c) const;
    Element operator/(const Rat& c) const;
    friend Element operator*(const Rat& c, const Element& a) { return a * c; }
    bool operator==(const Element& other) const;
    bool operator!=(const Element& other) const { return !(*this == other); }

    bool is_homogeneous() const;
    // Degree of a nonzero homogeneous element.
    std::optional<long> homogeneous_degree() const;
    // True for zero and for homogeneous elements of the given degree.
    bool is_homogeneous_of_degree(long d) const;
    std::map<long, Element> degree_components() const;

    // True when every monomial has the given weight (zero passes).
    bool has_weight(const std::vector<long>& weights, long value) const;

    std::string str() const;

private:
    TablePtr table_;
    std::map<Monomial, Rat> terms_;

    void add_term(const Monomial& m, const Rat& c);
    friend class Derivation;
    friend Element substitute(const Element&, const TablePtr&,
                              const std::map<std::size_t, Element>&);
};

// Unique degree-preserving algebra-morphism extension of the generator
// images.  Generators of a's table that do not appear in `images` must exist
// in `target` under the same name and degree.  Each image must be
// homogeneous of its generator's degree (or zero).
Element substitute(const Element& a, const TablePtr& target,
                   const std::map<std::size_t, Element>& images);

// Same-table convenience overload.
Element substitute(const Element& a, const std::map<std::size_t, Element>& images);

// Transports an element to another table by matching generator names.
Element transport(const Element& a, const TablePtr& target);

// Optional weight truncation for basis enumeration: one weight per
// generator plus the selected total weight.
struct WeightSpec {
    std::vector<long> weights;
    long value = 0;
};

// All monomials of the given degree (and weight, when supplied), enumerated
// deterministically in the canonical monomial order.  Requires either all
// generator degrees strictly positive, or a weight spec with nonnegative
// weights in which every generator of degree <= 0 has strictly positive
// weight; otherwise throws InfiniteBasis.
std::vector<Monomial> basis(const GeneratorTable& t, long degree,
                            const std::optional<WeightSpec>& weight = std::nullopt);

} // namespace qforms
