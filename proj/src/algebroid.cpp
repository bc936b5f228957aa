#include "qforms/algebroid.hpp"

#include <sstream>

namespace qforms {

namespace {

std::string frame_label(const StructureData& s, std::size_t a) {
    return s.frame_names.at(a);
}

} // namespace

StructureData StructureData::make(std::vector<std::string> base,
                                  std::vector<std::string> frame,
                                  std::vector<int> degrees,
                                  std::vector<std::vector<Element>> anchor,
                                  std::vector<std::vector<std::vector<Element>>> structure) {
    StructureData s;
    s.base_names = std::move(base);
    s.frame_names = std::move(frame);
    s.frame_degrees = std::move(degrees);
    std::vector<GeneratorTable::Generator> gens;
    for (const auto& n : s.base_names) gens.push_back({n, 0});
    s.base_table = GeneratorTable::make(gens);
    s.anchor = std::move(anchor);
    s.structure = std::move(structure);
    if (s.anchor.empty())
        s.anchor.assign(s.frame_size(),
                        std::vector<Element>(s.base_size(), Element(s.base_table)));
    if (s.structure.empty())
        s.structure.assign(
            s.frame_size(),
            std::vector<std::vector<Element>>(
                s.frame_size(), std::vector<Element>(s.frame_size(), Element(s.base_table))));
    s.validate();
    return s;
}

StructureData StructureData::lie_algebra(std::vector<std::string> names,
                                         std::vector<int> degrees,
                                         const std::vector<std::vector<std::vector<Rat>>>& c) {
    const std::size_t n = names.size();
    StructureData s;
    s.base_names = {};
    s.frame_names = std::move(names);
    s.frame_degrees = std::move(degrees);
    s.base_table = GeneratorTable::make({});
    s.anchor.assign(n, {});
    s.structure.assign(n, std::vector<std::vector<Element>>(
                              n, std::vector<Element>(n, Element(s.base_table))));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g)
                if (c.at(a).at(b).at(g) != 0)
                    s.structure[a][b][g] = Element::constant(s.base_table, c[a][b][g]);
    s.validate();
    return s;
}

bool StructureData::constant_coefficients() const {
    for (const auto& row : anchor)
        for (const auto& e : row)
            for (const auto& [m, coeff] : e.terms())
                if (!m.is_unit()) return false;
    for (const auto& plane : structure)
        for (const auto& row : plane)
            for (const auto& e : row)
                for (const auto& [m, coeff] : e.terms())
                    if (!m.is_unit()) return false;
    return true;
}

Rat StructureData::constant_structure(std::size_t a, std::size_t b, std::size_t g) const {
    return structure.at(a).at(b).at(g).constant_term();
}

void StructureData::validate() const {
    const std::size_t n = frame_size(), m = base_size();
    if (frame_degrees.size() != n) throw ValidationError("frame degree list size mismatch");
    if (anchor.size() != n) throw ValidationError("anchor must have one row per frame element");
    for (const auto& row : anchor)
        if (row.size() != m) throw ValidationError("anchor row size mismatch");
    if (structure.size() != n) throw ValidationError("structure tensor shape mismatch");
    for (const auto& plane : structure) {
        if (plane.size() != n) throw ValidationError("structure tensor shape mismatch");
        for (const auto& row : plane)
            if (row.size() != n) throw ValidationError("structure tensor shape mismatch");
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t i = 0; i < m; ++i) {
            const Element& r = anchor[a][i];
            if (!same_table(r.table(), base_table)) throw MismatchedAlgebra();
            // |rho_a^i| = p_a and base functions have degree 0
            if (!r.is_zero() && frame_degrees[a] != 0)
                throw DegreeMismatch("anchor of " + frame_label(*this, a) +
                                     " must vanish unless its frame degree is 0");
        }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g) {
                const Element& c = structure[a][b][g];
                if (!same_table(c.table(), base_table)) throw MismatchedAlgebra();
                if (!c.is_zero() &&
                    frame_degrees[a] + frame_degrees[b] - frame_degrees[g] != 0)
                    throw DegreeMismatch("structure function c[" + frame_label(*this, a) +
                                         "," + frame_label(*this, b) + "]^" +
                                         frame_label(*this, g) + " violates degree bookkeeping");
                int sign = parity_sign(static_cast<long>(frame_degrees[a]) * frame_degrees[b]);
                if (!(c == structure[b][a][g] * Rat(-sign)))
                    throw ValidationError("structure functions are not graded antisymmetric at (" +
                                          frame_label(*this, a) + "," + frame_label(*this, b) +
                                          ")");
            }
}

TablePtr StructureData::cochain_table() const {
    std::vector<GeneratorTable::Generator> gens;
    for (const auto& nme : base_names) gens.push_back({nme, 0});
    for (std::size_t a = 0; a < frame_size(); ++a)
        gens.push_back({frame_names[a], frame_degrees[a] + 1});
    return GeneratorTable::make(gens);
}

Derivation build_differential(const StructureData& s) {
    s.validate();
    auto t = s.cochain_table();
    const std::size_t m = s.base_size(), n = s.frame_size();
    std::map<std::size_t, Element> images;

    for (std::size_t i = 0; i < m; ++i) {
        Element img(t);
        for (std::size_t a = 0; a < n; ++a) {
            if (s.anchor[a][i].is_zero()) continue;
            img = img + Element::generator(t, m + a) * transport(s.anchor[a][i], t);
        }
        images.emplace(i, img);
    }

    for (std::size_t g = 0; g < n; ++g) {
        Element img(t);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const Element& c = s.structure[a][b][g];
                if (c.is_zero()) continue;
                long sign_par = static_cast<long>(s.frame_degrees[a]) * (s.frame_degrees[b] - 1);
                Rat coeff = Rat(-parity_sign(sign_par)) / 2;
                img = img + Element::generator(t, m + a) * Element::generator(t, m + b) *
                                transport(c, t) * coeff;
            }
        images.emplace(m + g, img);
    }
    return Derivation::from_images(t, 1, images);
}

bool check_jacobi(const StructureData& s) {
    return is_homological(build_differential(s));
}

namespace {

// Splits a monomial over [base x frame] into its fibre and base factors.
struct SplitMonomial {
    std::vector<Monomial::Factor> fibre; // indices >= m
    std::vector<Monomial::Factor> base;  // indices < m
};

SplitMonomial split(const Monomial& mono, std::size_t m) {
    SplitMonomial out;
    for (const auto& f : mono.factors())
        (f.first < m ? out.base : out.fibre).push_back(f);
    return out;
}

} // namespace

Element lower_to_base(const Element& e, const StructureData& s) {
    Element out(s.base_table);
    for (const auto& [mono, c] : e.terms()) {
        std::vector<Monomial::Factor> factors;
        for (const auto& [i, exp] : mono.factors()) {
            if (i >= s.base_size())
                throw ShapeError("element does not lie in the base subalgebra");
            factors.emplace_back(i, exp);
        }
        out = out + Element::from_monomial(s.base_table, Monomial(factors), c);
    }
    return out;
}

StructureData extract_structure(const Derivation& d, std::size_t frame_size,
                                std::size_t base_size) {
    const TablePtr& t = d.table();
    if (t->size() != frame_size + base_size)
        throw ShapeError("table size does not match base + frame");
    if (d.degree() != 1) throw ShapeError("expected a degree-1 derivation");
    const std::size_t m = base_size, n = frame_size;

    std::vector<std::string> base_names, frame_names;
    std::vector<int> degrees;
    for (std::size_t i = 0; i < m; ++i) {
        if (t->degree(i) != 0) throw ShapeError("base generators must have degree 0");
        base_names.push_back(t->name(i));
    }
    for (std::size_t a = 0; a < n; ++a) {
        frame_names.push_back(t->name(m + a));
        degrees.push_back(t->degree(m + a) - 1);
    }

    std::vector<GeneratorTable::Generator> base_gens;
    for (const auto& nme : base_names) base_gens.push_back({nme, 0});
    auto base_table = GeneratorTable::make(base_gens);

    auto lower = [&](const std::vector<Monomial::Factor>& factors, const Rat& c) {
        return Element::from_monomial(base_table, Monomial(factors), c);
    };

    std::vector<std::vector<Element>> anchor(
        n, std::vector<Element>(m, Element(base_table)));
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [mono, c] : d.image(i).terms()) {
            auto parts = split(mono, m);
            if (parts.fibre.size() != 1 || parts.fibre[0].second != 1)
                throw ShapeError("image of " + t->name(i) + " is not linear in the fibre");
            std::size_t a = parts.fibre[0].first - m;
            // base factors are even, so reordering them past lambda^a is free
            anchor[a][i] = anchor[a][i] + lower(parts.base, c);
        }
    }

    std::vector<std::vector<std::vector<Element>>> structure(
        n, std::vector<std::vector<Element>>(n, std::vector<Element>(n, Element(base_table))));
    for (std::size_t g = 0; g < n; ++g) {
        for (const auto& [mono, c] : d.image(m + g).terms()) {
            auto parts = split(mono, m);
            long fibre_degree = 0;
            for (const auto& f : parts.fibre) fibre_degree += f.second;
            if (fibre_degree != 2)
                throw ShapeError("image of " + t->name(m + g) +
                                 " is not quadratic in the fibre");
            if (parts.fibre.size() == 2) {
                std::size_t a = parts.fibre[0].first - m;
                std::size_t b = parts.fibre[1].first - m; // a < b in canonical order
                // coefficient of lambda^a lambda^b is -(-1)^{p_a(p_b-1)} c_{ab}^g
                long sp = static_cast<long>(degrees[a]) * (degrees[b] - 1);
                Element cab = lower(parts.base, c * Rat(-parity_sign(sp)));
                structure[a][b][g] = structure[a][b][g] + cab;
                int sign = parity_sign(static_cast<long>(degrees[a]) * degrees[b]);
                structure[b][a][g] = structure[b][a][g] - cab * Rat(sign);
            } else {
                // (lambda^a)^2 term; the diagonal prefactor is -1/2
                std::size_t a = parts.fibre[0].first - m;
                structure[a][a][g] = structure[a][a][g] + lower(parts.base, c * Rat(-2));
            }
        }
    }

    return StructureData::make(base_names, frame_names, degrees, anchor, structure);
}

Derivation section_contraction(const Section& x, const StructureData& s) {
    if (x.coeffs.size() != s.frame_size())
        throw ShapeError("section needs one coefficient per frame element");
    auto t = s.cochain_table();
    const std::size_t m = s.base_size();

    std::optional<int> degree;
    std::map<std::size_t, Element> images;
    for (std::size_t a = 0; a < s.frame_size(); ++a) {
        const Element& f = x.coeffs[a];
        if (!same_table(f.table(), s.base_table)) throw MismatchedAlgebra();
        if (f.is_zero()) continue;
        auto fd = f.homogeneous_degree();
        if (!fd) throw DegreeMismatch("section coefficients must be homogeneous");
        int want = static_cast<int>(*fd) - t->degree(m + a);
        if (degree && *degree != want)
            throw DegreeMismatch("section is not homogeneous");
        degree = want;
        images.emplace(m + a, transport(f, t));
    }
    return Derivation::from_images(t, degree.value_or(-1), images);
}

namespace {

Section contraction_shape(const Derivation& b, const StructureData& s) {
    const std::size_t m = s.base_size();
    Section out;
    for (std::size_t i = 0; i < m; ++i)
        if (!b.image(i).is_zero())
            throw ShapeError("operator is not a contraction: it moves base coordinates");
    for (std::size_t a = 0; a < s.frame_size(); ++a)
        out.coeffs.push_back(lower_to_base(b.image(m + a), s));
    return out;
}

} // namespace

Section section_bracket(const Section& x, const Section& y, const StructureData& s) {
    auto d = build_differential(s);
    auto b = bracket(bracket(section_contraction(x, s), d), section_contraction(y, s));
    return contraction_shape(b, s);
}

Section morphic_action(const Derivation& xi, const Section& x, const StructureData& s) {
    auto d = build_differential(s);
    if (!same_table(xi.table(), d.table())) throw MismatchedAlgebra();
    if (!bracket(xi, d).is_zero())
        throw NotMorphic("the vector field does not commute with the algebroid differential");
    auto b = bracket(xi, section_contraction(x, s));
    return contraction_shape(b, s);
}

} // namespace qforms
