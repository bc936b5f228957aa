#include "qforms/cartan.hpp"
#include <set>

namespace qforms {

OddTangentAlgebra OddTangentAlgebra::doubled(const TablePtr& base_table) {
    std::vector<GeneratorTable::Generator> gens;
    const std::size_t n = base_table->size();
    std::set<std::string> taken;
    for (std::size_t i = 0; i < n; ++i) {
        gens.push_back({base_table->name(i), base_table->degree(i)});
        taken.insert(base_table->name(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        // dotting appends a prime; iterated tangents keep appending
        std::string nme = base_table->name(i) + "'";
        while (taken.count(nme)) nme += "'";
        taken.insert(nme);
        gens.push_back({nme, base_table->degree(i) + 1});
    }

    OddTangentAlgebra ot;
    ot.table = GeneratorTable::make(std::move(gens));
    for (std::size_t i = 0; i < n; ++i) {
        ot.base.push_back(i);
        ot.dot.push_back(n + i);
    }
    return ot;
}

OddTangentAlgebra OddTangentAlgebra::over(TablePtr table, std::vector<std::size_t> base,
                                          std::vector<std::size_t> dot) {
    if (base.size() != dot.size())
        throw EngineError("odd tangent pairing must match base and dotted lists");
    OddTangentAlgebra ot;
    ot.table = std::move(table);
    ot.base = std::move(base);
    ot.dot = std::move(dot);
    for (std::size_t k = 0; k < ot.base.size(); ++k)
        if (ot.table->degree(ot.dot[k]) != ot.table->degree(ot.base[k]) + 1)
            throw DegreeMismatch("dotted generator " + ot.table->name(ot.dot[k]) +
                                 " must raise degree by one");
    return ot;
}

Derivation OddTangentAlgebra::d() const {
    std::map<std::size_t, Element> images;
    for (std::size_t k = 0; k < base.size(); ++k)
        images.emplace(base[k], Element::generator(table, dot[k]));
    return Derivation::from_images(table, 1, images);
}

std::optional<std::size_t> OddTangentAlgebra::dot_of(std::size_t idx) const {
    for (std::size_t k = 0; k < base.size(); ++k)
        if (base[k] == idx) return dot[k];
    return std::nullopt;
}

bool OddTangentAlgebra::is_base(std::size_t idx) const {
    for (std::size_t b : base)
        if (b == idx) return true;
    return false;
}

namespace {

// Checks that an element of the full algebra only involves base generators.
void require_base_only(const OddTangentAlgebra& ot, const Element& e,
                       const std::string& what) {
    for (const auto& [m, c] : e.terms())
        for (const auto& [i, exp] : m.factors())
            if (!ot.is_base(i))
                throw ShapeError(what + " must only involve undotted generators");
}

} // namespace

Derivation lift_base_derivation(const OddTangentAlgebra& ot, const Derivation& x) {
    std::map<std::size_t, Element> images;
    if (same_table(x.table(), ot.table)) {
        for (std::size_t k = 0; k < ot.base.size(); ++k) {
            const Element& img = x.image(ot.base[k]);
            require_base_only(ot, img, "lifted image");
            if (!img.is_zero()) images.emplace(ot.base[k], img);
        }
        for (std::size_t k = 0; k < ot.dot.size(); ++k)
            if (!x.image(ot.dot[k]).is_zero())
                throw ShapeError("base derivation must kill dotted generators");
    } else {
        // x lives over the undotted table; ot.base[k] corresponds to index k
        if (x.table()->size() != ot.base.size())
            throw MismatchedAlgebra();
        for (std::size_t k = 0; k < ot.base.size(); ++k) {
            Element img = transport(x.image(k), ot.table);
            if (!img.is_zero()) images.emplace(ot.base[k], img);
        }
    }
    return Derivation::from_images(ot.table, x.degree(), images);
}

Derivation contraction(const OddTangentAlgebra& ot, const Derivation& x) {
    Derivation lifted = lift_base_derivation(ot, x);
    std::map<std::size_t, Element> images;
    for (std::size_t k = 0; k < ot.base.size(); ++k) {
        const Element& img = lifted.image(ot.base[k]);
        if (!img.is_zero()) images.emplace(ot.dot[k], img);
    }
    return Derivation::from_images(ot.table, lifted.degree() - 1, images);
}

Derivation lie_derivative(const OddTangentAlgebra& ot, const Derivation& x) {
    return bracket(contraction(ot, x), ot.d());
}

CartanReport cartan_suite(const OddTangentAlgebra& ot, const Derivation& x,
                          const Derivation& y) {
    auto d = ot.d();
    auto lx = lift_base_derivation(ot, x);
    auto ly = lift_base_derivation(ot, y);
    auto ix = contraction(ot, x);
    auto iy = contraction(ot, y);
    auto Lx = lie_derivative(ot, x);
    auto Ly = lie_derivative(ot, y);
    auto xy = bracket(lx, ly);

    CartanReport report;
    auto check = [&](const std::string& label, const Derivation& lhs, const Derivation& rhs) {
        CartanReport::Line line;
        line.relation = label;
        auto diff = lhs - rhs;
        line.pass = diff.is_zero();
        if (!line.pass) {
            for (std::size_t i = 0; i < ot.table->size(); ++i)
                if (!diff.image(i).is_zero()) {
                    line.witness = ot.table->name(i) + " -> " + diff.image(i).str();
                    break;
                }
            report.all_pass = false;
        }
        report.lines.push_back(std::move(line));
    };

    auto zero_of = [&](int degree) { return Derivation::zero(ot.table, degree); };

    check("[d,d] = 0", bracket(d, d), zero_of(2));
    check("[i_X,i_Y] = 0", bracket(ix, iy), zero_of(ix.degree() + iy.degree()));
    check("[L_X,i_Y] = i_[X,Y]", bracket(Lx, iy), contraction(ot, xy));
    check("[L_X,L_Y] = L_[X,Y]", bracket(Lx, Ly), lie_derivative(ot, xy));
    check("[d,L_X] = 0", bracket(d, Lx), zero_of(1 + Lx.degree()));
    return report;
}

} // namespace qforms
