#include "qforms/models.hpp"

namespace qforms {

namespace {

void require_homological(const Derivation& d, const std::string& what) {
    if (!is_homological(d))
        throw EngineError(what + " failed to be homological");
}

} // namespace

WeilAlgebra weil(const StructureData& g) {
    if (g.base_size() != 0)
        throw ValidationError("the Weil algebra takes a Lie algebra over a point");
    if (!check_jacobi(g))
        throw JacobiFailure("structure constants violate the Jacobi identity");

    WeilAlgebra w;
    w.g = g;
    auto d_g = build_differential(g); // on Lambda[theta]
    w.ot = OddTangentAlgebra::doubled(d_g.table());
    w.d_k = w.ot.d();
    w.d_ce = lie_derivative(w.ot, transport(d_g, w.ot.table));
    w.d_w = w.d_ce + w.d_k;
    require_homological(w.d_ce, "lifted CE differential");
    require_homological(w.d_w, "Weil differential");

    const std::size_t n = g.frame_size();
    for (std::size_t i = 0; i < n; ++i) {
        w.contractions.push_back(Derivation::partial(w.ot.table, i));
        w.lie_ops.push_back(bracket(w.contractions.back(), w.d_w));
    }
    return w;
}

BRSTComplex brst(const StructureData& g, const std::vector<Derivation>& action,
                 const std::optional<TablePtr>& base_override) {
    if (g.base_size() != 0)
        throw ValidationError("brst expects a Lie algebra over a point");
    if (!check_jacobi(g))
        throw JacobiFailure("structure constants violate the Jacobi identity");
    const std::size_t n = g.frame_size();
    if (action.size() != n)
        throw NotAnAction("need one vector field per basis element");

    // All action fields live over one base polynomial ring.
    TablePtr base = base_override ? *base_override
                    : action.empty() ? GeneratorTable::make({})
                                     : action[0].table();
    for (const auto& rho : action) {
        if (!same_table(rho.table(), base)) throw MismatchedAlgebra();
        if (rho.degree() != 0)
            throw NotAnAction("action fields must have degree 0");
        for (std::size_t i = 0; i < base->size(); ++i)
            if (base->degree(i) != 0)
                throw NotAnAction("the action base must be an ordinary R^m");
    }

    // [rho_i, rho_j] = c_ij^k rho_k
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Derivation lhs = bracket(action[i], action[j]);
            Derivation rhs = Derivation::zero(base, 0);
            for (std::size_t k = 0; k < n; ++k) {
                Rat c = g.constant_structure(i, j, k);
                if (c != 0) rhs = rhs + action[k] * c;
            }
            if (!(lhs == rhs))
                throw NotAnAction("action fields fail the bracket relation at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        }

    BRSTComplex b;
    b.g = g;
    b.base_dim = base->size();
    b.fibre_dim = n;

    std::vector<GeneratorTable::Generator> gens;
    for (std::size_t i = 0; i < base->size(); ++i) gens.push_back({base->name(i), 0});
    for (std::size_t i = 0; i < base->size(); ++i) gens.push_back({base->name(i) + "'", 1});
    for (std::size_t a = 0; a < n; ++a)
        gens.push_back({g.frame_names[a], g.frame_degrees[a] + 1});
    for (std::size_t a = 0; a < n; ++a)
        gens.push_back({g.frame_names[a] + "'", g.frame_degrees[a] + 2});
    b.table = GeneratorTable::make(std::move(gens));

    const std::size_t m = base->size();
    std::vector<std::size_t> base_idx, dot_idx;
    for (std::size_t i = 0; i < m; ++i) { base_idx.push_back(i); dot_idx.push_back(m + i); }
    for (std::size_t a = 0; a < n; ++a) {
        base_idx.push_back(2 * m + a);
        dot_idx.push_back(2 * m + n + a);
    }
    b.ot = OddTangentAlgebra::over(b.table, base_idx, dot_idx);

    // d_M and d_K are the two halves of the de Rham operator of the layout
    {
        std::map<std::size_t, Element> dm, dk;
        for (std::size_t i = 0; i < m; ++i)
            dm.emplace(i, Element::generator(b.table, m + i));
        for (std::size_t a = 0; a < n; ++a)
            dk.emplace(2 * m + a, Element::generator(b.table, 2 * m + n + a));
        b.d_m = Derivation::from_images(b.table, 1, dm);
        b.d_k = Derivation::from_images(b.table, 1, dk);
    }

    // Weil differential, transported onto the theta-part
    b.d_w = transport(weil(g).d_w, b.table);

    // action-algebroid differential on the (x, theta) subalgebra
    {
        std::vector<std::vector<Element>> anchor;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<Element> row;
            for (std::size_t i = 0; i < m; ++i) row.push_back(action[a].image(i));
            anchor.push_back(std::move(row));
        }
        std::vector<std::string> base_names;
        for (std::size_t i = 0; i < m; ++i) base_names.push_back(base->name(i));
        std::vector<std::vector<std::vector<Element>>> c(
            n, std::vector<std::vector<Element>>(n, std::vector<Element>(n, Element(base))));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t bb = 0; bb < n; ++bb)
                for (std::size_t gg = 0; gg < n; ++gg)
                    c[a][bb][gg] = g.structure[a][bb][gg].is_zero()
                                       ? Element(base)
                                       : Element::constant(base, g.constant_structure(a, bb, gg));
        auto data = StructureData::make(base_names, g.frame_names, g.frame_degrees,
                                        anchor, c);
        b.d_a = transport(build_differential(data), b.table);
    }

    // lifted action fields and the assembled total differential
    Derivation total = b.d_m + b.d_w;
    for (std::size_t a = 0; a < n; ++a) {
        Derivation rho = transport(action[a], b.table);
        b.action.push_back(rho);
        Element theta = Element::generator(b.table, 2 * m + a);
        Element theta_dot = Element::generator(b.table, 2 * m + n + a);
        total = total + theta * lie_derivative(b.ot, rho);
        total = total - theta_dot * contraction(b.ot, rho);
    }
    b.total = total;
    require_homological(b.total, "BRST differential");

    // weight bookkeeping: w(x) = w(x') = 1, w(theta) = w(theta') = 0
    std::vector<long> weights(b.table->size(), 0);
    for (std::size_t i = 0; i < 2 * m; ++i) weights[i] = 1;
    bool preserved = true;
    for (std::size_t i = 0; i < b.table->size() && preserved; ++i)
        preserved = b.total.image(i).has_weight(weights, weights[i]);
    if (preserved) b.weights = weights;

    return b;
}

std::pair<Derivation, Derivation> mqk(const BRSTComplex& b, int cap) {
    require_homological(b.d_a, "algebroid differential");
    auto iota_da = contraction(b.ot, b.d_a);
    auto d = b.ot.d(); // = d_M + d_K
    auto twisted_d = conjugate(d, iota_da, cap);
    auto expected = d + lie_derivative(b.ot, b.d_a);
    return {twisted_d, expected};
}

CartanModel cartan_model(const BRSTComplex& b) {
    const std::size_t m = b.base_dim, n = b.fibre_dim;
    // horizontal table: x, x', theta'
    std::vector<GeneratorTable::Generator> gens;
    for (std::size_t i = 0; i < 2 * m; ++i)
        gens.push_back({b.table->name(i), b.table->degree(i)});
    for (std::size_t a = 0; a < n; ++a)
        gens.push_back({b.table->name(2 * m + n + a), b.table->degree(2 * m + n + a)});
    CartanModel cm;
    cm.table = GeneratorTable::make(std::move(gens));

    std::vector<std::size_t> base_idx, dot_idx;
    for (std::size_t i = 0; i < m; ++i) { base_idx.push_back(i); dot_idx.push_back(m + i); }
    auto hot = OddTangentAlgebra::over(cm.table, base_idx, dot_idx);

    auto lift_action = [&](std::size_t a) {
        std::map<std::size_t, Element> img;
        for (std::size_t i = 0; i < m; ++i) {
            Element e = transport(b.action[a].image(b.table->index_of(cm.table->name(i))),
                                  cm.table);
            if (!e.is_zero()) img.emplace(i, e);
        }
        return Derivation::from_images(cm.table, 0, img);
    };

    // d_C = d_M - theta'^a iota_{rho_a}
    Derivation d_c = hot.d();
    for (std::size_t a = 0; a < n; ++a) {
        Element theta_dot = Element::generator(cm.table, 2 * m + a);
        d_c = d_c - theta_dot * contraction(hot, lift_action(a));
    }
    cm.d_c = d_c;

    // L_i = -theta'^j c_ij^k d/dtheta'^k + L_{rho(v_i)}
    for (std::size_t i = 0; i < n; ++i) {
        Derivation rot = Derivation::zero(cm.table, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Rat c = b.g.constant_structure(i, j, k);
                if (c == 0) continue;
                Element theta_dot_j = Element::generator(cm.table, 2 * m + j);
                rot = rot - theta_dot_j * Derivation::partial(cm.table, 2 * m + k) * c;
            }
        cm.invariance.push_back(rot + lie_derivative(hot, lift_action(i)));
    }

    if (b.weights) {
        std::vector<long> w(cm.table->size(), 0);
        for (std::size_t i = 0; i < 2 * m; ++i) w[i] = 1;
        cm.weights = w;
    }
    return cm;
}

BialgebraDouble bialgebra_double(const std::vector<std::vector<std::vector<Rat>>>& c,
                                 const std::vector<std::vector<std::vector<Rat>>>& gamma) {
    const std::size_t n = c.size();
    if (gamma.size() != n)
        throw ValidationError("c and gamma must have the same dimension");

    // validate each half through its own CE differential
    auto check_half = [&](const std::vector<std::vector<std::vector<Rat>>>& k,
                          const std::string& what) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i + 1));
        auto s = StructureData::lie_algebra(names, std::vector<int>(n, 0), k);
        if (!check_jacobi(s))
            throw JacobiFailure(what + " violates the Jacobi identity");
    };
    check_half(c, "the bracket of g");
    check_half(gamma, "the cobracket");

    BialgebraDouble out;
    std::vector<GeneratorTable::Generator> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back({"v" + std::to_string(i + 1), 1});
    for (std::size_t i = 0; i < n; ++i) gens.push_back({"th" + std::to_string(i + 1), 1});
    out.table = GeneratorTable::make(std::move(gens));
    auto v = [&](std::size_t i) { return Element::generator(out.table, i); };
    auto th = [&](std::size_t i) { return Element::generator(out.table, n + i); };

    // d = theta^i c_ij^k v_k d/dv_j - 1/2 theta^i theta^j c_ij^k d/dtheta^k
    {
        std::map<std::size_t, Element> img;
        for (std::size_t j = 0; j < n; ++j) {
            Element e(out.table);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    if (c[i][j][k] != 0) e = e + th(i) * v(k) * c[i][j][k];
            if (!e.is_zero()) img.emplace(j, e);
        }
        for (std::size_t k = 0; k < n; ++k) {
            Element e(out.table);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (c[i][j][k] != 0) e = e - th(i) * th(j) * (c[i][j][k] / 2);
            if (!e.is_zero()) img.emplace(n + k, e);
        }
        out.d = Derivation::from_images(out.table, 1, img);
    }

    // Xi = v_i gamma^ij_k theta^k d/dtheta^j - 1/2 v_i v_j gamma^ij_k d/dv_k
    {
        std::map<std::size_t, Element> img;
        for (std::size_t j = 0; j < n; ++j) {
            Element e(out.table);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    if (gamma[i][j][k] != 0) e = e + v(i) * th(k) * gamma[i][j][k];
            if (!e.is_zero()) img.emplace(n + j, e);
        }
        for (std::size_t k = 0; k < n; ++k) {
            Element e(out.table);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (gamma[i][j][k] != 0) e = e - v(i) * v(j) * (gamma[i][j][k] / 2);
            if (!e.is_zero()) img.emplace(k, e);
        }
        out.xi = Derivation::from_images(out.table, 1, img);
    }

    require_homological(out.d, "CE differential of g");
    require_homological(out.xi, "CE differential of g*");

    auto comm = bracket(out.d, out.xi);
    out.compatible = comm.is_zero();
    if (!out.compatible) {
        for (std::size_t i = 0; i < out.table->size(); ++i)
            if (!comm.image(i).is_zero()) {
                out.witness = "[d,Xi](" + out.table->name(i) + ") = " + comm.image(i).str();
                break;
            }
    }
    out.total = out.d + out.xi;
    out.total_homological = is_homological(out.total);
    return out;
}

GinzburgComplex ginzburg(const StructureData& algebroid, const StructureData& g,
                         const std::vector<Section>& premoment) {
    if (g.base_size() != 0)
        throw ValidationError("ginzburg expects a Lie algebra over a point");
    if (!check_jacobi(g)) throw JacobiFailure("g violates the Jacobi identity");
    if (!check_jacobi(algebroid))
        throw JacobiFailure("the algebroid violates the Jacobi identity");
    const std::size_t n = g.frame_size();
    if (premoment.size() != n)
        throw NotAnAction("need one section per basis element of g");

    // pre-moment must be a Lie algebra homomorphism into sections
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Section lhs = section_bracket(premoment[a], premoment[b], algebroid);
            for (std::size_t e = 0; e < algebroid.frame_size(); ++e) {
                Element rhs(algebroid.base_table);
                for (std::size_t k = 0; k < n; ++k) {
                    Rat c = g.constant_structure(a, b, k);
                    if (c != 0) rhs = rhs + premoment[k].coeffs[e] * c;
                }
                if (!(lhs.coeffs[e] == rhs))
                    throw NotAnAction("pre-moment fails the bracket relation at (" +
                                      std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }

    GinzburgComplex z;
    z.algebroid = algebroid;
    z.g = g;

    const std::size_t m = algebroid.base_size();
    const std::size_t r = algebroid.frame_size();
    std::vector<GeneratorTable::Generator> gens;
    auto atab = algebroid.cochain_table();
    for (std::size_t i = 0; i < atab->size(); ++i)
        gens.push_back({atab->name(i), atab->degree(i)});
    for (std::size_t a = 0; a < n; ++a)
        gens.push_back({g.frame_names[a], g.frame_degrees[a] + 1});
    for (std::size_t a = 0; a < n; ++a)
        gens.push_back({g.frame_names[a] + "'", g.frame_degrees[a] + 2});
    z.table = GeneratorTable::make(std::move(gens));

    auto theta = [&](std::size_t a) { return Element::generator(z.table, m + r + a); };
    auto theta_dot = [&](std::size_t a) {
        return Element::generator(z.table, m + r + n + a);
    };

    // Koszul pairing on the theta-part
    std::vector<std::size_t> tbase, tdot;
    for (std::size_t a = 0; a < n; ++a) {
        tbase.push_back(m + r + a);
        tdot.push_back(m + r + n + a);
    }
    auto ot_g = OddTangentAlgebra::over(z.table, tbase, tdot);
    z.d_k = ot_g.d();

    z.d_a = transport(build_differential(algebroid), z.table);

    // CE part of g acting on theta, theta'
    Derivation d_tg = lie_derivative(
        ot_g, transport(build_differential(g), z.table));

    std::vector<Derivation> iotas, lies;
    for (std::size_t a = 0; a < n; ++a) {
        iotas.push_back(transport(section_contraction(premoment[a], algebroid),
                                             z.table));
        lies.push_back(bracket(iotas.back(), z.d_a));
    }

    Derivation cob = d_tg;
    for (std::size_t a = 0; a < n; ++a)
        cob = cob + theta(a) * lies[a] - theta_dot(a) * iotas[a];
    z.coboundary = cob;
    z.morphic = z.d_a + z.d_k;
    z.total = z.coboundary + z.morphic;
    require_homological(z.coboundary, "equivariant algebroid differential");
    require_homological(z.morphic, "morphic field d_A + d_K");
    require_homological(z.total, "total differential");

    // Q = theta^b iota_b - 1/2 theta^a theta^b c_ab^e d/dtheta'^e
    Derivation q = Derivation::zero(z.table, 0);
    for (std::size_t a = 0; a < n; ++a) q = q + theta(a) * iotas[a];
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t e = 0; e < n; ++e) {
                Rat c = g.constant_structure(a, b, e);
                if (c != 0)
                    q = q - theta(a) * theta(b) *
                            Derivation::partial(z.table, m + r + n + e) * (c / 2);
            }
    z.mqk_twist = q;

    for (std::size_t a = 0; a < n; ++a)
        z.contractions.push_back(Derivation::partial(z.table, m + r + a));

    // horizontal table x, lambda, theta' with d_C and the invariance family
    {
        std::vector<GeneratorTable::Generator> hgens;
        for (std::size_t i = 0; i < atab->size(); ++i)
            hgens.push_back({atab->name(i), atab->degree(i)});
        for (std::size_t a = 0; a < n; ++a)
            hgens.push_back({g.frame_names[a] + "'", g.frame_degrees[a] + 2});
        z.horizontal_table = GeneratorTable::make(std::move(hgens));

        auto da_h = transport(build_differential(algebroid), z.horizontal_table);
        Derivation d_c = da_h;
        for (std::size_t a = 0; a < n; ++a) {
            auto iota_h = transport(
                section_contraction(premoment[a], algebroid), z.horizontal_table);
            d_c = d_c - Element::generator(z.horizontal_table, m + r + a) * iota_h;
        }
        z.d_c = d_c;

        for (std::size_t i = 0; i < n; ++i) {
            auto iota_h = transport(
                section_contraction(premoment[i], algebroid), z.horizontal_table);
            Derivation L = bracket(iota_h, da_h);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Rat c = g.constant_structure(i, j, k);
                    if (c == 0) continue;
                    L = L - Element::generator(z.horizontal_table, m + r + j) *
                            Derivation::partial(z.horizontal_table, m + r + k) * c;
                }
            z.invariance.push_back(L);
        }
    }

    return z;
}

Derivation twisted(const StructureData& s, const Derivation& xi, const Rat& gamma) {
    auto d = build_differential(s);
    if (!same_table(xi.table(), d.table())) throw MismatchedAlgebra();
    if (xi.degree() != 1 || !is_homological(xi))
        throw NotMorphic("the twist must be a homological degree-1 field");
    if (!bracket(xi, d).is_zero())
        throw NotMorphic("the twist does not commute with the algebroid differential");
    auto out = d + xi * gamma;
    require_homological(out, "twisted differential");
    return out;
}

} // namespace qforms
