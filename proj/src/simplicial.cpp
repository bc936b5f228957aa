#include "qforms/simplicial.hpp"

#include "qforms/cohomology.hpp"

#include <algorithm>

namespace qforms {

// ---------------------------------------------------------------------------
// Finite groupoids
// ---------------------------------------------------------------------------

std::size_t FiniteGroupoid::compose(std::size_t a, std::size_t b) const {
    auto it = mult.find({a, b});
    if (it == mult.end()) throw EngineError("arrows are not composable");
    return it->second;
}

void FiniteGroupoid::validate() const {
    const std::size_t k = n_arrows();
    if (src.size() != k || tgt.size() != k || inverse.size() != k)
        throw ValidationError("arrow table sizes disagree");
    if (identity.size() != n_objects)
        throw ValidationError("need one identity arrow per object");

    for (std::size_t o = 0; o < n_objects; ++o) {
        std::size_t e = identity[o];
        if (e >= k || src[e] != o || tgt[e] != o)
            throw ValidationError("identity arrow of object " + std::to_string(o) +
                                  " must be an endo-arrow");
    }
    for (std::size_t a = 0; a < k; ++a) {
        if (src[a] >= n_objects || tgt[a] >= n_objects)
            throw ValidationError("arrow endpoints out of range");
        if (inverse[a] >= k || src[inverse[a]] != tgt[a] || tgt[inverse[a]] != src[a])
            throw ValidationError("inverse of arrow " + std::to_string(a) +
                                  " has wrong endpoints");
    }
    // multiplication totality and endpoints
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (!composable(a, b)) {
                if (mult.count({a, b}))
                    throw ValidationError("multiplication defined on a non-composable pair");
                continue;
            }
            auto it = mult.find({a, b});
            if (it == mult.end())
                throw ValidationError("multiplication missing on a composable pair");
            std::size_t c = it->second;
            if (c >= k || tgt[c] != tgt[a] || src[c] != src[b])
                throw ValidationError("product arrow has wrong endpoints");
        }
    // identity laws
    for (std::size_t a = 0; a < k; ++a) {
        if (compose(identity[tgt[a]], a) != a || compose(a, identity[src[a]]) != a)
            throw ValidationError("identity law fails at arrow " + std::to_string(a));
        if (compose(a, inverse[a]) != identity[tgt[a]] ||
            compose(inverse[a], a) != identity[src[a]])
            throw ValidationError("inverse law fails at arrow " + std::to_string(a));
    }
    // associativity on all composable triples
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (!composable(a, b)) continue;
            for (std::size_t c = 0; c < k; ++c) {
                if (!composable(b, c)) continue;
                if (compose(compose(a, b), c) != compose(a, compose(b, c)))
                    throw ValidationError("associativity fails");
            }
        }
}

std::vector<std::vector<std::size_t>> FiniteGroupoid::tuples(int q) const {
    std::vector<std::vector<std::size_t>> out;
    if (q < 0) throw IndexOutOfRange("negative nerve level");
    if (q == 0) {
        for (std::size_t o = 0; o < n_objects; ++o) out.push_back({o});
        return out;
    }
    std::vector<std::size_t> acc;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(acc.size()) == q) {
            out.push_back(acc);
            return;
        }
        for (std::size_t a = 0; a < n_arrows(); ++a) {
            if (!acc.empty() && src[acc.back()] != tgt[a]) continue;
            acc.push_back(a);
            self(self);
            acc.pop_back();
        }
    };
    rec(rec);
    return out;
}

FiniteGroupoid FiniteGroupoid::cyclic_group(std::size_t n) {
    FiniteGroupoid g;
    g.n_objects = 1;
    g.src.assign(n, 0);
    g.tgt.assign(n, 0);
    g.identity = {0};
    for (std::size_t a = 0; a < n; ++a) {
        g.inverse.push_back((n - a) % n);
        for (std::size_t b = 0; b < n; ++b) g.mult[{a, b}] = (a + b) % n;
    }
    return g;
}

namespace {

std::map<std::vector<std::size_t>, std::size_t> tuple_index(
    const std::vector<std::vector<std::size_t>>& tuples) {
    std::map<std::vector<std::size_t>, std::size_t> idx;
    for (std::size_t i = 0; i < tuples.size(); ++i) idx.emplace(tuples[i], i);
    return idx;
}

} // namespace

FiniteCochain face_pullback(const FiniteGroupoid& g, int i, int q, const FiniteCochain& f) {
    if (f.level != q - 1) throw EngineError("face pullback level mismatch");
    if (i < 0 || i > q) throw IndexOutOfRange("face index out of range");
    auto dom = g.tuples(q);
    auto idx = tuple_index(g.tuples(q - 1));

    FiniteCochain out;
    out.level = q;
    out.values.resize(dom.size());
    for (std::size_t t = 0; t < dom.size(); ++t) {
        const auto& tup = dom[t];
        std::vector<std::size_t> image;
        if (q == 1) {
            // sigma_0 = s, sigma_1 = t
            image = {i == 0 ? g.src[tup[0]] : g.tgt[tup[0]]};
        } else if (i == 0) {
            image.assign(tup.begin() + 1, tup.end());
        } else if (i == q) {
            image.assign(tup.begin(), tup.end() - 1);
        } else {
            image.assign(tup.begin(), tup.end());
            image[i - 1] = g.compose(tup[i - 1], tup[i]);
            image.erase(image.begin() + i);
        }
        out.values[t] = f.values.at(idx.at(image));
    }
    return out;
}

FiniteCochain degeneracy_pullback(const FiniteGroupoid& g, int i, int q,
                                  const FiniteCochain& f) {
    // Delta_i^q: G^(q) -> G^(q+1) inserts an identity after slot i.
    if (f.level != q + 1) throw EngineError("degeneracy pullback level mismatch");
    if (i < 0 || i > q) throw IndexOutOfRange("degeneracy index out of range");
    auto dom = g.tuples(q);
    auto idx = tuple_index(g.tuples(q + 1));

    FiniteCochain out;
    out.level = q;
    out.values.resize(dom.size());
    for (std::size_t t = 0; t < dom.size(); ++t) {
        const auto& tup = dom[t];
        std::vector<std::size_t> image;
        if (q == 0) {
            image = {g.identity[tup[0]]};
        } else {
            image.assign(tup.begin(), tup.end());
            std::size_t obj = (i == q) ? g.src[tup[q - 1]] : g.tgt[tup[i]];
            image.insert(image.begin() + i, g.identity[obj]);
        }
        out.values[t] = f.values.at(idx.at(image));
    }
    return out;
}

FiniteCochain delta(const FiniteGroupoid& g, const FiniteCochain& f) {
    FiniteCochain out;
    out.level = f.level + 1;
    out.values.assign(g.tuples(out.level).size(), Rat(0));
    for (int i = 0; i <= out.level; ++i) {
        auto part = face_pullback(g, i, out.level, f);
        for (std::size_t t = 0; t < out.values.size(); ++t)
            out.values[t] += (i % 2 == 0 ? part.values[t] : -part.values[t]);
    }
    return out;
}

FiniteCochain cup(const FiniteGroupoid& g, const FiniteCochain& f, const FiniteCochain& h) {
    // (f * h)(g_1..g_{q+q'}) = f(g_1..g_q) h(g_{q+1}..g_{q+q'})
    const int q = f.level, qp = h.level;
    if (f.values.size() != g.tuples(q).size() || h.values.size() != g.tuples(qp).size())
        throw MismatchedGroupoid();
    auto dom = g.tuples(q + qp);
    auto fidx = tuple_index(g.tuples(q));
    auto hidx = tuple_index(g.tuples(qp));

    FiniteCochain out;
    out.level = q + qp;
    out.values.resize(dom.size());
    for (std::size_t t = 0; t < dom.size(); ++t) {
        const auto& tup = dom[t];
        Rat fv, hv;
        if (q == 0) {
            std::size_t obj = qp == 0 ? tup[0] : g.tgt[tup[0]];
            fv = f.values.at(fidx.at({obj}));
        } else {
            fv = f.values.at(fidx.at(std::vector<std::size_t>(tup.begin(), tup.begin() + q)));
        }
        if (qp == 0) {
            std::size_t obj = q == 0 ? tup[0] : g.src[tup[q - 1]];
            hv = h.values.at(hidx.at({obj}));
        } else {
            hv = h.values.at(hidx.at(std::vector<std::size_t>(tup.begin() + q, tup.end())));
        }
        out.values[t] = fv * hv;
    }
    return out;
}

bool normalize_check(const FiniteGroupoid& g, const FiniteCochain& f) {
    if (f.level == 0) return true;
    for (int i = 0; i < f.level; ++i) {
        auto pulled = degeneracy_pullback(g, i, f.level - 1, f);
        for (const auto& v : pulled.values)
            if (v != 0) return false;
    }
    return true;
}

std::vector<long> finite_normalized_betti(const FiniteGroupoid& g, int q_max) {
    // Basis of normalized cochains at level q: tuples with no identity arrow.
    auto normalized_tuples = [&](int q) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& tup : g.tuples(q)) {
            bool ok = true;
            if (q > 0)
                for (std::size_t a : tup)
                    for (std::size_t o = 0; o < g.n_objects; ++o)
                        if (g.identity[o] == a) ok = false;
            if (ok) out.push_back(tup);
        }
        return out;
    };

    std::vector<long> ranks(q_max + 2, 0);
    std::vector<long> dims(q_max + 1, 0);
    for (int q = 0; q <= q_max; ++q) {
        auto dom = normalized_tuples(q);
        auto tgt = normalized_tuples(q + 1);
        dims[q] = static_cast<long>(dom.size());
        auto tgt_idx = tuple_index(tgt);

        Mat m(static_cast<long>(tgt.size()), static_cast<long>(dom.size()));
        m.setZero();
        // delta of the indicator cochain of each tuple
        auto full_idx = tuple_index(g.tuples(q));
        for (std::size_t col = 0; col < dom.size(); ++col) {
            FiniteCochain ind;
            ind.level = q;
            ind.values.assign(g.tuples(q).size(), Rat(0));
            ind.values[full_idx.at(dom[col])] = 1;
            auto df = delta(g, ind);
            auto full_up = g.tuples(q + 1);
            for (std::size_t t = 0; t < full_up.size(); ++t) {
                if (df.values[t] == 0) continue;
                auto it = tgt_idx.find(full_up[t]);
                if (it != tgt_idx.end()) m(static_cast<long>(it->second),
                                           static_cast<long>(col)) = df.values[t];
            }
        }
        ranks[q + 1] = rank_of(m);
    }

    std::vector<long> h;
    for (int q = 0; q <= q_max; ++q)
        h.push_back(dims[q] - ranks[q + 1] - ranks[q]);
    return h;
}

// ---------------------------------------------------------------------------
// Polynomial action groupoids
// ---------------------------------------------------------------------------

namespace {

TablePtr degree0_table(const std::vector<std::string>& names) {
    std::vector<GeneratorTable::Generator> gens;
    for (const auto& n : names) gens.push_back({n, 0});
    return GeneratorTable::make(gens);
}

} // namespace

PolyActionGroupoid PolyActionGroupoid::make(std::vector<std::string> base,
                                            std::vector<std::string> group,
                                            std::vector<Element> mu,
                                            std::vector<Element> act) {
    PolyActionGroupoid g;
    g.base_names = std::move(base);
    g.group_names = std::move(group);

    std::vector<std::string> mu_names;
    for (const auto& n : g.group_names) mu_names.push_back(n);
    for (const auto& n : g.group_names) mu_names.push_back(n + "~"); // second slot
    g.mu_table = degree0_table(mu_names);

    std::vector<std::string> act_names = g.base_names;
    for (const auto& n : g.group_names) act_names.push_back(n);
    g.act_table = degree0_table(act_names);

    g.mu = std::move(mu);
    g.act = std::move(act);
    for (auto& c : g.mu)
        if (!same_table(c.table(), g.mu_table)) throw MismatchedAlgebra();
    for (auto& c : g.act)
        if (!same_table(c.table(), g.act_table)) throw MismatchedAlgebra();
    g.validate();
    return g;
}

TablePtr PolyActionGroupoid::level_table(int q) const {
    if (q < 0) throw IndexOutOfRange("negative nerve level");
    std::vector<std::string> names = base_names;
    for (int k = 1; k <= q; ++k)
        for (const auto& n : group_names)
            names.push_back(n + "_" + std::to_string(k));
    return degree0_table(names);
}

namespace {

// Substitution images sending the mu-table slots to the given coordinate
// blocks of a target table.
std::map<std::size_t, Element> mu_images(const PolyActionGroupoid& g,
                                         const TablePtr& target,
                                         std::size_t slot_a_start,
                                         std::size_t slot_b_start) {
    std::map<std::size_t, Element> images;
    for (std::size_t a = 0; a < g.group_dim(); ++a) {
        images.emplace(a, Element::generator(target, slot_a_start + a));
        images.emplace(g.group_dim() + a, Element::generator(target, slot_b_start + a));
    }
    return images;
}

std::map<std::size_t, Element> act_images(const PolyActionGroupoid& g,
                                          const TablePtr& target,
                                          const std::vector<Element>& base_images,
                                          std::size_t slot_start) {
    std::map<std::size_t, Element> images;
    for (std::size_t i = 0; i < g.base_dim(); ++i) images.emplace(i, base_images[i]);
    for (std::size_t a = 0; a < g.group_dim(); ++a)
        images.emplace(g.base_dim() + a, Element::generator(target, slot_start + a));
    return images;
}

} // namespace

void PolyActionGroupoid::validate() const {
    const std::size_t n = group_dim(), m = base_dim();
    if (mu.size() != n) throw ValidationError("mu needs one component per group coordinate");
    if (act.size() != m) throw ValidationError("action needs one component per base coordinate");

    // mu(g, 0) = g and mu(0, h) = h
    for (std::size_t a = 0; a < n; ++a) {
        std::map<std::size_t, Element> right0, left0;
        for (std::size_t b = 0; b < n; ++b) {
            right0.emplace(n + b, Element::zero(mu_table));
            left0.emplace(b, Element::zero(mu_table));
        }
        if (substitute(mu[a], right0) != Element::generator(mu_table, a))
            throw ValidationError("mu(g, 0) != g in component " + group_names[a]);
        auto lhs = substitute(mu[a], left0);
        // the remaining variable is the second slot h^a
        if (lhs != Element::generator(mu_table, n + a))
            throw ValidationError("mu(0, h) != h in component " + group_names[a]);
    }

    // associativity over a three-slot ring
    {
        std::vector<std::string> names;
        for (int k = 0; k < 3; ++k)
            for (const auto& nm : group_names)
                names.push_back(nm + "_" + std::to_string(k + 1));
        auto t3 = degree0_table(names);
        for (std::size_t a = 0; a < n; ++a) {
            // mu(mu(g1,g2), g3)
            std::map<std::size_t, Element> first;
            for (std::size_t b = 0; b < n; ++b) {
                first.emplace(b, substitute(mu[b], t3, mu_images(*this, t3, 0, n)));
                first.emplace(n + b, Element::generator(t3, 2 * n + b));
            }
            auto lhs = substitute(mu[a], t3, first);
            // mu(g1, mu(g2,g3))
            std::map<std::size_t, Element> second;
            for (std::size_t b = 0; b < n; ++b) {
                second.emplace(b, Element::generator(t3, b));
                second.emplace(n + b, substitute(mu[b], t3, mu_images(*this, t3, n, 2 * n)));
            }
            auto rhs = substitute(mu[a], t3, second);
            if (lhs != rhs)
                throw ValidationError("group law is not associative in component " +
                                      group_names[a]);
        }
    }

    // s(x, 0) = x
    for (std::size_t i = 0; i < m; ++i) {
        std::map<std::size_t, Element> at0;
        for (std::size_t b = 0; b < n; ++b)
            at0.emplace(m + b, Element::zero(act_table));
        if (substitute(act[i], at0) != Element::generator(act_table, i))
            throw ValidationError("s(x, 0) != x in component " + base_names[i]);
    }

    // s(s(x,g), h) = s(x, mu(g,h)) over the ring (x, g, h)
    {
        auto t2 = level_table(2); // x, g_1, g_2
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Element> inner;
            for (std::size_t j = 0; j < m; ++j)
                inner.push_back(substitute(
                    act[j], t2, act_images(*this, t2, [&] {
                        std::vector<Element> xs;
                        for (std::size_t k = 0; k < m; ++k)
                            xs.push_back(Element::generator(t2, k));
                        return xs;
                    }(), m)));
            auto lhs = substitute(act[i], t2, act_images(*this, t2, inner, m + n));

            std::vector<Element> composed;
            for (std::size_t b = 0; b < n; ++b)
                composed.push_back(substitute(mu[b], t2, mu_images(*this, t2, m, m + n)));
            std::map<std::size_t, Element> rhs_map;
            for (std::size_t k = 0; k < m; ++k)
                rhs_map.emplace(k, Element::generator(t2, k));
            for (std::size_t b = 0; b < n; ++b) rhs_map.emplace(m + b, composed[b]);
            auto rhs = substitute(act[i], t2, rhs_map);
            if (lhs != rhs)
                throw ValidationError("action does not respect the group law in component " +
                                      base_names[i]);
        }
    }

    // closure of the left-invariant frame
    structure_constants();
}

std::vector<std::vector<Element>> PolyActionGroupoid::frame() const {
    const std::size_t n = group_dim();
    auto group_ring = degree0_table(group_names);
    std::vector<std::vector<Element>> j(n, std::vector<Element>(n, Element(group_ring)));
    for (std::size_t a = 0; a < n; ++a) {
        auto dd = Derivation::partial(mu_table, n + a); // d/dh^a
        for (std::size_t i = 0; i < n; ++i) {
            Element der = dd(mu[i]);
            // substitute h -> 0, g -> group-ring coordinates
            std::map<std::size_t, Element> sub;
            for (std::size_t b = 0; b < n; ++b) {
                sub.emplace(b, Element::generator(group_ring, b));
                sub.emplace(n + b, Element::zero(group_ring));
            }
            j[a][i] = substitute(der, group_ring, sub);
        }
    }
    return j;
}

std::vector<std::vector<std::vector<Rat>>> PolyActionGroupoid::structure_constants() const {
    const std::size_t n = group_dim();
    auto group_ring = degree0_table(group_names);
    auto j = frame();
    std::vector<Derivation> fields;
    for (std::size_t a = 0; a < n; ++a) {
        std::map<std::size_t, Element> img;
        for (std::size_t i = 0; i < n; ++i) img.emplace(i, j[a][i]);
        fields.push_back(Derivation::from_images(group_ring, 0, img));
    }

    std::vector<std::vector<std::vector<Rat>>> c(
        n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto comm = bracket(fields[a], fields[b]);
            // evaluate at g = 0 where the frame is the coordinate frame
            for (std::size_t e = 0; e < n; ++e)
                c[a][b][e] = comm.image(e).constant_term();
            // verify closure: [X_a, X_b] = c_ab^e X_e as polynomial fields
            Derivation expect = Derivation::zero(group_ring, 0);
            for (std::size_t e = 0; e < n; ++e)
                if (c[a][b][e] != 0) expect = expect + fields[e] * c[a][b][e];
            if (!(comm == expect))
                throw ValidationError(
                    "left-invariant frame does not close with constant coefficients");
        }
    return c;
}

std::vector<std::vector<Element>> PolyActionGroupoid::anchor() const {
    const std::size_t n = group_dim(), m = base_dim();
    auto base_ring = degree0_table(base_names);
    std::vector<std::vector<Element>> rho(n, std::vector<Element>(m, Element(base_ring)));
    for (std::size_t a = 0; a < n; ++a) {
        auto dd = Derivation::partial(act_table, m + a); // d/dg^a
        for (std::size_t i = 0; i < m; ++i) {
            Element der = dd(act[i]);
            std::map<std::size_t, Element> sub;
            for (std::size_t k = 0; k < m; ++k)
                sub.emplace(k, Element::generator(base_ring, k));
            for (std::size_t b = 0; b < n; ++b)
                sub.emplace(m + b, Element::zero(base_ring));
            rho[a][i] = substitute(der, base_ring, sub);
        }
    }
    return rho;
}

StructureData PolyActionGroupoid::algebroid() const {
    const std::size_t n = group_dim();
    auto c = structure_constants();
    auto rho = anchor();
    auto base_ring = degree0_table(base_names);
    std::vector<std::vector<std::vector<Element>>> ce(
        n, std::vector<std::vector<Element>>(n, std::vector<Element>(n, Element(base_ring))));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t e = 0; e < n; ++e)
                if (c[a][b][e] != 0) ce[a][b][e] = Element::constant(base_ring, c[a][b][e]);
    return StructureData::make(base_names, group_names, std::vector<int>(n, 0), rho, ce);
}

PolyCochain face_pullback(const PolyActionGroupoid& g, int i, int q, const PolyCochain& f) {
    if (f.level != q - 1) throw EngineError("face pullback level mismatch");
    if (i < 0 || i > q) throw IndexOutOfRange("face index out of range");
    const std::size_t m = g.base_dim(), n = g.group_dim();
    auto target = g.level_table(q);

    std::map<std::size_t, Element> sub;
    if (i == 0) {
        // x -> s(x, g_1), slot k -> slot k+1
        for (std::size_t ii = 0; ii < m; ++ii) {
            std::map<std::size_t, Element> act_sub;
            for (std::size_t k = 0; k < m; ++k)
                act_sub.emplace(k, Element::generator(target, k));
            for (std::size_t b = 0; b < n; ++b)
                act_sub.emplace(m + b, Element::generator(target, m + b));
            sub.emplace(ii, substitute(g.act[ii], target, act_sub));
        }
        for (int k = 1; k <= q - 1; ++k)
            for (std::size_t b = 0; b < n; ++b)
                sub.emplace(m + (k - 1) * n + b,
                            Element::generator(target, m + static_cast<std::size_t>(k) * n + b));
    } else if (i == q) {
        // plain inclusion: slots keep their names
        for (std::size_t ii = 0; ii < m; ++ii)
            sub.emplace(ii, Element::generator(target, ii));
        for (int k = 1; k <= q - 1; ++k)
            for (std::size_t b = 0; b < n; ++b)
                sub.emplace(m + (k - 1) * n + b,
                            Element::generator(target, m + (static_cast<std::size_t>(k) - 1) * n + b));
    } else {
        // slot i -> mu(g_i, g_{i+1}); later slots shift up
        for (std::size_t ii = 0; ii < m; ++ii)
            sub.emplace(ii, Element::generator(target, ii));
        for (int k = 1; k <= q - 1; ++k)
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t src_idx = m + (static_cast<std::size_t>(k) - 1) * n + b;
                if (k < i) {
                    sub.emplace(src_idx, Element::generator(target, src_idx));
                } else if (k == i) {
                    sub.emplace(src_idx,
                                substitute(g.mu[b], target,
                                           mu_images(g, target,
                                                     m + (static_cast<std::size_t>(i) - 1) * n,
                                                     m + static_cast<std::size_t>(i) * n)));
                } else {
                    sub.emplace(src_idx,
                                Element::generator(target, m + static_cast<std::size_t>(k) * n + b));
                }
            }
    }
    return {q, substitute(f.value, target, sub)};
}

PolyCochain degeneracy_pullback(const PolyActionGroupoid& g, int i, int q,
                                const PolyCochain& f) {
    // Delta_i^q : G^(q) -> G^(q+1); the pullback sets slot i+1 to the
    // identity (0) and shifts the later slots down.
    if (f.level != q + 1) throw EngineError("degeneracy pullback level mismatch");
    if (i < 0 || i > q) throw IndexOutOfRange("degeneracy index out of range");
    const std::size_t m = g.base_dim(), n = g.group_dim();
    auto target = g.level_table(q);

    std::map<std::size_t, Element> sub;
    for (std::size_t ii = 0; ii < m; ++ii)
        sub.emplace(ii, Element::generator(target, ii));
    for (int k = 1; k <= q + 1; ++k)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t src_idx = m + (static_cast<std::size_t>(k) - 1) * n + b;
            if (k == i + 1)
                sub.emplace(src_idx, Element::zero(target));
            else if (k < i + 1)
                sub.emplace(src_idx, Element::generator(target, src_idx));
            else
                sub.emplace(src_idx,
                            Element::generator(target, m + (static_cast<std::size_t>(k) - 2) * n + b));
        }
    return {q, substitute(f.value, target, sub)};
}

PolyCochain delta(const PolyActionGroupoid& g, const PolyCochain& f) {
    const int q = f.level + 1;
    Element acc(g.level_table(q));
    for (int i = 0; i <= q; ++i) {
        auto part = face_pullback(g, i, q, f);
        acc = (i % 2 == 0) ? acc + part.value : acc - part.value;
    }
    return {q, acc};
}

PolyCochain cup(const PolyActionGroupoid& g, const PolyCochain& f, const PolyCochain& h) {
    const int q = f.level, qp = h.level;
    const std::size_t m = g.base_dim(), n = g.group_dim();
    if (!same_table(f.value.table(), g.level_table(q)) ||
        !same_table(h.value.table(), g.level_table(qp)))
        throw MismatchedGroupoid();
    auto target = g.level_table(q + qp);

    // f part: identity inclusion on x and the first q slots
    std::map<std::size_t, Element> fsub;
    for (std::size_t ii = 0; ii < m + static_cast<std::size_t>(q) * n; ++ii)
        fsub.emplace(ii, Element::generator(target, ii));
    Element fpart = substitute(f.value, target, fsub);

    // h part: x -> x . (g_1 ... g_q), slot j -> slot q + j
    std::vector<Element> moved;
    for (std::size_t ii = 0; ii < m; ++ii)
        moved.push_back(Element::generator(target, ii));
    for (int k = 1; k <= q; ++k) {
        std::vector<Element> next;
        for (std::size_t ii = 0; ii < m; ++ii) {
            std::map<std::size_t, Element> s;
            for (std::size_t jj = 0; jj < m; ++jj) s.emplace(jj, moved[jj]);
            for (std::size_t b = 0; b < n; ++b)
                s.emplace(m + b,
                          Element::generator(target, m + (static_cast<std::size_t>(k) - 1) * n + b));
            next.push_back(substitute(g.act[ii], target, s));
        }
        moved = std::move(next);
    }
    std::map<std::size_t, Element> hsub;
    for (std::size_t ii = 0; ii < m; ++ii) hsub.emplace(ii, moved[ii]);
    for (int k = 1; k <= qp; ++k)
        for (std::size_t b = 0; b < n; ++b)
            hsub.emplace(m + (static_cast<std::size_t>(k) - 1) * n + b,
                         Element::generator(target,
                                            m + (static_cast<std::size_t>(q + k) - 1) * n + b));
    Element hpart = substitute(h.value, target, hsub);

    return {q + qp, fpart * hpart};
}

bool normalize_check(const PolyActionGroupoid& g, const PolyCochain& f) {
    if (f.level == 0) return true;
    for (int i = 0; i < f.level; ++i) {
        auto pulled = degeneracy_pullback(g, i, f.level - 1, f);
        if (!pulled.value.is_zero()) return false;
    }
    return true;
}

Element van_est(const PolyActionGroupoid& g, const PolyCochain& f) {
    if (!normalize_check(g, f))
        throw NotNormalized("van Est requires a normalized cochain");
    const std::size_t m = g.base_dim(), n = g.group_dim();
    const int q = f.level;

    auto data = g.algebroid();
    auto out_table = data.cochain_table(); // x then lambda (degree 1)
    Element out(out_table);
    if (q == 0) {
        // level 0: the cochain is already a function on M
        std::map<std::size_t, Element> sub;
        for (std::size_t i = 0; i < m; ++i)
            sub.emplace(i, Element::generator(out_table, i));
        return substitute(f.value, out_table, sub);
    }

    auto j = g.frame();

    // X^k-operator: differentiate along frame element a in the last slot of
    // G^(k), then set that slot to the identity.
    auto apply_slot_op = [&](const Element& val, int k, std::size_t a) {
        auto tk = g.level_table(k);
        auto tk1 = g.level_table(k - 1);
        std::size_t slot = m + (static_cast<std::size_t>(k) - 1) * n;
        Element der(tk);
        for (std::size_t i = 0; i < n; ++i) {
            // J_a^i(g_k) d/dg_k^i
            std::map<std::size_t, Element> jmap;
            for (std::size_t b = 0; b < n; ++b)
                jmap.emplace(b, Element::generator(tk, slot + b));
            Element coeff = substitute(j[a][i], tk, jmap);
            der = der + coeff * Derivation::partial(tk, slot + i)(val);
        }
        // set the last slot to 0
        std::map<std::size_t, Element> down;
        for (std::size_t ii = 0; ii < m + (static_cast<std::size_t>(k) - 1) * n; ++ii)
            down.emplace(ii, Element::generator(tk1, ii));
        for (std::size_t b = 0; b < n; ++b)
            down.emplace(slot + b, Element::zero(tk1));
        return substitute(der, tk1, down);
    };

    // permutations of {0..q-1}
    std::vector<std::size_t> perm(static_cast<std::size_t>(q));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;

    std::vector<std::size_t> tuple(static_cast<std::size_t>(q));
    auto emit = [&](const std::vector<std::size_t>& indices) {
        // sum over permutations gamma of sgn(gamma) (X_{a_{gamma(1)}})^1 ...
        Element coeff(out_table);
        std::vector<std::size_t> p = perm;
        do {
            long inversions = 0;
            for (std::size_t u = 0; u < p.size(); ++u)
                for (std::size_t v = u + 1; v < p.size(); ++v)
                    if (p[u] > p[v]) ++inversions;
            Element cur = f.value;
            for (int k = q; k >= 1; --k)
                cur = apply_slot_op(cur, k, indices[p[static_cast<std::size_t>(k) - 1]]);
            std::map<std::size_t, Element> sub;
            for (std::size_t i = 0; i < m; ++i)
                sub.emplace(i, Element::generator(out_table, i));
            coeff = coeff + substitute(cur, out_table, sub) * Rat(parity_sign(inversions));
        } while (std::next_permutation(p.begin(), p.end()));

        if (coeff.is_zero()) return;
        Element wedge = Element::constant(out_table, 1);
        for (std::size_t a : indices)
            wedge = wedge * Element::generator(out_table, m + a);
        out = out + coeff * wedge;
    };

    // strictly increasing index tuples a_1 < ... < a_q
    auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
        if (pos == tuple.size()) {
            emit(tuple);
            return;
        }
        for (std::size_t a = from; a < n; ++a) {
            tuple[pos] = a;
            self(self, pos + 1, a + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace qforms
