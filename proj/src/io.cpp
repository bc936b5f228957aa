#include "qforms/io.hpp"

#include "json.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace qforms {

using nlohmann::json;

namespace {

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json parse error: ") + e.what());
    }
}

Rat rat_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return rat_parse(v.get<std::string>());
    throw ParseError("expected an integer or \"p/q\" string at " + where);
}

// {"<space-separated exponents>": coeff} over the generators of `table`.
Element poly_from_json(const json& v, const TablePtr& table, const std::string& where) {
    if (!v.is_object()) throw ParseError("expected a polynomial object at " + where);
    Element out(table);
    for (const auto& [key, coeff] : v.items()) {
        std::istringstream is(key);
        std::vector<Monomial::Factor> factors;
        long e = 0;
        std::size_t idx = 0;
        while (is >> e) {
            if (idx >= table->size())
                throw ParseError("exponent vector too long at " + where + ": " + key);
            if (e < 0) throw ParseError("negative exponent at " + where);
            if (e > 0) factors.emplace_back(idx, static_cast<int>(e));
            ++idx;
        }
        if (!is.eof()) throw ParseError("malformed exponent vector at " + where + ": " + key);
        if (idx != table->size())
            throw ParseError("exponent vector for " + std::to_string(table->size()) +
                             " generators expected at " + where + ": " + key);
        out = out + Element::from_monomial(table, Monomial(factors),
                                           rat_from_json(coeff, where));
    }
    return out;
}

std::vector<GeneratorTable::Generator> basis_from_json(const json& v,
                                                       const std::string& where) {
    if (!v.is_array()) throw ParseError("expected a basis array at " + where);
    std::vector<GeneratorTable::Generator> gens;
    for (const auto& item : v) {
        if (!item.contains("name")) throw ParseError("basis entry without name at " + where);
        gens.push_back({item.at("name").get<std::string>(),
                        item.value("degree", 0)});
    }
    return gens;
}

// Structure constants from a bracket list with antisymmetric completion.
std::vector<std::vector<std::vector<Rat>>> brackets_from_json(
    const json& v, const std::vector<int>& degrees, const std::string& where) {
    const std::size_t n = degrees.size();
    std::vector<std::vector<std::vector<Rat>>> c(
        n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
    std::vector<std::vector<std::vector<bool>>> given(
        n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)));
    if (v.is_null()) return c;
    if (!v.is_array()) throw ParseError("expected a bracket array at " + where);
    for (const auto& item : v) {
        std::size_t i = item.at("i").get<std::size_t>();
        std::size_t j = item.at("j").get<std::size_t>();
        if (i >= n || j >= n) throw ParseError("bracket index out of range at " + where);
        for (const auto& [kstr, q] : item.at("coeffs").items()) {
            std::size_t k = std::stoul(kstr);
            if (k >= n) throw ParseError("bracket target out of range at " + where);
            Rat val = rat_from_json(q, where);
            if (given[i][j][k] && c[i][j][k] != val)
                throw ValidationError("conflicting entries for c[" + std::to_string(i) +
                                      "," + std::to_string(j) + "]^" + std::to_string(k));
            c[i][j][k] = val;
            given[i][j][k] = true;
        }
    }
    // antisymmetric completion for entries only given one way
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (!given[i][j][k]) continue;
                Rat mirror = -Rat(parity_sign(static_cast<long>(degrees[i]) * degrees[j])) *
                             c[i][j][k];
                if (given[j][i][k]) {
                    if (c[j][i][k] != mirror)
                        throw ValidationError(
                            "brackets are not graded antisymmetric at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
                } else {
                    c[j][i][k] = mirror;
                    given[j][i][k] = true;
                }
            }
    return c;
}

void jacobi_or_throw(const StructureData& s, const std::string& what) {
    auto d = build_differential(s);
    auto sq = bracket(d, d);
    for (std::size_t i = 0; i < d.table()->size(); ++i)
        if (!sq.image(i).is_zero())
            throw JacobiFailure(what + ": d^2 != 0 at generator " +
                                d.table()->name(i) + ": (" + (sq.image(i) / 2).str() + ")");
}

StructureData lie_algebra_from_json(const json& v) {
    auto gens = basis_from_json(v.at("basis"), "lie_algebra.basis");
    std::vector<std::string> names;
    std::vector<int> degrees;
    for (const auto& g : gens) {
        names.push_back(g.name);
        degrees.push_back(g.degree);
    }
    auto c = brackets_from_json(v.contains("brackets") ? v.at("brackets") : json(),
                                degrees, "lie_algebra.brackets");
    auto s = StructureData::lie_algebra(names, degrees, c);
    jacobi_or_throw(s, "lie_algebra");
    return s;
}

StructureData algebroid_from_json(const json& v) {
    std::vector<std::string> base = v.at("base").get<std::vector<std::string>>();
    auto fgens = basis_from_json(v.at("frame"), "algebroid.frame");
    std::vector<std::string> frame;
    std::vector<int> degrees;
    for (const auto& g : fgens) {
        frame.push_back(g.name);
        degrees.push_back(g.degree);
    }
    const std::size_t n = frame.size(), m = base.size();

    std::vector<GeneratorTable::Generator> bgens;
    for (const auto& nm : base) bgens.push_back({nm, 0});
    auto base_table = GeneratorTable::make(bgens);

    std::vector<std::vector<Element>> anchor(n, std::vector<Element>(m, Element(base_table)));
    if (v.contains("anchor"))
        for (const auto& [astr, row] : v.at("anchor").items()) {
            std::size_t a = std::stoul(astr);
            if (a >= n) throw ParseError("anchor index out of range");
            for (const auto& [istr, poly] : row.items()) {
                std::size_t i = std::stoul(istr);
                if (i >= m) throw ParseError("anchor coordinate out of range");
                anchor[a][i] = poly_from_json(poly, base_table, "algebroid.anchor");
            }
        }

    std::vector<std::vector<std::vector<Element>>> structure(
        n, std::vector<std::vector<Element>>(n, std::vector<Element>(n, Element(base_table))));
    std::vector<std::vector<std::vector<bool>>> given(
        n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)));
    if (v.contains("structure"))
        for (const auto& [key, row] : v.at("structure").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ParseError("structure keys look like \"a,b\": " + key);
            std::size_t a = std::stoul(key.substr(0, comma));
            std::size_t b = std::stoul(key.substr(comma + 1));
            if (a >= n || b >= n) throw ParseError("structure index out of range");
            for (const auto& [gstr, poly] : row.items()) {
                std::size_t g = std::stoul(gstr);
                if (g >= n) throw ParseError("structure target out of range");
                structure[a][b][g] = poly_from_json(poly, base_table, "algebroid.structure");
                given[a][b][g] = true;
            }
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g) {
                if (!given[a][b][g]) continue;
                Element mirror =
                    structure[a][b][g] *
                    Rat(-parity_sign(static_cast<long>(degrees[a]) * degrees[b]));
                if (given[b][a][g]) {
                    if (!(structure[b][a][g] == mirror))
                        throw ValidationError("structure functions are not graded antisymmetric");
                } else {
                    structure[b][a][g] = mirror;
                    given[b][a][g] = true;
                }
            }

    auto s = StructureData::make(base, frame, degrees, anchor, structure);
    jacobi_or_throw(s, "algebroid");
    return s;
}

} // namespace

JobSpec parse_job(const std::string& path) {
    json v = load_file(path);
    JobSpec job;
    if (!v.contains("kind")) throw ParseError("job file needs a \"kind\"");
    job.kind = v.at("kind").get<std::string>();
    job.model = v.value("model", std::string("ce"));
    if (v.contains("window")) {
        auto w = v.at("window");
        if (!w.is_array() || w.size() != 2) throw ParseError("window must be [lo, hi]");
        job.window = {w[0].get<int>(), w[1].get<int>()};
        if (job.window->first > job.window->second)
            throw ParseError("window must be nonempty");
    }
    if (v.contains("weight")) job.weight = v.at("weight").get<long>();
    job.format = v.value("format", std::string("table"));
    job.want_representatives = v.value("representatives", false);
    job.seed = v.value("seed", 1u);
    job.samples = v.value("samples", 25);

    if (v.contains("lie_algebra")) job.lie_algebra = lie_algebra_from_json(v.at("lie_algebra"));
    if (v.contains("algebroid")) job.algebroid = algebroid_from_json(v.at("algebroid"));

    if (v.contains("action")) {
        const auto& av = v.at("action");
        std::vector<std::string> base = av.at("base").get<std::vector<std::string>>();
        std::vector<GeneratorTable::Generator> bgens;
        for (const auto& nm : base) bgens.push_back({nm, 0});
        auto base_table = GeneratorTable::make(bgens);
        job.action_base = base_table;
        if (!job.lie_algebra) throw ParseError("an action payload needs a lie_algebra");
        const std::size_t n = job.lie_algebra->frame_size();
        for (std::size_t b = 0; b < n; ++b) {
            std::map<std::size_t, Element> img;
            auto key = std::to_string(b);
            if (av.at("vector_fields").contains(key))
                for (const auto& [istr, poly] : av.at("vector_fields").at(key).items())
                    img.emplace(std::stoul(istr),
                                poly_from_json(poly, base_table, "action.vector_fields"));
            job.action.push_back(Derivation::from_images(base_table, 0, img));
        }
    }

    if (v.contains("bialgebra")) {
        const auto& bv = v.at("bialgebra");
        std::size_t n = bv.at("dim").get<std::size_t>();
        std::vector<int> degrees(n, 0);
        job.bialgebra_c = brackets_from_json(
            bv.contains("c") ? bv.at("c") : json(), degrees, "bialgebra.c");
        job.bialgebra_gamma = brackets_from_json(
            bv.contains("gamma") ? bv.at("gamma") : json(), degrees, "bialgebra.gamma");
        // eager Jacobi on both halves
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i + 1));
        jacobi_or_throw(StructureData::lie_algebra(names, degrees, *job.bialgebra_c),
                        "bialgebra.c");
        jacobi_or_throw(StructureData::lie_algebra(names, degrees, *job.bialgebra_gamma),
                        "bialgebra.gamma");
    }

    if (v.contains("groupoid")) {
        const auto& gv = v.at("groupoid");
        std::string mode = gv.at("mode").get<std::string>();
        if (mode == "finite") {
            FiniteGroupoid g;
            g.n_objects = gv.at("objects").get<std::size_t>();
            for (const auto& arrow : gv.at("arrows")) {
                g.src.push_back(arrow.at("src").get<std::size_t>());
                g.tgt.push_back(arrow.at("tgt").get<std::size_t>());
            }
            g.identity = gv.at("identities").get<std::vector<std::size_t>>();
            g.inverse = gv.at("inverses").get<std::vector<std::size_t>>();
            for (const auto& triple : gv.at("mult")) {
                if (!triple.is_array() || triple.size() != 3)
                    throw ParseError("mult entries look like [a, b, ab]");
                g.mult[{triple[0].get<std::size_t>(), triple[1].get<std::size_t>()}] =
                    triple[2].get<std::size_t>();
            }
            g.validate();
            job.finite_groupoid = g;
        } else if (mode == "poly_action") {
            std::vector<std::string> base;
            if (gv.contains("base")) base = gv.at("base").get<std::vector<std::string>>();
            std::vector<std::string> group = gv.at("group").get<std::vector<std::string>>();
            const std::size_t n = group.size(), m = base.size();

            std::vector<GeneratorTable::Generator> mu_gens, act_gens;
            for (const auto& nm : group) mu_gens.push_back({nm, 0});
            for (const auto& nm : group) mu_gens.push_back({nm + "~", 0});
            auto mu_table = GeneratorTable::make(mu_gens);
            for (const auto& nm : base) act_gens.push_back({nm, 0});
            for (const auto& nm : group) act_gens.push_back({nm, 0});
            auto act_table = GeneratorTable::make(act_gens);

            std::vector<Element> mu, act;
            for (std::size_t a = 0; a < n; ++a)
                mu.push_back(poly_from_json(gv.at("mu").at(std::to_string(a)), mu_table,
                                            "groupoid.mu"));
            for (std::size_t i = 0; i < m; ++i)
                act.push_back(poly_from_json(gv.at("action").at(std::to_string(i)),
                                             act_table, "groupoid.action"));
            job.poly_groupoid = PolyActionGroupoid::make(base, group, mu, act);
        } else {
            throw ParseError("groupoid mode must be finite or poly_action");
        }
    }

    if (v.contains("ginzburg_premoment")) {
        if (!job.algebroid) throw ParseError("a premoment needs an algebroid");
        if (!job.lie_algebra) throw ParseError("a premoment needs a lie_algebra");
        const std::size_t n = job.lie_algebra->frame_size();
        const std::size_t r = job.algebroid->frame_size();
        for (std::size_t b = 0; b < n; ++b) {
            Section s;
            s.coeffs.assign(r, Element(job.algebroid->base_table));
            auto key = std::to_string(b);
            if (v.at("ginzburg_premoment").contains(key))
                for (const auto& [astr, poly] : v.at("ginzburg_premoment").at(key).items())
                    s.coeffs.at(std::stoul(astr)) = poly_from_json(
                        poly, job.algebroid->base_table, "ginzburg_premoment");
            job.premoment.push_back(std::move(s));
        }
    }

    if (v.contains("generators"))
        job.suite_generators = basis_from_json(v.at("generators"), "generators");

    return job;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return 4;
    if (dynamic_cast<const ValidationError*>(&e)) return 2;
    return 3;
}

// ---------------------------------------------------------------------------
// Job execution
// ---------------------------------------------------------------------------

namespace {

struct ReportBuilder {
    json out = json::object();
    std::ostringstream text;
    bool pass = true;

    void line(const std::string& label, bool ok, const std::string& detail = "") {
        pass = pass && ok;
        text << label << ": " << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) text << " (" << detail << ")";
        text << "\n";
        out["checks"].push_back({{"label", label}, {"pass", ok}, {"detail", detail}});
    }

    void betti_table(const BettiTable& b, const std::string& name) {
        text << name << "\n";
        text << "degree  dim  rank  kernel  h\n";
        json rows = json::array();
        for (const auto& [degree, s] : b.rows) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%6d %4ld %5ld %7ld %2ld\n", degree, s.dim,
                          s.rank, s.kernel, s.h);
            text << buf;
            rows.push_back({{"degree", degree}, {"dim", s.dim}, {"rank", s.rank},
                            {"kernel", s.kernel}, {"h", s.h}});
        }
        out["betti"].push_back({{"name", name}, {"rows", rows}});
    }

    void representatives_list(const ComplexSpec& spec, int lo, int hi,
                              const std::vector<Derivation>& ops) {
        for (int n = lo; n <= hi; ++n) {
            auto reps = representatives(spec, n, ops);
            if (reps.empty()) continue;
            text << "representatives at degree " << n << ":\n";
            json jr = json::array();
            for (const auto& r : reps) {
                text << "  " << r.str() << "\n";
                jr.push_back(r.str());
            }
            out["representatives"][std::to_string(n)] = jr;
        }
    }

    Report finish(const std::string& format) {
        out["pass"] = pass;
        Report r;
        r.pass = pass;
        r.exit_code = pass ? 0 : 2;
        r.text = format == "json" ? out.dump(2) + "\n" : text.str();
        return r;
    }
};

std::pair<int, int> need_window(const JobSpec& job) {
    if (!job.window) throw ParseError("this job needs a degree window");
    return *job.window;
}

// Weight spec for tables whose degree-0 generators should have weight 1 and
// the rest weight 0 (BRST/Cartan/Ginzburg truncations).
WeightSpec default_weights(const TablePtr& t, long value) {
    std::vector<long> w(t->size(), 0);
    for (std::size_t i = 0; i < t->size(); ++i) {
        if (t->degree(i) == 0) w[i] = 1;
        // dotted partners of degree-0 coordinates carry the same weight
        std::string nm = t->name(i);
        if (!nm.empty() && nm.back() == '\'') {
            auto base = t->find(nm.substr(0, nm.size() - 1));
            if (base && t->degree(*base) == 0) w[i] = 1;
        }
    }
    return {w, value};
}

ComplexSpec spec_for(const JobSpec& job, const TablePtr& t, const Derivation& d) {
    auto [lo, hi] = need_window(job);
    ComplexSpec spec{t, d, lo, hi, std::nullopt};
    bool has_degree0 = false;
    for (std::size_t i = 0; i < t->size(); ++i)
        if (t->degree(i) <= 0) has_degree0 = true;
    if (job.weight) {
        spec.weight = default_weights(t, *job.weight);
    } else if (has_degree0) {
        throw EngineError("this complex has degree-0 coordinates; pass --weight");
    }
    return spec;
}

Report run_check(const JobSpec& job) {
    ReportBuilder rd;
    if (job.lie_algebra) {
        rd.line("lie_algebra jacobi", check_jacobi(*job.lie_algebra));
        rd.line("lie_algebra antisymmetry", true); // enforced at parse
    }
    if (job.algebroid) rd.line("algebroid jacobi", check_jacobi(*job.algebroid));
    if (!job.action.empty()) {
        bool ok = true;
        std::string witness;
        try {
            brst(*job.lie_algebra, job.action);
        } catch (const NotAnAction& e) {
            ok = false;
            witness = e.what();
        }
        rd.line("action is a lie algebra homomorphism", ok, witness);
    }
    if (job.bialgebra_c) {
        auto d = bialgebra_double(*job.bialgebra_c, *job.bialgebra_gamma);
        rd.line("bialgebra halves satisfy jacobi", true);
        rd.line("bialgebra compatibility [d,Xi] = 0", d.compatible, d.witness);
    }
    if (job.finite_groupoid) rd.line("finite groupoid axioms", true);
    if (job.poly_groupoid) rd.line("polynomial groupoid axioms", true);
    return rd.finish(job.format);
}

Report run_betti(const JobSpec& job) {
    ReportBuilder rd;
    if (job.model == "weil") {
        if (!job.lie_algebra) throw ParseError("betti model weil needs a lie_algebra");
        auto w = weil(*job.lie_algebra);
        ComplexSpec spec{w.ot.table, w.d_w, need_window(job).first,
                         need_window(job).second, std::nullopt};
        rd.betti_table(betti(spec), "weil complex");
        if (job.want_representatives)
            rd.representatives_list(spec, spec.lo, spec.hi, {});
    } else if (job.model == "brst") {
        if (!job.lie_algebra || job.action.empty())
            throw ParseError("betti model brst needs a lie_algebra and an action");
        auto b = brst(*job.lie_algebra, job.action);
        if (!b.weights)
            throw WeightNotPreserved("the BRST differential does not preserve weights");
        auto [lo, hi] = need_window(job);
        if (!job.weight) throw EngineError("brst betti needs --weight");
        ComplexSpec spec{b.table, b.total, lo, hi, WeightSpec{*b.weights, *job.weight}};
        rd.betti_table(betti(spec), "brst total complex");
    } else {
        const StructureData* s = nullptr;
        if (job.algebroid) s = &*job.algebroid;
        else if (job.lie_algebra) s = &*job.lie_algebra;
        else throw ParseError("betti needs a lie_algebra or algebroid");
        auto d = build_differential(*s);
        auto spec = spec_for(job, d.table(), d);
        rd.betti_table(betti(spec), "chevalley-eilenberg complex");
        if (job.want_representatives)
            rd.representatives_list(spec, spec.lo, spec.hi, {});
    }
    return rd.finish(job.format);
}

Report run_basic(const JobSpec& job) {
    ReportBuilder rd;
    if (job.model == "weil") {
        if (!job.lie_algebra) throw ParseError("basic model weil needs a lie_algebra");
        auto w = weil(*job.lie_algebra);
        auto [lo, hi] = need_window(job);
        ComplexSpec spec{w.ot.table, w.d_w, lo, hi, std::nullopt};
        rd.betti_table(basic_betti(spec, w.contractions), "basic weil complex");
        if (job.want_representatives) {
            std::vector<Derivation> ops = w.contractions;
            for (const auto& i_b : w.contractions)
                ops.push_back(bracket(i_b, w.d_w));
            rd.representatives_list(spec, lo, hi, ops);
        }
    } else if (job.model == "cartan" || job.model == "brst") {
        if (!job.lie_algebra || job.action.empty())
            throw ParseError("basic model cartan needs a lie_algebra and an action");
        auto b = brst(*job.lie_algebra, job.action);
        auto cm = cartan_model(b);
        auto [lo, hi] = need_window(job);
        if (!cm.weights || !job.weight)
            throw EngineError("the cartan model over R^m needs --weight");
        ComplexSpec spec{cm.table, cm.d_c, lo, hi, WeightSpec{*cm.weights, *job.weight}};
        rd.betti_table(invariant_betti(spec, cm.invariance), "cartan model");
        if (job.want_representatives)
            rd.representatives_list(spec, lo, hi, cm.invariance);
    } else {
        throw ParseError("basic supports models weil and cartan");
    }
    return rd.finish(job.format);
}

Report run_mqk(const JobSpec& job) {
    if (!job.lie_algebra) throw ParseError("mqk needs a lie_algebra");
    std::vector<Derivation> action = job.action;
    if (action.empty())
        action.assign(job.lie_algebra->frame_size(),
                      Derivation::zero(GeneratorTable::make({}), 0));
    auto b = brst(*job.lie_algebra, action, job.action_base);
    auto [twisted_d, expected] = mqk(b);
    ReportBuilder rd;
    rd.line("conjugation identity", twisted_d == expected);
    rd.line("brst differential equals d + L_{d_A}", b.total == expected);
    return rd.finish(job.format);
}

Report run_double(const JobSpec& job) {
    if (!job.bialgebra_c) throw ParseError("double needs a bialgebra payload");
    auto d = bialgebra_double(*job.bialgebra_c, *job.bialgebra_gamma);
    ReportBuilder rd;
    rd.line("compatibility [d,Xi] = 0", d.compatible, d.witness);
    rd.line("total differential squares to zero", d.total_homological);
    return rd.finish(job.format);
}

Report run_ginzburg(const JobSpec& job) {
    if (!job.algebroid || !job.lie_algebra)
        throw ParseError("ginzburg needs an algebroid and a lie_algebra");
    auto z = ginzburg(*job.algebroid, *job.lie_algebra, job.premoment);
    ReportBuilder rd;
    rd.line("equivariant differential squares to zero", is_homological(z.coboundary));
    rd.line("morphic field squares to zero", is_homological(z.morphic));
    rd.line("total differential squares to zero", is_homological(z.total));
    rd.line("exp(Q) conjugates d_A + d_K to the total differential",
            conjugate(z.morphic, z.mqk_twist) == z.total);
    if (job.window) {
        ComplexSpec spec{z.horizontal_table, z.d_c, job.window->first, job.window->second,
                         std::nullopt};
        bool has_degree0 = z.algebroid.base_size() > 0;
        if (job.weight)
            spec.weight = default_weights(z.horizontal_table, *job.weight);
        else if (has_degree0)
            throw EngineError("this ginzburg complex needs --weight");
        rd.betti_table(invariant_betti(spec, z.invariance), "ginzburg basic complex");
    }
    return rd.finish(job.format);
}

// deterministic helpers for the randomized runs
long uniform(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

PolyCochain random_normalized_cochain(std::mt19937_64& rng, const PolyActionGroupoid& g,
                                      int level) {
    auto t = g.level_table(level);
    const std::size_t m = g.base_dim(), n = g.group_dim();
    Element out(t);
    int terms = static_cast<int>(uniform(rng, 1, 3));
    for (int k = 0; k < terms; ++k) {
        std::vector<Monomial::Factor> factors;
        int budget = 3;
        bool ok = true;
        for (int slot = 0; slot < level; ++slot) {
            int e = static_cast<int>(uniform(rng, 1, 2));
            if (budget - e < level - slot - 1) e = 1;
            if (budget < e) { ok = false; break; }
            factors.emplace_back(m + static_cast<std::size_t>(slot) * n +
                                     static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1)),
                                 e);
            budget -= e;
        }
        if (!ok) continue;
        if (m > 0 && budget > 0 && uniform(rng, 0, 1) == 0)
            factors.emplace_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m) - 1)),
                                 static_cast<int>(uniform(rng, 1, budget)));
        std::sort(factors.begin(), factors.end());
        std::vector<Monomial::Factor> merged;
        for (const auto& f : factors) {
            if (!merged.empty() && merged.back().first == f.first)
                merged.back().second += f.second;
            else
                merged.push_back(f);
        }
        long num = uniform(rng, -4, 4);
        if (num == 0) num = 1;
        out = out + Element::from_monomial(t, Monomial(merged), rat(num, uniform(rng, 1, 2)));
    }
    return {level, out};
}

Report run_vanest(const JobSpec& job) {
    if (!job.poly_groupoid) throw ParseError("vanest needs a poly_action groupoid");
    const auto& g = *job.poly_groupoid;
    auto data = g.algebroid();
    auto d_a = build_differential(data);

    ReportBuilder rd;
    // report the extracted structure constants
    auto c = g.structure_constants();
    std::ostringstream cs;
    bool first = true;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b)
            for (std::size_t e = 0; e < c.size(); ++e)
                if (c[a][b][e] != 0) {
                    if (!first) cs << ", ";
                    first = false;
                    cs << "c[" << a + 1 << "," << b + 1 << "]^" << e + 1 << " = "
                       << rat_str(c[a][b][e]);
                }
    rd.line("left-invariant frame closes", true, first ? "abelian" : cs.str());
    rd.line("anchor is a homomorphism", check_jacobi(data));

    std::mt19937_64 rng(job.seed);
    int chain_ok = 0, ring_ok = 0;
    for (int k = 0; k < job.samples; ++k) {
        int level = static_cast<int>(uniform(rng, 1, 2));
        auto f = random_normalized_cochain(rng, g, level);
        if (van_est(g, delta(g, f)) == d_a(van_est(g, f))) ++chain_ok;
        auto u = random_normalized_cochain(rng, g, 1);
        auto v = random_normalized_cochain(rng, g, 1);
        if (van_est(g, cup(g, u, v)) == van_est(g, u) * van_est(g, v)) ++ring_ok;
    }
    rd.line("chain property V(delta f) = d_A(V f)", chain_ok == job.samples,
            std::to_string(chain_ok) + "/" + std::to_string(job.samples) + " samples");
    rd.line("ring property V(f*g) = Vf ^ Vg", ring_ok == job.samples,
            std::to_string(ring_ok) + "/" + std::to_string(job.samples) + " samples");
    return rd.finish(job.format);
}

Report run_cartan_suite(const JobSpec& job) {
    if (!job.suite_generators) throw ParseError("cartan-suite needs a generators list");
    auto base = GeneratorTable::make(*job.suite_generators);
    auto ot = OddTangentAlgebra::doubled(base);

    std::mt19937_64 rng(job.seed);
    auto random_homogeneous = [&](long degree) {
        Element out(base);
        std::vector<Monomial> candidates;
        std::vector<Monomial::Factor> acc;
        auto rec = [&](auto&& self, std::size_t i, long deg_left) -> void {
            if (i == base->size()) {
                if (deg_left == 0) candidates.emplace_back(acc);
                return;
            }
            int cap = base->odd(i) ? 1 : 2;
            for (int e = 0; e <= cap; ++e) {
                if (e > 0) acc.emplace_back(i, e);
                self(self, i + 1, deg_left - static_cast<long>(base->degree(i)) * e);
                if (e > 0) acc.pop_back();
            }
        };
        rec(rec, 0, degree);
        for (const auto& mnm : candidates)
            if (uniform(rng, 0, 2) == 0)
                out = out + Element::from_monomial(base, mnm, rat(uniform(rng, -3, 3)));
        return out;
    };
    auto random_field = [&](int degree) {
        std::map<std::size_t, Element> images;
        for (std::size_t i = 0; i < base->size(); ++i)
            images.emplace(i, random_homogeneous(base->degree(i) + degree));
        return Derivation::from_images(base, degree, images);
    };

    std::map<std::string, int> ok;
    std::vector<std::string> labels;
    for (int k = 0; k < job.samples; ++k) {
        auto x = random_field(static_cast<int>(uniform(rng, -1, 2)));
        auto y = random_field(static_cast<int>(uniform(rng, -1, 2)));
        auto report = cartan_suite(ot, x, y);
        for (const auto& line : report.lines) {
            if (k == 0) labels.push_back(line.relation);
            if (line.pass) ++ok[line.relation];
        }
    }
    ReportBuilder rd;
    for (const auto& label : labels)
        rd.line(label, ok[label] == job.samples,
                std::to_string(ok[label]) + "/" + std::to_string(job.samples) + " samples");
    return rd.finish(job.format);
}

} // namespace

Report run_job(const JobSpec& job) {
    if (job.kind == "check") return run_check(job);
    if (job.kind == "betti") return run_betti(job);
    if (job.kind == "basic") return run_basic(job);
    if (job.kind == "mqk") return run_mqk(job);
    if (job.kind == "double") return run_double(job);
    if (job.kind == "ginzburg") return run_ginzburg(job);
    if (job.kind == "vanest") return run_vanest(job);
    if (job.kind == "cartan-suite") return run_cartan_suite(job);
    throw ParseError("unknown job kind: " + job.kind);
}

} // namespace qforms
