#include "qforms/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qforms {

std::shared_ptr<const GeneratorTable> GeneratorTable::make(std::vector<Generator> gens) {
    auto t = std::make_shared<GeneratorTable>();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].name.empty())
            throw ValidationError("generator names must be nonempty");
        if (!t->index_.emplace(gens[i].name, i).second)
            throw ValidationError("duplicate generator name: " + gens[i].name);
    }
    t->gens_ = std::move(gens);
    return t;
}

std::optional<std::size_t> GeneratorTable::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t GeneratorTable::index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw EngineError("unknown generator: " + name);
    return *i;
}

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (factors_[k].second <= 0)
            throw EngineError("monomial exponents must be positive");
        if (k > 0 && factors_[k - 1].first >= factors_[k].first)
            throw EngineError("monomial factors must have strictly increasing indices");
    }
}

int Monomial::exponent(std::size_t index) const {
    for (const auto& [i, e] : factors_)
        if (i == index) return e;
    return 0;
}

long Monomial::degree(const GeneratorTable& t) const {
    long d = 0;
    for (const auto& [i, e] : factors_) d += static_cast<long>(t.degree(i)) * e;
    return d;
}

long Monomial::weight(const std::vector<long>& weights) const {
    long w = 0;
    for (const auto& [i, e] : factors_) w += weights.at(i) * e;
    return w;
}

long Monomial::odd_count(const GeneratorTable& t) const {
    long n = 0;
    for (const auto& [i, e] : factors_)
        if (t.odd(i)) n += e;
    return n;
}

bool Monomial::operator<(const Monomial& other) const {
    // Compare dense exponent vectors lexicographically.
    std::size_t a = 0, b = 0;
    while (a < factors_.size() && b < other.factors_.size()) {
        const auto& [ia, ea] = factors_[a];
        const auto& [ib, eb] = other.factors_[b];
        if (ia == ib) {
            if (ea != eb) return ea < eb;
            ++a; ++b;
        } else if (ia < ib) {
            return false; // this has a positive exponent where other has zero
        } else {
            return true;
        }
    }
    return a == factors_.size() && b < other.factors_.size();
}

std::string Monomial::str(const GeneratorTable& t) const {
    if (is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, e] : factors_) {
        if (!first) os << "*";
        first = false;
        os << t.name(i);
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

std::optional<std::pair<Monomial, int>> monomial_mul(const GeneratorTable& t,
                                                     const Monomial& a,
                                                     const Monomial& b) {
    // Interleave the two sorted factor lists.  Moving an odd factor of b past
    // an odd factor of a with larger index costs one transposition.
    std::vector<Monomial::Factor> out;
    out.reserve(a.factors().size() + b.factors().size());
    long transpositions = 0;

    // odd_suffix[k] = number of odd factors of a at positions >= k.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::vector<long> odd_suffix(fa.size() + 1, 0);
    for (std::size_t k = fa.size(); k-- > 0;)
        odd_suffix[k] = odd_suffix[k + 1] + (t.odd(fa[k].first) ? fa[k].second : 0);

    std::size_t ia = 0, ib = 0;
    while (ia < fa.size() || ib < fb.size()) {
        if (ib == fb.size() || (ia < fa.size() && fa[ia].first < fb[ib].first)) {
            out.push_back(fa[ia]);
            ++ia;
        } else if (ia == fa.size() || fb[ib].first < fa[ia].first) {
            if (t.odd(fb[ib].first)) transpositions += odd_suffix[ia];
            out.push_back(fb[ib]);
            ++ib;
        } else {
            // Same generator on both sides.
            if (t.odd(fa[ia].first)) return std::nullopt; // odd square
            out.emplace_back(fa[ia].first, fa[ia].second + fb[ib].second);
            ++ia;
            ++ib;
        }
    }
    return std::make_pair(Monomial(std::move(out)), parity_sign(transpositions));
}

Element Element::constant(TablePtr table, const Rat& c) {
    Element r(std::move(table));
    r.add_term(Monomial(), c);
    return r;
}

Element Element::generator(const TablePtr& table, std::size_t index) {
    if (index >= table->size()) throw EngineError("generator index out of range");
    Element r(table);
    r.add_term(Monomial::generator(index), 1);
    return r;
}

Element Element::from_monomial(TablePtr table, const Monomial& m, const Rat& c) {
    Element r(std::move(table));
    r.add_term(m, c);
    return r;
}

Rat Element::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Element Element::operator-() const {
    Element r(table_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Element Element::operator+(const Element& other) const {
    if (!same_table(table_, other.table_)) throw MismatchedAlgebra();
    Element r = *this;
    for (const auto& [m, c] : other.terms_) r.add_term(m, c);
    return r;
}

Element Element::operator-(const Element& other) const {
    if (!same_table(table_, other.table_)) throw MismatchedAlgebra();
    Element r = *this;
    for (const auto& [m, c] : other.terms_) r.add_term(m, -c);
    return r;
}

Element Element::operator*(const Element& other) const {
    if (!same_table(table_, other.table_)) throw MismatchedAlgebra();
    Element r(table_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            auto prod = monomial_mul(*table_, ma, mb);
            if (!prod) continue;
            r.add_term(prod->first, ca * cb * prod->second);
        }
    }
    return r;
}

Element Element::operator*(const Rat& c) const {
    Element r(table_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Element Element::operator/(const Rat& c) const {
    if (c == 0) throw EngineError("division by zero");
    return *this * (Rat(1) / c);
}

bool Element::operator==(const Element& other) const {
    if (!same_table(table_, other.table_)) throw MismatchedAlgebra();
    return terms_ == other.terms_;
}

bool Element::is_homogeneous() const {
    std::optional<long> d;
    for (const auto& [m, c] : terms_) {
        long md = m.degree(*table_);
        if (d && *d != md) return false;
        d = md;
    }
    return true;
}

std::optional<long> Element::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::optional<long> d;
    for (const auto& [m, c] : terms_) {
        long md = m.degree(*table_);
        if (d && *d != md) return std::nullopt;
        d = md;
    }
    return d;
}

bool Element::is_homogeneous_of_degree(long d) const {
    for (const auto& [m, c] : terms_)
        if (m.degree(*table_) != d) return false;
    return true;
}

std::map<long, Element> Element::degree_components() const {
    std::map<long, Element> out;
    for (const auto& [m, c] : terms_) {
        long d = m.degree(*table_);
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, Element(table_)).first;
        it->second.add_term(m, c);
    }
    return out;
}

bool Element::has_weight(const std::vector<long>& weights, long value) const {
    for (const auto& [m, c] : terms_)
        if (m.weight(weights) != value) return false;
    return true;
}

std::string Element::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c > 0 ? c : Rat(-c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (a != 1 || m.is_unit()) {
            os << rat_str(a);
            if (!m.is_unit()) os << "*";
        }
        if (!m.is_unit()) os << m.str(*table_);
    }
    return os.str();
}

namespace {

Element power(const Element& base, int e) {
    Element r = Element::constant(base.table(), 1);
    for (int k = 0; k < e; ++k) r = r * base;
    return r;
}

} // namespace

Element substitute(const Element& a, const TablePtr& target,
                   const std::map<std::size_t, Element>& images) {
    const GeneratorTable& src = *a.table();
    // Resolve the image of every generator that actually occurs.
    std::map<std::size_t, Element> resolved;
    auto image_of = [&](std::size_t i) -> const Element& {
        auto it = resolved.find(i);
        if (it != resolved.end()) return it->second;
        auto given = images.find(i);
        Element img(target);
        if (given != images.end()) {
            img = given->second;
            if (!same_table(img.table(), target)) throw MismatchedAlgebra();
        } else {
            auto j = target->find(src.name(i));
            if (!j || target->degree(*j) != src.degree(i))
                throw MismatchedAlgebra(
                    "no image for generator " + src.name(i) +
                    " and no same-named generator in the target table");
            img = Element::generator(target, *j);
        }
        if (!img.is_homogeneous_of_degree(src.degree(i)))
            throw DegreeMismatch("image of " + src.name(i) +
                                 " is not homogeneous of degree " +
                                 std::to_string(src.degree(i)));
        return resolved.emplace(i, std::move(img)).first->second;
    };

    Element out(target);
    for (const auto& [m, c] : a.terms()) {
        Element term = Element::constant(target, c);
        for (const auto& [i, e] : m.factors())
            term = term * power(image_of(i), e);
        out = out + term;
    }
    return out;
}

Element substitute(const Element& a, const std::map<std::size_t, Element>& images) {
    return substitute(a, a.table(), images);
}

Element transport(const Element& a, const TablePtr& target) {
    return substitute(a, target, {});
}

namespace {

void enumerate(const GeneratorTable& t, const std::optional<WeightSpec>& w,
               std::size_t i, long deg_left, long weight_left,
               std::vector<Monomial::Factor>& acc, std::vector<Monomial>& out) {
    if (i == t.size()) {
        if (deg_left == 0 && (!w || weight_left == 0))
            out.emplace_back(acc);
        return;
    }
    const long d = t.degree(i);
    const long wi = w ? w->weights[i] : 0;

    // Degree deficit recoverable from the remaining weight budget via
    // negative-degree generators later in the table.
    long slack = 0;
    if (w) {
        for (std::size_t j = i; j < t.size(); ++j) {
            long dj = t.degree(j), wj = w->weights[j];
            if (dj < 0 && wj > 0 && weight_left > 0)
                slack += (-dj) * (weight_left / wj);
        }
    }

    long emax;
    if (t.odd(i)) {
        emax = 1;
    } else if (d > 0) {
        emax = (deg_left + slack) / d;
        if (w && wi > 0) emax = std::min(emax, weight_left / wi);
    } else {
        // d <= 0 even: callers guarantee wi > 0 here.
        emax = weight_left / wi;
    }
    if (emax < 0) emax = 0;

    for (long e = 0; e <= emax; ++e) {
        if (w && wi * e > weight_left) break;
        if (e > 0) acc.emplace_back(i, static_cast<int>(e));
        enumerate(t, w, i + 1, deg_left - d * e, weight_left - wi * e, acc, out);
        if (e > 0) acc.pop_back();
    }
}

} // namespace

std::vector<Monomial> basis(const GeneratorTable& t, long degree,
                            const std::optional<WeightSpec>& weight) {
    if (weight) {
        if (weight->weights.size() != t.size())
            throw EngineError("weight assignment size does not match the table");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (weight->weights[i] < 0)
                throw InfiniteBasis("negative weights are not supported");
            if (t.degree(i) <= 0 && weight->weights[i] == 0)
                throw InfiniteBasis("generator " + t.name(i) +
                                    " has degree <= 0 and zero weight");
        }
        if (weight->value < 0) return {};
    } else {
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t.degree(i) <= 0)
                throw InfiniteBasis("generator " + t.name(i) +
                                    " has degree <= 0 and no weight scheme was supplied");
        if (degree < 0) return {};
    }

    std::vector<Monomial> out;
    std::vector<Monomial::Factor> acc;
    enumerate(t, weight, 0, degree, weight ? weight->value : 0, acc, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qforms
