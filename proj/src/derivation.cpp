#include "qforms/derivation.hpp"

#include <sstream>

namespace qforms {

Derivation::Derivation(TablePtr table, int degree, std::vector<Element> images)
    : table_(std::move(table)), degree_(degree), images_(std::move(images)) {
    if (images_.size() != table_->size())
        throw EngineError("derivation needs one image per generator");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!same_table(images_[i].table(), table_)) throw MismatchedAlgebra();
        if (!images_[i].is_homogeneous_of_degree(table_->degree(i) + degree_))
            throw DegreeMismatch("image of " + table_->name(i) +
                                 " is not homogeneous of degree " +
                                 std::to_string(table_->degree(i) + degree_));
    }
}

Derivation Derivation::zero(TablePtr table, int degree) {
    std::vector<Element> images(table->size(), Element(table));
    return Derivation(std::move(table), degree, std::move(images));
}

Derivation Derivation::partial(const TablePtr& table, std::size_t index) {
    std::vector<Element> images(table->size(), Element(table));
    images.at(index) = Element::constant(table, 1);
    return Derivation(table, -table->degree(index), std::move(images));
}

Derivation Derivation::from_images(const TablePtr& table, int degree,
                                   const std::map<std::size_t, Element>& images) {
    std::vector<Element> v(table->size(), Element(table));
    for (const auto& [i, img] : images) v.at(i) = img;
    return Derivation(table, degree, std::move(v));
}

bool Derivation::is_zero() const {
    for (const auto& img : images_)
        if (!img.is_zero()) return false;
    return true;
}

Element Derivation::apply_monomial(const Monomial& m) const {
    // D(f_1 ... f_N) = sum_t (-1)^{|D| deg(f_1..f_{t-1})} f_1..f_{t-1} D(f_t) f_{t+1}..f_N
    Element out(table_);
    const auto& factors = m.factors();
    for (std::size_t t = 0; t < factors.size(); ++t) {
        const auto [idx, exp] = factors[t];
        if (images_[idx].is_zero()) continue;
        std::vector<Monomial::Factor> before(factors.begin(),
                                             factors.begin() + static_cast<long>(t));
        std::vector<Monomial::Factor> after(factors.begin() + static_cast<long>(t) + 1,
                                            factors.end());
        long prefix_deg = 0;
        for (const auto& [i, e] : before) prefix_deg += static_cast<long>(table_->degree(i)) * e;

        for (int k = 0; k < exp; ++k) {
            // prefix = before * idx^k, suffix = idx^{exp-1-k} * after
            auto prefix = before;
            if (k > 0) prefix.emplace_back(idx, k);
            auto suffix = after;
            if (exp - 1 - k > 0)
                suffix.insert(suffix.begin(), {idx, exp - 1 - k});
            long sign_par = static_cast<long>(degree_) *
                            (prefix_deg + static_cast<long>(table_->degree(idx)) * k);
            Element term = Element::from_monomial(table_, Monomial(prefix),
                                                  Rat(parity_sign(sign_par)));
            term = term * images_[idx];
            term = term * Element::from_monomial(table_, Monomial(suffix), 1);
            out = out + term;
        }
    }
    return out;
}

Element Derivation::operator()(const Element& a) const {
    if (!same_table(a.table(), table_)) throw MismatchedAlgebra();
    Element out(table_);
    for (const auto& [m, c] : a.terms())
        out = out + apply_monomial(m) * c;
    return out;
}

Derivation Derivation::operator+(const Derivation& other) const {
    if (!same_table(table_, other.table_)) throw MismatchedAlgebra();
    // the zero derivation sits in every degree
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    if (degree_ != other.degree_)
        throw DegreeMismatch("cannot add derivations of different degrees");
    std::vector<Element> images;
    images.reserve(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        images.push_back(images_[i] + other.images_[i]);
    return Derivation(table_, degree_, std::move(images));
}

Derivation Derivation::operator-(const Derivation& other) const {
    return *this + (-other);
}

Derivation Derivation::operator-() const {
    return *this * Rat(-1);
}

Derivation Derivation::operator*(const Rat& c) const {
    std::vector<Element> images;
    images.reserve(images_.size());
    for (const auto& img : images_) images.push_back(img * c);
    return Derivation(table_, degree_, std::move(images));
}

bool Derivation::operator==(const Derivation& other) const {
    if (!same_table(table_, other.table_)) throw MismatchedAlgebra();
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (!(images_[i] == other.images_[i])) return false;
    return true;
}

std::string Derivation::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].is_zero()) continue;
        if (!first) os << ", ";
        first = false;
        os << table_->name(i) << " -> " << images_[i].str();
    }
    if (first) return "0";
    return os.str();
}

Derivation operator*(const Element& f, const Derivation& d) {
    if (!same_table(f.table(), d.table())) throw MismatchedAlgebra();
    auto fd = f.homogeneous_degree();
    if (!f.is_zero() && !fd)
        throw DegreeMismatch("scaling a derivation needs a homogeneous element");
    std::vector<Element> images;
    images.reserve(d.table()->size());
    for (const auto& img : d.images()) images.push_back(f * img);
    return Derivation(d.table(), static_cast<int>(fd.value_or(0)) + d.degree(),
                      std::move(images));
}

Derivation bracket(const Derivation& a, const Derivation& b) {
    if (!same_table(a.table(), b.table())) throw MismatchedAlgebra();
    const int sign = parity_sign(static_cast<long>(a.degree()) * b.degree());
    std::vector<Element> images;
    images.reserve(a.table()->size());
    for (std::size_t i = 0; i < a.table()->size(); ++i)
        images.push_back(a(b.image(i)) - b(a.image(i)) * Rat(sign));
    return Derivation(a.table(), a.degree() + b.degree(), std::move(images));
}

bool is_homological(const Derivation& d) {
    return d.degree() == 1 && bracket(d, d).is_zero();
}

Element exp_nilpotent(const Derivation& n, const Element& a, int cap) {
    // nilpotency is certified dynamically: the series must terminate
    Element sum = a;
    Element term = a;
    for (int k = 1; !term.is_zero(); ++k) {
        if (k > cap) throw NotNilpotent("exp series did not terminate within cap");
        term = n(term) / Rat(k);
        sum = sum + term;
    }
    return sum;
}

Derivation transport(const Derivation& d, const TablePtr& target) {
    std::map<std::size_t, Element> images;
    for (std::size_t i = 0; i < d.table()->size(); ++i) {
        auto j = target->find(d.table()->name(i));
        if (!j) throw MismatchedAlgebra("missing generator " + d.table()->name(i));
        Element img = transport(d.image(i), target);
        if (!img.is_zero()) images.emplace(*j, img);
    }
    return Derivation::from_images(target, d.degree(), images);
}

Derivation conjugate(const Derivation& d, const Derivation& n, int cap) {
    if (n.degree() != 0)
        throw DegreeMismatch("conjugation is only defined along degree-0 derivations");
    Derivation sum = d;
    Derivation term = d;
    for (int k = 1; !term.is_zero(); ++k) {
        if (k > cap) throw NotNilpotent("ad-exp series did not terminate within cap");
        term = bracket(n, term) * (Rat(1) / Rat(k));
        sum = sum + term;
    }
    return sum;
}

} // namespace qforms
