#include "qforms/cohomology.hpp"

#include <algorithm>

namespace qforms {

std::vector<Monomial> ComplexSpec::basis_at(long degree) const {
    if (!weight) return basis(*table, degree);
    return basis(*table, degree, weight);
}

std::vector<long> rref_in_place(Mat& a) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < a.cols() && row < a.rows(); ++col) {
        long p = -1;
        for (long r = row; r < a.rows(); ++r)
            if (a(r, col) != 0) { p = r; break; }
        if (p < 0) continue;
        if (p != row) a.row(p).swap(a.row(row));
        Rat inv = Rat(1) / a(row, col);
        for (long c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (long r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == 0) continue;
            Rat f = a(r, col);
            for (long c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

long rank_of(Mat a) {
    return static_cast<long>(rref_in_place(a).size());
}

Mat kernel_basis(const Mat& a) {
    Mat r = a;
    auto pivots = rref_in_place(r);
    std::vector<bool> is_pivot(a.cols(), false);
    for (long c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<long> free_cols;
    for (long c = 0; c < a.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    Mat k(a.cols(), static_cast<long>(free_cols.size()));
    k.setZero();
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        long fc = free_cols[j];
        k(fc, static_cast<long>(j)) = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            k(pivots[pi], static_cast<long>(j)) = -r(static_cast<long>(pi), fc);
    }
    return k;
}

std::optional<Mat> solve_exact(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw EngineError("solve_exact: row mismatch");
    Mat aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    auto pivots = rref_in_place(aug);
    // inconsistent iff a pivot lands in the b-part
    for (long c : pivots)
        if (c >= a.cols()) return std::nullopt;
    Mat x(a.cols(), b.cols());
    x.setZero();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        long col = pivots[pi];
        for (long j = 0; j < b.cols(); ++j)
            x(col, j) = aug(static_cast<long>(pi), a.cols() + j);
    }
    return x;
}

namespace {

void check_weight_preserved(const ComplexSpec& spec, const Derivation& op) {
    if (!spec.weight) return;
    const auto& w = spec.weight->weights;
    for (std::size_t i = 0; i < spec.table->size(); ++i) {
        const Element& img = op.image(i);
        if (!img.has_weight(w, w.at(i)))
            throw WeightNotPreserved("operator does not preserve the weight of " +
                                     spec.table->name(i));
    }
}

Mat matrix_between(const ComplexSpec& spec, const Derivation& op,
                   const std::vector<Monomial>& domain,
                   const std::vector<Monomial>& target) {
    std::map<Monomial, long> index;
    for (std::size_t r = 0; r < target.size(); ++r)
        index.emplace(target[r], static_cast<long>(r));

    Mat m(static_cast<long>(target.size()), static_cast<long>(domain.size()));
    m.setZero();
    for (std::size_t c = 0; c < domain.size(); ++c) {
        Element img = op(Element::from_monomial(spec.table, domain[c], 1));
        for (const auto& [mono, coeff] : img.terms()) {
            auto it = index.find(mono);
            if (it == index.end())
                throw EngineError("operator image leaves the enumerated basis at " +
                                  mono.str(*spec.table));
            m(it->second, static_cast<long>(c)) = coeff;
        }
    }
    return m;
}

} // namespace

Mat operator_matrix(const ComplexSpec& spec, const Derivation& op, int n) {
    check_weight_preserved(spec, op);
    auto domain = spec.basis_at(n);
    auto target = spec.basis_at(n + op.degree());
    return matrix_between(spec, op, domain, target);
}

Mat differential_matrix(const ComplexSpec& spec, int n) {
    if (spec.differential.degree() != 1)
        throw EngineError("the differential must have degree 1");
    return operator_matrix(spec, spec.differential, n);
}

std::vector<long> BettiTable::dims(int lo, int hi) const {
    std::vector<long> out;
    for (int n = lo; n <= hi; ++n) {
        auto it = rows.find(n);
        out.push_back(it == rows.end() ? 0 : it->second.h);
    }
    return out;
}

BettiTable betti(const ComplexSpec& spec) {
    if (!is_homological(spec.differential))
        throw EngineError("the differential is not homological");
    check_weight_preserved(spec, spec.differential);

    BettiTable out;
    std::map<int, long> rank; // rank of d_n
    std::map<int, long> dim;
    for (int n = spec.lo - 1; n <= spec.hi; ++n) {
        auto dom = spec.basis_at(n);
        dim[n] = static_cast<long>(dom.size());
        auto target = spec.basis_at(n + 1);
        Mat m = matrix_between(spec, spec.differential, dom, target);
        rank[n] = rank_of(m);
    }
    for (int n = spec.lo; n <= spec.hi; ++n) {
        DegreeStats s;
        s.dim = dim[n];
        s.rank = rank[n];
        s.kernel = s.dim - s.rank;
        s.h = s.kernel - rank[n - 1];
        out.rows.emplace(n, s);
    }
    return out;
}

namespace {

struct Subspace {
    std::vector<Monomial> ambient; // basis of C^n
    Mat span;                      // columns = coordinates of subspace basis
};

// Joint kernel of the operators at total degree n.
Subspace joint_kernel(const ComplexSpec& spec, const std::vector<Derivation>& ops, int n) {
    Subspace s;
    s.ambient = spec.basis_at(n);
    const long dim = static_cast<long>(s.ambient.size());
    if (ops.empty()) {
        s.span = Mat::Identity(dim, dim);
        return s;
    }
    long total_rows = 0;
    std::vector<Mat> blocks;
    for (const auto& op : ops) {
        auto target = spec.basis_at(n + op.degree());
        blocks.push_back(matrix_between(spec, op, s.ambient, target));
        total_rows += blocks.back().rows();
    }
    Mat stacked(total_rows, dim);
    long at = 0;
    for (const auto& b : blocks) {
        stacked.middleRows(at, b.rows()) = b;
        at += b.rows();
    }
    s.span = kernel_basis(stacked);
    return s;
}

} // namespace

BettiTable invariant_betti(const ComplexSpec& spec, const std::vector<Derivation>& ops) {
    for (const auto& op : ops) check_weight_preserved(spec, op);
    check_weight_preserved(spec, spec.differential);

    // subspaces at each degree, then the differential restricted to them
    std::map<int, Subspace> sub;
    for (int n = spec.lo - 1; n <= spec.hi + 1; ++n)
        sub.emplace(n, joint_kernel(spec, ops, n));

    std::map<int, Mat> restricted; // R_n with d * S_n = S_{n+1} * R_n
    for (int n = spec.lo - 1; n <= spec.hi; ++n) {
        const auto& dom = sub.at(n);
        const auto& tgt = sub.at(n + 1);
        Mat d_full = matrix_between(spec, spec.differential, dom.ambient, tgt.ambient);
        Mat mapped = d_full * dom.span;
        auto x = solve_exact(tgt.span, mapped);
        if (!x)
            throw NotClosed("the differential leaves the subcomplex at degree " +
                            std::to_string(n));
        restricted.emplace(n, std::move(*x));
    }

    // d^2 = 0 must hold on the subcomplex even when the ambient differential
    // only squares to zero there (Cartan model case)
    for (int n = spec.lo - 1; n < spec.hi; ++n) {
        Mat sq = restricted.at(n + 1) * restricted.at(n);
        for (long r = 0; r < sq.rows(); ++r)
            for (long c = 0; c < sq.cols(); ++c)
                if (sq(r, c) != 0)
                    throw NotClosed(
                        "the restricted differential does not square to zero at degree " +
                        std::to_string(n));
    }

    BettiTable out;
    for (int n = spec.lo; n <= spec.hi; ++n) {
        DegreeStats s;
        s.dim = sub.at(n).span.cols();
        s.rank = rank_of(restricted.at(n));
        s.kernel = s.dim - s.rank;
        s.h = s.kernel - rank_of(restricted.at(n - 1));
        out.rows.emplace(n, s);
    }
    return out;
}

BettiTable basic_betti(const ComplexSpec& spec, const std::vector<Derivation>& contractions) {
    std::vector<Derivation> ops;
    for (const auto& i_b : contractions) {
        if (i_b.degree() != -1)
            throw EngineError("contractions must have degree -1");
        ops.push_back(i_b);
    }
    for (const auto& i_b : contractions)
        ops.push_back(bracket(i_b, spec.differential));
    return invariant_betti(spec, ops);
}

std::vector<Element> representatives(const ComplexSpec& spec, int n,
                                     const std::vector<Derivation>& ops) {
    auto sub_n = joint_kernel(spec, ops, n);
    auto sub_up = joint_kernel(spec, ops, n + 1);
    auto sub_dn = joint_kernel(spec, ops, n - 1);

    Mat d_n = matrix_between(spec, spec.differential, sub_n.ambient, sub_up.ambient);
    Mat r_n = [&] {
        auto x = solve_exact(sub_up.span, d_n * sub_n.span);
        if (!x) throw NotClosed("the differential leaves the subcomplex");
        return *x;
    }();
    Mat d_dn = matrix_between(spec, spec.differential, sub_dn.ambient, sub_n.ambient);
    Mat boundaries = d_dn * sub_dn.span; // columns inside C^n, lie in the subspace

    Mat cocycles = sub_n.span * kernel_basis(r_n); // coordinates in C^n

    // greedily pick cocycles independent modulo the boundaries
    std::vector<long> chosen;
    Mat pool = boundaries;
    long base_rank = rank_of(pool);
    for (long j = 0; j < cocycles.cols(); ++j) {
        Mat trial(pool.rows(), pool.cols() + 1);
        trial << pool, cocycles.col(j);
        if (rank_of(trial) > base_rank) {
            chosen.push_back(j);
            pool = std::move(trial);
            ++base_rank;
        }
    }

    std::vector<Element> out;
    for (long j : chosen) {
        Element rep(spec.table);
        for (std::size_t r = 0; r < sub_n.ambient.size(); ++r) {
            const Rat& c = cocycles(static_cast<long>(r), j);
            if (c != 0)
                rep = rep + Element::from_monomial(spec.table, sub_n.ambient[r], c);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace qforms
