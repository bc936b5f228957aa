#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qforms/algebroid.hpp"
#include "qforms/cohomology.hpp"

#include <random>

using namespace qforms;

namespace {

std::vector<std::vector<std::vector<Rat>>> zero_c(std::size_t n) {
    return std::vector<std::vector<std::vector<Rat>>>(
        n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))));
}

StructureData so3() {
    auto c = zero_c(3);
    c[0][1][2] = 1; c[1][0][2] = -1;
    c[1][2][0] = 1; c[2][1][0] = -1;
    c[2][0][1] = 1; c[0][2][1] = -1;
    return StructureData::lie_algebra({"e1", "e2", "e3"}, {0, 0, 0}, c);
}

// Independent oracle for the so(3) CE complex: the full 8-dimensional
// exterior algebra with the combinatorial Chevalley-Eilenberg differential
//   (d f)(S) over subsets S, computed by brute force, and ranks by plain
// fraction elimination on dense arrays, all without touching the engine's
// Element/Derivation machinery.
struct SubsetComplex {
    // subsets of {0,1,2} by bitmask; d maps |S|=k to |S|=k+1 by the Leibniz
    // expansion d(theta_S) = sum_t (-1)^{t-1} theta_{s_1..s_{t-1}} (d theta_{s_t})
    // theta_{s_{t+1}..}, with d theta^m = -sum_{i<j} c_{ij}^m theta^i theta^j.
    // Signs are recomputed from scratch by counting inversions of index words.
    static int word_sign(const std::vector<int>& word) {
        long inv = 0;
        for (std::size_t a = 0; a < word.size(); ++a)
            for (std::size_t b = a + 1; b < word.size(); ++b)
                if (word[a] > word[b]) ++inv;
        return inv % 2 == 0 ? 1 : -1;
    }

    static std::vector<std::vector<long>> boundary(int k, const long c[3][3][3]) {
        std::vector<unsigned> src, dst;
        for (unsigned s = 0; s < 8; ++s) {
            if (__builtin_popcount(s) == k) src.push_back(s);
            if (__builtin_popcount(s) == k + 1) dst.push_back(s);
        }
        std::vector<std::vector<long>> m(dst.size(), std::vector<long>(src.size(), 0));
        for (std::size_t col = 0; col < src.size(); ++col) {
            std::vector<int> elems;
            for (int b = 0; b < 3; ++b)
                if (src[col] & (1u << b)) elems.push_back(b);
            for (std::size_t t = 0; t < elems.size(); ++t) {
                int leibniz = (t % 2 == 0) ? 1 : -1;
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) {
                        if (c[i][j][elems[t]] == 0) continue;
                        std::vector<int> word;
                        for (std::size_t a = 0; a < t; ++a) word.push_back(elems[a]);
                        word.push_back(i);
                        word.push_back(j);
                        for (std::size_t a = t + 1; a < elems.size(); ++a)
                            word.push_back(elems[a]);
                        // repeated indices square to zero
                        bool repeat = false;
                        unsigned u = 0;
                        for (int w : word) {
                            if (u & (1u << w)) repeat = true;
                            u |= (1u << w);
                        }
                        if (repeat) continue;
                        long coeff = -c[i][j][elems[t]] * leibniz * word_sign(word);
                        for (std::size_t row = 0; row < dst.size(); ++row)
                            if (dst[row] == u) m[row][col] += coeff;
                    }
            }
        }
        return m;
    }

    static long rank(std::vector<std::vector<long>> m) {
        // fraction-free elimination over exact integers
        long rank = 0;
        std::size_t rows = m.size();
        if (rows == 0) return 0;
        std::size_t cols = m[0].size();
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t p = r;
            while (p < rows && m[p][c] == 0) ++p;
            if (p == rows) continue;
            std::swap(m[p], m[r]);
            for (std::size_t q = 0; q < rows; ++q) {
                if (q == r || m[q][c] == 0) continue;
                long a = m[r][c], b = m[q][c];
                for (std::size_t cc = 0; cc < cols; ++cc)
                    m[q][cc] = m[q][cc] * a - m[r][cc] * b;
            }
            ++rank;
            ++r;
        }
        return rank;
    }
};

} // namespace

TEST_CASE("exact linear algebra kernels") {
    Mat a(2, 3);
    a << Rat(1), Rat(2), Rat(3),
         Rat(2), Rat(4), Rat(6);
    CHECK(rank_of(a) == 1);
    Mat k = kernel_basis(a);
    CHECK(k.cols() == 2);
    for (long j = 0; j < k.cols(); ++j) {
        Vec v = a * k.col(j);
        for (long i = 0; i < v.rows(); ++i) CHECK(v(i) == 0);
    }

    Mat b(2, 1);
    b << Rat(1), Rat(2);
    auto x = solve_exact(a, b);
    REQUIRE(x.has_value());
    Mat should_be_b = a * (*x);
    CHECK(should_be_b(0, 0) == 1);
    CHECK(should_be_b(1, 0) == 2);

    Mat b2(2, 1);
    b2 << Rat(1), Rat(3);
    CHECK(!solve_exact(a, b2).has_value());
}

TEST_CASE("differential matrix examples") {
    // W(R): d_K theta = theta' gives the 1x1 matrix [1] at degree 1
    auto t = GeneratorTable::make({{"th", 1}, {"th'", 2}});
    auto dk = Derivation::from_images(t, 1, {{0, Element::generator(t, 1)}});
    ComplexSpec spec{t, dk, 0, 4, std::nullopt};
    Mat m1 = differential_matrix(spec, 1);
    REQUIRE(m1.rows() == 1);
    REQUIRE(m1.cols() == 1);
    CHECK(m1(0, 0) == 1);

    // zero differential gives the zero matrix
    ComplexSpec zspec{t, Derivation::zero(t, 1), 0, 4, std::nullopt};
    Mat z = differential_matrix(zspec, 2);
    for (long r = 0; r < z.rows(); ++r)
        for (long c = 0; c < z.cols(); ++c) CHECK(z(r, c) == 0);

    // so(3) CE at degree 1: 3x3 matrix with entries read from -epsilon
    auto d = build_differential(so3());
    ComplexSpec ce{d.table(), d, 0, 3, std::nullopt};
    Mat m = differential_matrix(ce, 1);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 3);
    // basis of degree 1: th1, th2, th3; degree 2: th1th2, th1th3, th2th3
    // d th1 = -th2 th3 etc.
    CHECK(m(2, 0) == -1);
    CHECK(m(1, 1) == 1);  // d th2 = -th3 th1 = +th1 th3
    CHECK(m(0, 2) == -1);
    CHECK(rank_of(m) == 3);

    // adjacent products vanish
    Mat m2 = differential_matrix(ce, 2);
    Mat prod = m2 * m;
    for (long r = 0; r < prod.rows(); ++r)
        for (long c = 0; c < prod.cols(); ++c) CHECK(prod(r, c) == 0);
}

TEST_CASE("so(3) CE betti agrees with the independent subset oracle") {
    const long c[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                             {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                             {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    std::vector<long> oracle_h;
    std::vector<long> rank(5, 0);
    std::vector<long> dim{1, 3, 3, 1};
    for (int k = 0; k < 4; ++k)
        rank[k + 1] = SubsetComplex::rank(SubsetComplex::boundary(k, c));
    for (int k = 0; k < 4; ++k)
        oracle_h.push_back(dim[k] - rank[k + 1] - rank[k]);

    CHECK(oracle_h == std::vector<long>{1, 0, 0, 1});

    auto d = build_differential(so3());
    ComplexSpec ce{d.table(), d, 0, 3, std::nullopt};
    auto table = betti(ce);
    CHECK(table.dims(0, 3) == oracle_h);
    CHECK(table.rows.at(0).dim == 1);
    CHECK(table.rows.at(1).dim == 3);
}

TEST_CASE("zero differential on Lambda[th]") {
    auto t = GeneratorTable::make({{"th", 1}});
    ComplexSpec spec{t, Derivation::zero(t, 1), 0, 1, std::nullopt};
    auto b = betti(spec);
    CHECK(b.dims(0, 1) == std::vector<long>{1, 1});
}

TEST_CASE("betti dims are basis-order invariant") {
    auto c = zero_c(3);
    c[0][1][2] = 1; c[1][0][2] = -1; // heisenberg
    auto g1 = StructureData::lie_algebra({"p", "q", "z"}, {0, 0, 0}, c);
    // permuted declaration: z first; brackets permuted accordingly
    auto cp = zero_c(3);
    cp[1][2][0] = 1; cp[2][1][0] = -1;
    auto g2 = StructureData::lie_algebra({"z", "p", "q"}, {0, 0, 0}, cp);
    auto d1 = build_differential(g1);
    auto d2 = build_differential(g2);
    auto b1 = betti({d1.table(), d1, 0, 3, std::nullopt});
    auto b2 = betti({d2.table(), d2, 0, 3, std::nullopt});
    CHECK(b1.dims(0, 3) == b2.dims(0, 3));
}

TEST_CASE("betti of a direct sum adds") {
    // two disjoint CE complexes on one table: d = d1 + d2
    auto c = zero_c(3);
    c[0][1][2] = 1; c[1][0][2] = -1;
    auto g = StructureData::lie_algebra({"p", "q", "z"}, {0, 0, 0}, c);
    auto dg = build_differential(g);

    auto t = GeneratorTable::make({{"p", 1}, {"q", 1}, {"z", 1}, {"w", 1}});
    std::map<std::size_t, Element> images;
    for (int i = 0; i < 3; ++i) images.emplace(i, transport(dg.image(i), t));
    auto d = Derivation::from_images(t, 1, images);

    auto bg = betti({dg.table(), dg, 0, 3, std::nullopt});
    auto bw = betti({GeneratorTable::make({{"w", 1}}),
                     Derivation::zero(GeneratorTable::make({{"w", 1}}), 1), 0, 1,
                     std::nullopt});
    auto bsum = betti({t, d, 0, 4, std::nullopt});

    // Kuenneth for a tensor with Lambda[w]: h_sum(n) = h_g(n) + h_g(n-1)
    for (int n = 0; n <= 4; ++n) {
        long expect = 0;
        auto hg = [&](int k) {
            auto it = bg.rows.find(k);
            return it == bg.rows.end() ? 0L : it->second.h;
        };
        expect = hg(n) + hg(n - 1);
        CHECK(bsum.rows.at(n).h == expect);
    }
    (void)bw;
}

TEST_CASE("weight truncation") {
    // R[x] tensor Lambda[x'] with weights w(x) = w(x') = 1: each weight slice
    // of the de Rham complex is exact except weight 0
    auto t = GeneratorTable::make({{"x", 0}, {"x'", 1}});
    auto d = Derivation::from_images(t, 1, {{0, Element::generator(t, 1)}});
    for (long w = 0; w <= 3; ++w) {
        ComplexSpec spec{t, d, 0, 1, WeightSpec{{1, 1}, w}};
        auto b = betti(spec);
        if (w == 0)
            CHECK(b.dims(0, 1) == std::vector<long>{1, 0});
        else
            CHECK(b.dims(0, 1) == std::vector<long>{0, 0});
    }

    // weight-violating differential is refused
    auto bad = Derivation::from_images(t, 1, {{0, Element::generator(t, 1) *
                                                      Element::generator(t, 0)}});
    ComplexSpec spec{t, bad, 0, 1, WeightSpec{{1, 1}, 1}};
    CHECK_THROWS_AS(differential_matrix(spec, 0), WeightNotPreserved);
}

TEST_CASE("basic betti with empty contraction family equals betti") {
    auto d = build_differential(so3());
    ComplexSpec ce{d.table(), d, 0, 3, std::nullopt};
    auto full = betti(ce);
    auto basic = basic_betti(ce, {});
    for (int n = 0; n <= 3; ++n) CHECK(full.rows.at(n).h == basic.rows.at(n).h);
}

TEST_CASE("representatives") {
    auto d = build_differential(so3());
    ComplexSpec ce{d.table(), d, 0, 3, std::nullopt};
    auto reps3 = representatives(ce, 3);
    REQUIRE(reps3.size() == 1);
    auto t = d.table();
    auto expected = Element::generator(t, 0) * Element::generator(t, 1) *
                    Element::generator(t, 2);
    CHECK(reps3[0] == expected);

    auto reps0 = representatives(ce, 0);
    REQUIRE(reps0.size() == 1);
    CHECK(reps0[0] == Element::constant(t, 1));

    auto reps1 = representatives(ce, 1);
    CHECK(reps1.empty());
}

TEST_CASE("a subcomplex the differential leaves is rejected") {
    // d: a -> ab, b -> 0 is homological, but ker(d/db) is not d-stable
    auto t = GeneratorTable::make({{"a", 1}, {"b", 1}});
    auto ab = Element::generator(t, 0) * Element::generator(t, 1);
    auto d = Derivation::from_images(t, 1, {{0, ab}});
    REQUIRE(is_homological(d));
    ComplexSpec spec{t, d, 1, 1, std::nullopt};
    CHECK_THROWS_AS(invariant_betti(spec, {Derivation::partial(t, 1)}), NotClosed);
}

TEST_CASE("basic representatives of W(R)") {
    // W(R): th (1), th' (2); d_W = d_K; basic subcomplex is Q[th'] and the
    // degree-2 representative is th'
    auto t = GeneratorTable::make({{"th", 1}, {"th'", 2}});
    auto dk = Derivation::from_images(t, 1, {{0, Element::generator(t, 1)}});
    ComplexSpec spec{t, dk, 0, 4, std::nullopt};
    std::vector<Derivation> ops{Derivation::partial(t, 0),
                                bracket(Derivation::partial(t, 0), dk)};
    auto reps2 = representatives(spec, 2, ops);
    REQUIRE(reps2.size() == 1);
    CHECK(reps2[0] == Element::generator(t, 1));
}
