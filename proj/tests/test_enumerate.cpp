#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "subvar/enumerate.hpp"

using namespace subvar;

namespace {

FactorBlock make_block(EndRing ring, std::vector<long> degrees, const char* name = "E") {
    FactorBlock b;
    b.name = name;
    b.ring = ring;
    b.multiplicity = degrees.size();
    for (long d : degrees) b.degrees.emplace_back(d);
    return b;
}

std::vector<Int> chi_multiset(const std::vector<Subvariety>& list) {
    std::vector<Int> chis;
    for (const auto& s : list) chis.push_back(s.chi);
    std::sort(chis.begin(), chis.end());
    return chis;
}

long count_up_to(const std::vector<Subvariety>& list, long t) {
    return static_cast<long>(
        std::count_if(list.begin(), list.end(), [&](const Subvariety& s) { return s.chi <= t; }));
}

}  // namespace

TEST_CASE("graph degree condition") {
    const auto z = EndRing::integers();
    CHECK(graph_degree_condition(z, 2, {1, {Int(0)}}));
    CHECK(graph_degree_condition(z, 2, {1, {Int(7)}}));
    CHECK(graph_degree_condition(z, 2, {4, {Int(2)}}));
    CHECK(graph_degree_condition(z, 2, {9, {Int(3)}}));
    CHECK_FALSE(graph_degree_condition(z, 2, {2, {Int(0)}}));
    CHECK_FALSE(graph_degree_condition(z, 2, {2, {Int(1)}}));
    CHECK_FALSE(graph_degree_condition(z, 2, {4, {Int(1)}}));
    CHECK_FALSE(graph_degree_condition(z, 2, {8, {Int(2)}}));
    /* k = 1: only the identity graph */
    CHECK(graph_degree_condition(z, 1, {1, {}}));
    CHECK_FALSE(graph_degree_condition(z, 1, {2, {}}));

    const auto g = EndRing::order(0, 1);
    CHECK(graph_degree_condition(g, 2, {1, {Int(0), Int(0)}}));
    CHECK(graph_degree_condition(g, 2, {2, {Int(1), Int(1)}}));   // f = 1+i, norm 2
    CHECK(graph_degree_condition(g, 2, {5, {Int(2), Int(1)}}));   // f = 2+i, norm 5
    CHECK(graph_degree_condition(g, 2, {4, {Int(0), Int(2)}}));   // f = 2i, norm 4
    CHECK(graph_degree_condition(g, 2, {4, {Int(2), Int(0)}}));  // ker(2) on 4-torsion
    CHECK_FALSE(graph_degree_condition(g, 2, {2, {Int(1), Int(0)}}));
    CHECK_FALSE(graph_degree_condition(g, 2, {3, {Int(1), Int(1)}}));
    CHECK_FALSE(graph_degree_condition(g, 2, {8, {Int(2), Int(0)}}));
}

TEST_CASE("graph chi formula and construction") {
    const SliceBounds b1{1, 100};
    const auto qz = degree_form(EndRing::integers(), {Int(1)});
    CHECK(chi_graph_formula(b1, {1, {Int(0)}}, qz) == 1);
    CHECK(chi_graph_formula(b1, {1, {Int(2)}}, qz) == 5);
    CHECK(chi_graph_formula(b1, {4, {Int(2)}}, qz) == 5);

    const auto block = make_block(EndRing::integers(), {1, 1});
    const auto v = block_as_variety(block);
    const auto s = build_graph_subvariety(v, {4, {Int(2)}});
    CHECK(s.chi == 5);
    CHECK(s.lattice.basis.str() == "[[2,0,1,0],[0,2,0,1]]");
    CHECK(s.dim == 1);

    /* Gaussian graph of (1+w) with denominator 2: chi = (4 + 2)/2 = 3 */
    const auto cm = make_block(EndRing::order(0, 1), {1, 1});
    const auto vcm = block_as_variety(cm);
    const auto qg = degree_form(EndRing::order(0, 1), {Int(1)});
    CHECK(chi_graph_formula(b1, {2, {Int(1), Int(1)}}, qg) == 3);
    const auto scm = build_graph_subvariety(vcm, {2, {Int(1), Int(1)}});
    CHECK(scm.chi == 3);
    CHECK(scm.lattice.basis.str() == "[[1,1,0,1],[0,2,-1,1]]");
}

TEST_CASE("slice enumeration") {
    const auto block = make_block(EndRing::integers(), {1, 1});
    const auto t2 = enumerate_slice(block, 0, 2);
    CHECK(t2.size() == 3);
    CHECK(chi_multiset(t2) == std::vector<Int>{1, 2, 2});
    const auto t5 = enumerate_slice(block, 0, 5);
    CHECK(t5.size() == 7);
    CHECK(chi_multiset(t5) == std::vector<Int>{1, 2, 2, 5, 5, 5, 5});

    const auto cm = make_block(EndRing::order(0, 1), {1, 1});
    CHECK(enumerate_slice(cm, 0, 2).size() == 5);

    /* k = 1: the slice through the only copy is the copy itself */
    const auto single = make_block(EndRing::integers(), {3});
    CHECK(enumerate_slice(single, 0, 2).empty());
    CHECK(enumerate_slice(single, 0, 3).size() == 1);

    /* slice through the second copy of an uneven block sees degree 2 first */
    const auto uneven = make_block(EndRing::integers(), {1, 2});
    const auto s2 = enumerate_slice(uneven, 1, 2);
    CHECK(chi_multiset(s2) == std::vector<Int>{2});
}

TEST_CASE("block enumeration matches the closed-form curve count") {
    const auto block = make_block(EndRing::integers(), {1, 1});
    const auto all = enumerate_block(block, 200);
    CHECK(count_up_to(all, 2) == 6);
    CHECK(count_up_to(all, 5) == 10);
    for (long t = 1; t <= 200; ++t) {
        const Int expected = 2 + oracle::primitive_pair_count(1, 1, t);
        CHECK(Int(count_up_to(all, t)) == expected);
    }

    /* mixed polarization degrees */
    const auto uneven = make_block(EndRing::integers(), {1, 2});
    const auto ua = enumerate_block(uneven, 100);
    for (long t = 1; t <= 100; ++t) {
        const Int expected =
            Int(1) + Int(t >= 2 ? 1 : 0) + oracle::primitive_pair_count(1, 2, t);
        CHECK(Int(count_up_to(ua, t)) == expected);
    }
}

TEST_CASE("block enumeration matches the Gaussian curve count") {
    const auto cm = make_block(EndRing::order(0, 1), {1, 1});
    const auto all = enumerate_block(cm, 60);
    CHECK(count_up_to(all, 2) == 8);
    const auto pair_counts = oracle::gaussian_pair_counts_upto(60);
    for (long t = 1; t <= 60; ++t)
        CHECK(Int(count_up_to(all, t)) == 2 + pair_counts[t]);
}

TEST_CASE("enumeration output is canonical and duplicate-free") {
    const auto block = make_block(EndRing::integers(), {1, 1});
    const auto all = enumerate_block(block, 50);
    std::set<std::string> seen;
    for (const auto& s : all) {
        CHECK(seen.insert(s.lattice.basis.str()).second);
        CHECK(!s.provenance.empty());
        CHECK(s.dim * 2 == s.lattice.rank());
    }
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        const auto &a = all[i], &b = all[i + 1];
        const bool ordered =
            a.dim < b.dim ||
            (a.dim == b.dim &&
             (a.chi < b.chi || (a.chi == b.chi && a.lattice.basis.str() < b.lattice.basis.str())));
        CHECK(ordered);
    }

    /* schedule independence */
    const auto seq = enumerate_block(block, 80, 1);
    const auto par = enumerate_block(block, 80, 4);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].lattice.basis == par[i].lattice.basis);
        CHECK(seq[i].chi == par[i].chi);
    }
}

TEST_CASE("products across blocks") {
    const auto zb = make_block(EndRing::integers(), {1, 2}, "E");
    const auto gb = make_block(EndRing::order(0, 1), {1}, "F");
    const VarietyConfig v({zb, gb});

    const Int t = 30;
    const auto all = enumerate_all(v, t);
    std::vector<std::vector<Subvariety>> per_block = {enumerate_block(zb, t),
                                                      enumerate_block(gb, t)};
    CHECK(count_products(per_block, t) == Int(static_cast<long>(all.size())));

    /* every product chi is the product of factor chis and the factor counts
       bound the total */
    Int brute = 0;
    for (const auto& a : per_block[0])
        for (const auto& b : per_block[1])
            if (a.chi * b.chi <= t) ++brute;
    CHECK(brute == Int(static_cast<long>(all.size())));

    std::set<std::string> seen;
    for (const auto& s : all) {
        CHECK(seen.insert(s.lattice.basis.str()).second);
        CHECK(s.chi <= t);
        CHECK(is_stable(v, s.lattice));
        CHECK(chi_restricted(v.riemann_form(), s.lattice) == s.chi);
    }

    /* single-block product assembly is the identity on the block list */
    const VarietyConfig vz({zb});
    const auto zonly = enumerate_all(vz, t);
    const auto zblk = enumerate_block(zb, t);
    REQUIRE(zonly.size() == zblk.size());
    for (std::size_t i = 0; i < zonly.size(); ++i)
        CHECK(zonly[i].lattice.basis == zblk[i].lattice.basis);
}

TEST_CASE("count_products equals the brute double loop on same-shaped lists") {
    /* two independent copies of the E x E block list, paired as if they were
       the factor lists of a two-block product */
    const auto block = make_block(EndRing::integers(), {1, 1});
    const auto list = enumerate_block(block, 40);
    const std::vector<std::vector<Subvariety>> pair = {list, list};
    for (long t : {1L, 4L, 10L, 25L, 40L}) {
        Int brute = 0;
        for (const auto& a : list)
            for (const auto& b : list)
                if (a.chi * b.chi <= t) ++brute;
        CHECK(count_products(pair, Int(t)) == brute);
    }
}
