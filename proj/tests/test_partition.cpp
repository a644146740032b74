#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

#include "symfield/errors.hpp"
#include "symfield/partition.hpp"

using namespace symfield;

namespace {

bool is_perm_diagram(const Partition& p) {
    for (const auto& b : p.blocks()) {
        if (b.size() != 2) return false;
        if ((b[0] > 0) == (b[1] > 0)) return false;  // one top, one bottom label
    }
    return true;
}

// Rebuild a diagram from its standalone ears plus the relabeled head.
Partition reinsert_ears(const EarsHead& eh, int k) {
    std::vector<int> rest;
    for (int i = 1, e = 0; i <= k; ++i) {
        if (e < static_cast<int>(eh.ears.size()) && eh.ears[e] == i)
            ++e;
        else
            rest.push_back(i);
    }
    std::vector<std::vector<int>> blocks;
    for (int i : eh.ears) blocks.push_back({i, -i});
    for (const auto& b : eh.head.blocks()) {
        std::vector<int> nb;
        for (int l : b) nb.push_back(l > 0 ? rest[l - 1] : -rest[-l - 1]);
        blocks.push_back(std::move(nb));
    }
    return Partition(k, std::move(blocks));
}

}  // namespace

TEST_CASE("construction canonicalizes and validates") {
    CHECK(Partition(2, {{-2, 1}, {2, -1}}) == perm_partition({2, 1}));
    CHECK(identity_partition(1).to_string() == "{{1,1'}}");
    CHECK(full_partition(1) == identity_partition(1));
    CHECK_THROWS_AS(Partition(1, {{1}, {-1}, {}}), validation_error);
    CHECK_THROWS_AS(Partition(1, {{1, 1}, {-1}}), validation_error);
    CHECK_THROWS_AS(Partition(2, {{1, -1}}), validation_error);
    CHECK_THROWS_AS(Partition(1, {{1, 0, -1}}), validation_error);
    CHECK_THROWS_AS(Partition(1, {{1, -1, 2}}), validation_error);
}

TEST_CASE("enumeration counts and caps") {
    CHECK(enumerate_partitions(1, DiagramKind::All).size() == 2);
    CHECK(enumerate_partitions(2, DiagramKind::All).size() == 15);
    CHECK(enumerate_partitions(3, DiagramKind::All).size() == 203);
    CHECK(enumerate_partitions(4, DiagramKind::All).size() == 4140);
    CHECK(enumerate_partitions(2, DiagramKind::Permutations).size() == 2);
    CHECK(enumerate_partitions(4, DiagramKind::Permutations).size() == 24);

    auto one = enumerate_partitions(1, DiagramKind::All);
    CHECK(one[0] == full_partition(1));
    CHECK(one[1] == Partition(1, {{1}, {-1}}));

    for (const Partition& p : enumerate_partitions(3, DiagramKind::Irreducible))
        CHECK(irreducible(p));

    CHECK_THROWS_AS(enumerate_partitions(5, DiagramKind::All), capacity_error);
    CHECK_THROWS_AS(enumerate_partitions(9, DiagramKind::Permutations), capacity_error);
}

TEST_CASE("compose identities and the middle-component count") {
    auto p2 = enumerate_partitions(2, DiagramKind::All);
    Partition id2 = identity_partition(2);
    for (const Partition& p : p2) {
        Composition c = compose(id2, p);
        CHECK(c.diagram == p);
        CHECK(c.kappa == 0);
        c = compose(p, id2);
        CHECK(c.diagram == p);
        CHECK(c.kappa == 0);
    }

    Partition e1(1, {{1}, {-1}});
    Composition ee = compose(e1, e1);
    CHECK(ee.diagram == e1);
    CHECK(ee.kappa == 1);

    Partition swap = perm_partition({2, 1});
    Composition ss = compose(swap, swap);
    CHECK(ss.diagram == identity_partition(2));
    CHECK(ss.kappa == 0);

    CHECK_THROWS_AS(compose(identity_partition(1), id2), validation_error);
}

TEST_CASE("compose is associative with additive middle counts") {
    auto p2 = enumerate_partitions(2, DiagramKind::All);
    for (const Partition& p : p2)
        for (const Partition& q : p2)
            for (const Partition& r : p2) {
                Composition pq = compose(p, q);
                Composition qr = compose(q, r);
                Composition left = compose(pq.diagram, r);
                Composition right = compose(p, qr.diagram);
                CHECK(left.diagram == right.diagram);
                CHECK(pq.kappa + left.kappa == qr.kappa + right.kappa);
            }
}

TEST_CASE("a permutation product forces permutation factors") {
    for (int k : {2, 3}) {
        auto all = enumerate_partitions(k, DiagramKind::All);
        for (const Partition& p : all)
            for (const Partition& q : all)
                if (is_perm_diagram(compose(p, q).diagram)) {
                    CHECK(is_perm_diagram(p));
                    CHECK(is_perm_diagram(q));
                }
    }
}

TEST_CASE("join examples") {
    auto p2 = enumerate_partitions(2, DiagramKind::All);
    for (const Partition& p : p2) CHECK(join(p, p) == p);

    CHECK(join(identity_partition(2), perm_partition({2, 1})) == full_partition(2));

    // Joining with the identity groups each permutation cycle into a block.
    Partition p = perm_partition({2, 1, 3});
    CHECK(join(p, identity_partition(3)) ==
          Partition(3, {{1, 2, -1, -2}, {3, -3}}));
    CHECK(num_cycles(p) == 2);
    CHECK(num_cycles(cycle_partition(4)) == 1);
}

TEST_CASE("distance values and metric axioms") {
    Partition id2 = identity_partition(2);
    CHECK(distance2(id2, id2) == 0);
    CHECK(distance2(id2, perm_partition({2, 1})) == 2);
    CHECK(distance(id2, perm_partition({2, 1})) == 1.0);
    CHECK(distance2(id2, full_partition(2)) == 1);
    CHECK(distance(id2, full_partition(2)) == 0.5);

    for (int k : {2, 3}) {
        auto all = enumerate_partitions(k, DiagramKind::All);
        int n = static_cast<int>(all.size());
        std::vector<std::vector<int>> d(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = distance2(all[i], all[j]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(d[i][j] == d[j][i]);
                CHECK((d[i][j] == 0) == (i == j));
            }
        bool triangle = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    triangle = triangle && d[i][l] <= d[i][j] + d[j][l];
        CHECK(triangle);
    }
}

TEST_CASE("permutation distance equals transposition Cayley distance") {
    for (int k = 2; k <= 4; ++k) {
        // Breadth-first search over all of S_k with transposition steps.
        std::map<std::vector<int>, int> depth;
        std::vector<int> id(k);
        for (int i = 0; i < k; ++i) id[i] = i + 1;
        std::queue<std::vector<int>> frontier;
        depth[id] = 0;
        frontier.push(id);
        while (!frontier.empty()) {
            std::vector<int> cur = frontier.front();
            frontier.pop();
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    std::vector<int> nxt = cur;
                    std::swap(nxt[a], nxt[b]);
                    if (depth.emplace(nxt, depth[cur] + 1).second) frontier.push(nxt);
                }
        }
        Partition idk = identity_partition(k);
        for (const auto& [images, steps] : depth) {
            Partition s = perm_partition(images);
            CHECK(distance2(idk, s) == 2 * steps);
            CHECK(distance2(idk, s) == 2 * (k - num_cycles(s)));
        }
    }
}

TEST_CASE("geodesics below the long cycle count non-crossing partitions") {
    const long long catalan[] = {1, 2, 5, 14, 42, 132};
    for (int k = 1; k <= 6; ++k) {
        Partition target = cycle_partition(k);
        long long count = 0;
        for (const Partition& s : enumerate_partitions(k, DiagramKind::Permutations))
            if (geodesic_leq(s, target)) ++count;
        CHECK(count == catalan[k - 1]);
    }
}

TEST_CASE("transpose is an involution and inverts permutations") {
    for (const Partition& p : enumerate_partitions(3, DiagramKind::All))
        CHECK(transpose(transpose(p)) == p);
    CHECK(transpose(perm_partition({2, 3, 1})) == perm_partition({3, 1, 2}));
    CHECK(transpose(identity_partition(3)) == identity_partition(3));
}

TEST_CASE("column extraction validates and relabels") {
    Partition p(3, {{1, -1}, {2, 3, -2, -3}});
    CHECK(extract_columns(p, {2, 3}) == full_partition(2));
    CHECK(extract_columns(p, {1}) == identity_partition(1));
    CHECK(extract_columns(p, {}) == Partition(0, {}));
    CHECK_THROWS_AS(extract_columns(p, {3, 2}), validation_error);
    CHECK_THROWS_AS(extract_columns(p, {1, 1}), validation_error);
    CHECK_THROWS_AS(extract_columns(p, {4}), validation_error);
}

TEST_CASE("parure classification") {
    for (int k = 1; k <= 4; ++k) {
        ParureClass c = classify_parure(full_partition(k));
        CHECK(c.kind == ParureKind::Necklace);
        CHECK(c.true_length == 1);
    }
    for (int n = 2; n <= 4; ++n) {
        ParureClass c = classify_parure(cycle_partition(n));
        CHECK(c.kind == ParureKind::Necklace);
        CHECK(c.true_length == n);
    }

    CHECK(classify_parure(Partition(2, {{1, 2}, {-1}, {-2}})).kind == ParureKind::NotParure);

    // One uncovered top part and one uncovered bottom part close to a necklace.
    ParureClass chain1 = classify_parure(Partition(2, {{1, 2}, {-1, -2}}));
    CHECK(chain1.kind == ParureKind::Chain);
    CHECK(chain1.true_length == 1);
    ParureClass chain2 = classify_parure(Partition(2, {{1, -2}, {2}, {-1}}));
    CHECK(chain2.kind == ParureKind::Chain);
    CHECK(chain2.true_length == 2);

    // Reducible diagrams classify cycle by cycle.
    ParureClass mixed = classify_parure(identity_partition(2));
    CHECK(mixed.kind == ParureKind::MixedParure);
    CHECK(mixed.true_length == 2);
    CHECK(classify_parure(Partition(3, {{1, 2}, {-1}, {-2}, {3, -3}})).kind ==
          ParureKind::NotParure);
}

TEST_CASE("ears and head") {
    EarsHead all_ears = ears_and_head(identity_partition(3));
    CHECK(all_ears.ears == std::vector<int>{1, 2, 3});
    CHECK(all_ears.head.k() == 0);

    // The ear condition only asks that i and i' share a block, so every
    // column of the one-block diagram is an ear.
    EarsHead zero = ears_and_head(full_partition(2));
    CHECK(zero.ears == std::vector<int>{1, 2});
    CHECK(zero.head.k() == 0);
    CHECK(ears_and_head(Partition(3, {{1, -1}, {2, 3, -2, -3}})).ears ==
          std::vector<int>{1, 2, 3});

    EarsHead eh = ears_and_head(Partition(3, {{1, -1}, {2, -3}, {3, -2}}));
    CHECK(eh.ears == std::vector<int>{1});
    CHECK(eh.head == perm_partition({2, 1}));
}

TEST_CASE("reinserting standalone ears reconstructs the diagram") {
    int eligible = 0;
    for (const Partition& p : enumerate_partitions(3, DiagramKind::All)) {
        EarsHead eh = ears_and_head(p);
        CHECK(eh.head.k() == 3 - static_cast<int>(eh.ears.size()));
        bool standalone = true;
        for (int i : eh.ears)
            standalone = standalone && p.blocks()[p.block_of(i)].size() == 2;
        if (!standalone) continue;
        ++eligible;
        CHECK(reinsert_ears(eh, 3) == p);
    }
    CHECK(eligible > 50);
}

TEST_CASE("refinement and cycle-compatible refinement") {
    Partition id2 = identity_partition(2);
    Partition zero2 = full_partition(2);
    CHECK(finer(id2, zero2));
    CHECK_FALSE(finer(zero2, id2));
    for (const Partition& p : enumerate_partitions(2, DiagramKind::All)) {
        CHECK(finer(p, p));
        CHECK(finer_compatible(p, p));
    }
    CHECK(finer_compatible(id2, zero2));
    // {{1,1'},{2},{2'}} is finer than 0_2 but has an extra non-cycle block.
    CHECK_FALSE(finer_compatible(Partition(2, {{1, -1}, {2}, {-2}}), zero2));
}
