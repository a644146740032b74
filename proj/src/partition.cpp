#include "symfield/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "symfield/errors.hpp"

namespace symfield {

namespace {

// Label order: +1, -1, +2, -2, ... (top label of a column before its
// bottom label, columns left to right).
struct LabelKey {
    int col;
    int primed;
};

LabelKey lkey(int l) { return {l > 0 ? l : -l, l > 0 ? 0 : 1}; }

bool label_less(int a, int b) {
    LabelKey ka = lkey(a), kb = lkey(b);
    if (ka.col != kb.col) return ka.col < kb.col;
    return ka.primed < kb.primed;
}

// Small union-find over 0..n-1.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

int label_to_node(int l, int k) { return l > 0 ? l - 1 : k + (-l) - 1; }

// Blocks of the join of several partitions over +-1..+-k, given as a node
// union-find; nodes 0..k-1 are +1..+k, nodes k..2k-1 are -1..-k.
std::vector<std::vector<int>> dsu_blocks(Dsu& d, int k) {
    std::map<int, std::vector<int>> groups;
    for (int i = 1; i <= k; ++i) {
        groups[d.find(label_to_node(i, k))].push_back(i);
        groups[d.find(label_to_node(-i, k))].push_back(-i);
    }
    std::vector<std::vector<int>> blocks;
    blocks.reserve(groups.size());
    for (auto& [root, b] : groups) blocks.push_back(std::move(b));
    return blocks;
}

}  // namespace

Partition::Partition(int k, std::vector<std::vector<int>> blocks) : k_(k), blocks_(std::move(blocks)) {
    if (k < 0) throw validation_error("partition: negative arity");
    std::vector<char> seen(2 * k, 0);
    int count = 0;
    for (auto& b : blocks_) {
        if (b.empty()) throw validation_error("partition: empty block");
        for (int l : b) {
            int col = l > 0 ? l : -l;
            if (l == 0 || col > k) throw validation_error("partition: label out of range");
            int idx = label_to_node(l, k);
            if (seen[idx]) throw validation_error("partition: repeated label");
            seen[idx] = 1;
            ++count;
        }
        std::sort(b.begin(), b.end(), label_less);
    }
    if (count != 2 * k) throw validation_error("partition: labels must cover all columns");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return label_less(a.front(), b.front());
              });
}

int Partition::block_of(int label) const {
    for (int i = 0; i < static_cast<int>(blocks_.size()); ++i)
        for (int l : blocks_[i])
            if (l == label) return i;
    return -1;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) {
    os << "{";
    bool first_block = true;
    for (const auto& b : p.blocks()) {
        if (!first_block) os << " ";
        first_block = false;
        os << "{";
        bool first = true;
        for (int l : b) {
            if (!first) os << ",";
            first = false;
            if (l > 0)
                os << l;
            else
                os << -l << "'";
        }
        os << "}";
    }
    os << "}";
    return os;
}

Partition identity_partition(int k) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(k);
    for (int i = 1; i <= k; ++i) blocks.push_back({i, -i});
    return Partition(k, std::move(blocks));
}

Partition full_partition(int k) {
    std::vector<int> b;
    for (int i = 1; i <= k; ++i) {
        b.push_back(i);
        b.push_back(-i);
    }
    return Partition(k, {b});
}

Partition perm_partition(const std::vector<int>& images) {
    int k = static_cast<int>(images.size());
    std::vector<std::vector<int>> blocks;
    blocks.reserve(k);
    for (int i = 1; i <= k; ++i) {
        int img = images[i - 1];
        if (img < 1 || img > k) throw validation_error("permutation images out of range");
        blocks.push_back({i, -img});
    }
    return Partition(k, std::move(blocks));
}

Partition cycle_partition(int k) {
    std::vector<int> images(k);
    for (int i = 0; i < k; ++i) images[i] = i + 2 <= k ? i + 2 : 1;
    return perm_partition(images);
}

std::vector<Partition> enumerate_partitions(int k, DiagramKind kind) {
    if (k < 0) throw validation_error("enumerate: negative arity");
    if (kind == DiagramKind::Permutations) {
        if (k > 8) throw capacity_error("enumerate: permutation diagrams capped at 8 columns");
        std::vector<int> images(k);
        std::iota(images.begin(), images.end(), 1);
        std::vector<Partition> out;
        do {
            out.push_back(perm_partition(images));
        } while (std::next_permutation(images.begin(), images.end()));
        return out;
    }
    if (k > 4) throw capacity_error("enumerate: diagrams capped at 4 columns");

    // Labels in canonical order join an existing block or open a new one;
    // recursing join-first yields the canonical enumeration order.
    std::vector<int> order;
    for (int i = 1; i <= k; ++i) {
        order.push_back(i);
        order.push_back(-i);
    }
    std::vector<Partition> out;
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == order.size()) {
            if (!blocks.empty() || k == 0) out.push_back(Partition(k, blocks));
            return;
        }
        // Index-based: deeper calls grow and shrink `blocks`, so references
        // into it would dangle across the recursion.
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            blocks[i].push_back(order[pos]);
            self(self, pos + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({order[pos]});
        self(self, pos + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
    if (kind == DiagramKind::Irreducible) {
        std::erase_if(out, [](const Partition& p) { return !irreducible(p); });
    }
    return out;
}

bool finer(const Partition& p, const Partition& q) {
    if (p.k() != q.k()) throw validation_error("finer: arity mismatch");
    int k = p.k();
    std::vector<int> owner(2 * k, -1);
    for (int i = 0; i < q.num_blocks(); ++i)
        for (int l : q.blocks()[i]) owner[label_to_node(l, k)] = i;
    for (const auto& b : p.blocks()) {
        int o = owner[label_to_node(b.front(), k)];
        for (int l : b)
            if (owner[label_to_node(l, k)] != o) return false;
    }
    return true;
}

Partition join(const Partition& p, const Partition& q) {
    if (p.k() != q.k()) throw validation_error("join: arity mismatch");
    int k = p.k();
    Dsu d(2 * k);
    for (const auto& b : p.blocks())
        for (std::size_t i = 1; i < b.size(); ++i)
            d.unite(label_to_node(b[0], k), label_to_node(b[i], k));
    for (const auto& b : q.blocks())
        for (std::size_t i = 1; i < b.size(); ++i)
            d.unite(label_to_node(b[0], k), label_to_node(b[i], k));
    return Partition(k, dsu_blocks(d, k));
}

Partition transpose(const Partition& p) {
    std::vector<std::vector<int>> blocks = p.blocks();
    for (auto& b : blocks)
        for (int& l : b) l = -l;
    return Partition(p.k(), std::move(blocks));
}

int num_cycles(const Partition& p) { return join(p, identity_partition(p.k())).num_blocks(); }

bool irreducible(const Partition& p) { return num_cycles(p) == 1; }

Composition compose(const Partition& p, const Partition& q) {
    if (p.k() != q.k()) throw validation_error("compose: arity mismatch");
    int k = p.k();
    // Three rows of nodes: 0..k-1 the top of q, k..2k-1 the glued middle
    // (q's bottom on p's top), 2k..3k-1 the bottom of p.
    Dsu d(3 * k);
    auto q_node = [&](int l) { return l > 0 ? l - 1 : k + (-l) - 1; };
    auto p_node = [&](int l) { return l > 0 ? k + l - 1 : 2 * k + (-l) - 1; };
    for (const auto& b : q.blocks())
        for (std::size_t i = 1; i < b.size(); ++i) d.unite(q_node(b[0]), q_node(b[i]));
    for (const auto& b : p.blocks())
        for (std::size_t i = 1; i < b.size(); ++i) d.unite(p_node(b[0]), p_node(b[i]));

    std::map<int, std::vector<int>> groups;
    for (int i = 1; i <= k; ++i) {
        groups[d.find(i - 1)].push_back(i);
        groups[d.find(2 * k + i - 1)].push_back(-i);
    }
    std::set<int> outer_roots;
    for (auto& [root, b] : groups) outer_roots.insert(root);
    int kappa = 0;
    for (int i = 0; i < k; ++i)
        if (int r = d.find(k + i); !outer_roots.contains(r)) {
            outer_roots.insert(r);  // count each swallowed component once
            ++kappa;
        }

    std::vector<std::vector<int>> blocks;
    blocks.reserve(groups.size());
    for (auto& [root, b] : groups) blocks.push_back(std::move(b));
    return {Partition(k, std::move(blocks)), kappa};
}

int distance2(const Partition& p, const Partition& q) {
    return p.num_blocks() + q.num_blocks() - 2 * join(p, q).num_blocks();
}

double distance(const Partition& p, const Partition& q) { return distance2(p, q) / 2.0; }

bool geodesic_leq(const Partition& s, const Partition& s0) {
    Partition id = identity_partition(s.k());
    return distance2(id, s) + distance2(s, s0) == distance2(id, s0);
}

Partition extract_columns(const Partition& p, const std::vector<int>& cols) {
    int k = p.k();
    std::vector<int> newcol(k + 1, 0);
    int pos = 0;
    for (int c : cols) {
        if (c < 1 || c > k) throw validation_error("extract: column out of range");
        if (newcol[c] != 0) throw validation_error("extract: repeated column");
        newcol[c] = ++pos;
    }
    for (std::size_t i = 1; i < cols.size(); ++i)
        if (cols[i] <= cols[i - 1]) throw validation_error("extract: columns must increase");
    std::vector<std::vector<int>> blocks;
    for (const auto& b : p.blocks()) {
        std::vector<int> nb;
        for (int l : b) {
            int c = l > 0 ? l : -l;
            if (newcol[c] != 0) nb.push_back(l > 0 ? newcol[c] : -newcol[c]);
        }
        if (!nb.empty()) blocks.push_back(std::move(nb));
    }
    return Partition(static_cast<int>(cols.size()), std::move(blocks));
}

namespace {

// Necklace test for a diagram whose blocks all mix top and bottom labels:
// the family of top parts must coincide with the family of bottom parts,
// and pairing each block's top part to its bottom part must trace a single
// cycle through all blocks.
bool necklace_structure(const std::vector<std::vector<int>>& blocks, int* length) {
    int s = static_cast<int>(blocks.size());
    std::vector<std::set<int>> top(s), bot(s);
    for (int i = 0; i < s; ++i) {
        for (int l : blocks[i]) {
            if (l > 0)
                top[i].insert(l);
            else
                bot[i].insert(-l);
        }
        if (top[i].empty() || bot[i].empty()) return false;
    }
    // sigma maps block i to the block whose top part equals bot[i]
    std::vector<int> sigma(s, -1);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j)
            if (bot[i] == top[j]) {
                sigma[i] = j;
                break;
            }
        if (sigma[i] < 0) return false;
    }
    std::vector<char> hit(s, 0);
    int steps = 0;
    for (int i = 0; !hit[i]; i = sigma[i]) {
        hit[i] = 1;
        ++steps;
    }
    if (steps != s) return false;
    for (int i = 0; i < s; ++i)
        if (!hit[i]) return false;
    *length = s;
    return true;
}

ParureClass classify_irreducible(const Partition& p) {
    std::vector<std::vector<int>> mixed;
    std::vector<std::vector<int>> top_only, bot_only;
    for (const auto& b : p.blocks()) {
        bool has_top = false, has_bot = false;
        for (int l : b) (l > 0 ? has_top : has_bot) = true;
        if (has_top && has_bot)
            mixed.push_back(b);
        else if (has_top)
            top_only.push_back(b);
        else
            bot_only.push_back(b);
    }
    int len = 0;
    if (top_only.empty() && bot_only.empty()) {
        if (necklace_structure(mixed, &len)) return {ParureKind::Necklace, len};
        return {ParureKind::NotParure, 0};
    }
    if (top_only.size() == 1 && bot_only.size() == 1) {
        // Close the chain: merging the uncovered top part with the uncovered
        // bottom part must produce a necklace.
        std::vector<int> closing = top_only[0];
        closing.insert(closing.end(), bot_only[0].begin(), bot_only[0].end());
        std::vector<std::vector<int>> closed = mixed;
        closed.push_back(std::move(closing));
        if (necklace_structure(closed, &len)) return {ParureKind::Chain, len};
        return {ParureKind::NotParure, 0};
    }
    return {ParureKind::NotParure, 0};
}

}  // namespace

ParureClass classify_parure(const Partition& p) {
    if (p.k() == 0) return {ParureKind::NotParure, 0};
    Partition vee = join(p, identity_partition(p.k()));
    if (vee.num_blocks() == 1) return classify_irreducible(p);
    ParureClass total{ParureKind::MixedParure, 0};
    for (const auto& comp : vee.blocks()) {
        std::vector<int> cols;
        for (int l : comp)
            if (l > 0) cols.push_back(l);
        ParureClass part = classify_irreducible(extract_columns(p, cols));
        if (part.kind == ParureKind::NotParure) return {ParureKind::NotParure, 0};
        total.true_length += part.true_length;
    }
    return total;
}

EarsHead ears_and_head(const Partition& p) {
    EarsHead r;
    std::vector<int> rest;
    for (int i = 1; i <= p.k(); ++i) {
        if (p.block_of(i) == p.block_of(-i))
            r.ears.push_back(i);
        else
            rest.push_back(i);
    }
    r.head = extract_columns(p, rest);
    return r;
}

bool finer_compatible(const Partition& q, const Partition& p) {
    if (!finer(q, p)) return false;
    return q.num_blocks() - num_cycles(q) == p.num_blocks() - num_cycles(p);
}

}  // namespace symfield
